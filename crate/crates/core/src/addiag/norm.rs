use super::weights::{omega, omega_matrix, NetGeometry};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};
use crate::seqspace::SpaceParams;

/// `‖A‖_δ = max_{ξ,η} |a_{ξη}| / ω_{ξη}(δ)` with its maximizing pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdNorm {
    pub delta: f64,
    pub value: f64,
    pub argmax: (usize, usize),
}

fn square(a: &Mat, g: &NetGeometry) -> Result<()> {
    if a.nrows() != g.len() || a.ncols() != g.len() {
        return Err(Error::IndexMismatch(format!("{}x{} matrix over {} indices", a.nrows(), a.ncols(), g.len())));
    }
    Ok(())
}

pub fn ad_norm(a: &Mat, g: &NetGeometry, delta: f64, params: &SpaceParams) -> Result<AdNorm> {
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!("decay margin must be positive, got {delta}")));
    }
    square(a, g)?;
    let mut out = AdNorm { delta, value: 0.0, argmax: (0, 0) };
    for eta in 0..g.len() {
        for xi in 0..g.len() {
            let r = a[(xi, eta)].abs() / omega(g, xi, eta, delta, params);
            if r > out.value {
                out.value = r;
                out.argmax = (xi, eta);
            }
        }
    }
    Ok(out)
}

/// `(Ah)_ξ = Σ_η a_{ξη} h_η`.
pub fn apply(a: &Mat, h: &Vector) -> Result<Vector> {
    if a.ncols() != h.len() {
        return Err(Error::IndexMismatch(format!("{} columns against {} entries", a.ncols(), h.len())));
    }
    Ok(a * h)
}

pub fn compose(a: &Mat, b: &Mat) -> Result<Mat> {
    if a.ncols() != b.nrows() {
        return Err(Error::IndexMismatch(format!("{} columns against {} rows", a.ncols(), b.nrows())));
    }
    Ok(a * b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductWeightReport {
    pub beta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    /// `max_{ξ,η} W_{ξη}(β,γ₁,γ₂) / ω_{ξη}(β, γ₁∧γ₂)`.
    pub max_ratio: f64,
    pub argmax: (usize, usize),
}

fn ratio_max(w: &Mat, target: &Mat) -> (f64, (usize, usize)) {
    let mut best = (0.0, (0, 0));
    for eta in 0..w.ncols() {
        for xi in 0..w.nrows() {
            let r = w[(xi, eta)] / target[(xi, eta)];
            if r > best.0 {
                best = (r, (xi, eta));
            }
        }
    }
    best
}

/// Brute-force `W_{ξη} = Σ_ζ ω_{ξζ}(β,γ₁) ω_{ζη}(β,γ₂)` against `ω_{ξη}(β, γ₁∧γ₂)`.
pub fn product_weight_check(g: &NetGeometry, beta: f64, gamma1: f64, gamma2: f64, params: &SpaceParams) -> Result<ProductWeightReport> {
    if !(beta > 0.0 && gamma1 > 0.0 && gamma2 > 0.0) || gamma1 == gamma2 || beta >= gamma1 + gamma2 {
        return Err(Error::Hypothesis(format!(
            "need positive parameters, γ₁ ≠ γ₂ and β < γ₁ + γ₂; got ({beta}, {gamma1}, {gamma2})"
        )));
    }
    let w = omega_matrix(g, beta, gamma1, params) * omega_matrix(g, beta, gamma2, params);
    let target = omega_matrix(g, beta, gamma1.min(gamma2), params);
    let (max_ratio, argmax) = ratio_max(&w, &target);
    Ok(ProductWeightReport { beta, gamma1, gamma2, max_ratio, argmax })
}

/// Runs [`product_weight_check`] on every triple of `grid³` that meets the hypotheses.
pub fn product_weight_grid(g: &NetGeometry, grid: &[f64], params: &SpaceParams) -> Vec<ProductWeightReport> {
    let mut out = Vec::new();
    for &beta in grid {
        for &g1 in grid {
            for &g2 in grid {
                if let Ok(r) = product_weight_check(g, beta, g1, g2, params) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Smallest `c*` with `Σ_ζ ω_{ξζ}(ε) ω_{ζη}(ε₁) ≤ c* ω_{ξη}(ε₁)` for all pairs, so
/// that `‖AB‖_{ε₁} ≤ c* ‖A‖_ε ‖B‖_{ε₁}`.
pub fn composition_constant(g: &NetGeometry, eps: f64, eps1: f64, params: &SpaceParams) -> f64 {
    let t = omega_matrix(g, eps1, eps1, params);
    let w = omega_matrix(g, eps, eps, params) * &t;
    ratio_max(&w, &t).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rng, uniform_vec};
    use crate::seqspace::{Family, Flavor};
    use crate::space::{build_hierarchy, HierarchyMode, ModelSpace, ModelSpec};
    use rand::Rng;

    fn setup() -> (NetGeometry, SpaceParams) {
        let m = ModelSpace::build(&ModelSpec::cycle(32)).unwrap();
        let h = build_hierarchy(&m, 2.0, 0.5, (-3, 1), HierarchyMode::Homogeneous).unwrap();
        let p = SpaceParams::new(0.5, 2.0, 2.0, Flavor::Classical, Family::Besov, 1.0, 1.0).unwrap();
        (NetGeometry::new(&m, &h), p)
    }

    #[test]
    fn identity_and_scaled_weights() {
        let (g, p) = setup();
        let n = g.len();
        assert_eq!(ad_norm(&Mat::identity(n, n), &g, 0.4, &p).unwrap().value, 1.0);
        let w = omega_matrix(&g, 0.4, 0.4, &p) * 2.5;
        assert!((ad_norm(&w, &g, 0.4, &p).unwrap().value - 2.5).abs() < 1e-14);
    }

    #[test]
    fn matches_double_loop_and_is_a_norm() {
        let (g, p) = setup();
        let n = g.len();
        let mut r = rng(21);
        let a = Mat::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0));
        let b = Mat::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0));
        let mut brute = 0.0_f64;
        for x in 0..n {
            for y in 0..n {
                brute = brute.max(a[(x, y)].abs() / omega(&g, x, y, 0.8, &p));
            }
        }
        let na = ad_norm(&a, &g, 0.8, &p).unwrap();
        assert_eq!(na.value, brute);
        let nb = ad_norm(&b, &g, 0.8, &p).unwrap().value;
        assert!(ad_norm(&(&a + &b), &g, 0.8, &p).unwrap().value <= na.value + nb + 1e-12);
        assert!((ad_norm(&(&a * -3.0), &g, 0.8, &p).unwrap().value - 3.0 * na.value).abs() < 1e-12 * na.value);
    }

    #[test]
    fn apply_and_compose() {
        let (g, _) = setup();
        let n = g.len();
        let mut r = rng(22);
        let mk = |r: &mut rand_chacha::ChaCha8Rng| Mat::from_fn(n, n, |_, _| r.gen_range(-1.0..1.0));
        let (a, b) = (mk(&mut r), mk(&mut r));
        let h = uniform_vec(&mut r, n);
        assert_eq!(apply(&Mat::identity(n, n), &h).unwrap(), h);
        let mut e = Vector::zeros(n);
        e[7] = 1.0;
        assert_eq!(apply(&a, &e).unwrap(), a.column(7).into_owned());
        let lhs = apply(&compose(&a, &b).unwrap(), &h).unwrap();
        let rhs = apply(&a, &apply(&b, &h).unwrap()).unwrap();
        assert!((lhs - rhs).amax() < 1e-12);
        assert!(apply(&a, &Vector::zeros(3)).is_err());
    }

    #[test]
    fn product_weight_grid_has_sixteen_valid_triples() {
        let (g, p) = setup();
        let reps = product_weight_grid(&g, &[0.3, 0.7, 1.1], &p);
        assert_eq!(reps.len(), 16);
        for r in &reps {
            assert!(r.max_ratio.is_finite() && r.max_ratio >= 1.0, "{r:?}");
        }
        assert!(matches!(product_weight_check(&g, 0.5, 0.7, 0.7, &p), Err(Error::Hypothesis(_))));
        assert!(matches!(product_weight_check(&g, 1.1, 0.3, 0.7, &p), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn composition_constant_bounds_products() {
        let (g, p) = setup();
        let n = g.len();
        let (eps, eps1) = (0.8, 0.4);
        let c = composition_constant(&g, eps, eps1, &p);
        let mut r = rng(23);
        let a = Mat::from_fn(n, n, |x, y| r.gen_range(-1.0..1.0) * omega(&g, x, y, eps, &p));
        let b = Mat::from_fn(n, n, |x, y| r.gen_range(-1.0..1.0) * omega(&g, x, y, eps1, &p));
        let lhs = ad_norm(&(&a * &b), &g, eps1, &p).unwrap().value;
        let rhs = c * ad_norm(&a, &g, eps, &p).unwrap().value * ad_norm(&b, &g, eps1, &p).unwrap().value;
        assert!(lhs <= rhs * (1.0 + 1e-12));
    }
}
