use super::orders::{compute_orders, MoleculeOrders};
use crate::calculus::SpectralData;
use crate::error::{Error, Result};
use crate::linalg::{max_abs, scale_rows, Mat};
use crate::seqspace::{Flavor, SpaceParams};
use crate::space::{HierarchyMode, ModelSpace, NetHierarchy};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoleculeKind {
    Synthesis,
    Analysis,
}

/// Smallest constant making one pointwise condition hold for every `(ξ, x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    /// `size`, `smoothness` (bounds on `L^ν m`) or `companion` (bounds on `L^ν b`).
    pub name: &'static str,
    pub nu: u32,
    pub constant: f64,
}

#[derive(Clone, Debug)]
pub struct MoleculeCertificate {
    pub kind: MoleculeKind,
    pub orders: MoleculeOrders,
    /// Decay exponent `𝓜` used in the envelopes.
    pub decay: f64,
    pub conditions: Vec<Condition>,
    /// `max |L^K b − m| / max |m|` for the companion factorization (0 when void).
    pub factorization_residual: f64,
    pub budget: f64,
    pub max_constant: f64,
    /// Scaling that brings every constant within budget (`budget / max_constant`).
    pub c_star: f64,
    pub pass: bool,
}

/// `L^ν` applied to every column. Negative powers act on the complement of
/// the nullspace and fail on columns with a nullspace component.
pub fn l_powers(spec: &SpectralData, family: &Mat, nu: i32) -> Result<Mat> {
    let mut c = spec.eigenfunctions.tr_mul(&scale_rows(family, &spec.mu));
    if nu < 0 {
        for k in 0..c.ncols() {
            let comp = (0..spec.nullspace_dim).map(|i| c[(i, k)].powi(2)).sum::<f64>().sqrt();
            let norm = c.column(k).norm();
            if comp > 1e-10 * norm.max(1.0) {
                return Err(Error::NullspaceComponent(comp));
            }
        }
    }
    for i in 0..spec.n() {
        let lam = spec.eigenvalues[i];
        let f = if lam == 0.0 {
            if nu == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            lam.powi(nu)
        };
        c.row_mut(i).scale_mut(f);
    }
    Ok(&spec.eigenfunctions * c)
}

/// `max_{ξ,x} |g_ξ(x)| / (scale_ξ · env(x, ξ))` over the included columns.
fn constant(
    g: &Mat,
    space: &ModelSpace,
    h: &NetHierarchy,
    decay: f64,
    scale: impl Fn(f64) -> f64,
    include: impl Fn(usize) -> bool,
) -> f64 {
    let mut worst = 0.0_f64;
    for xi in 0..h.len() {
        if !include(xi) {
            continue;
        }
        let (p, ell) = (h.point(xi), h.ell(xi));
        let head = h.b_vol(xi).powf(-0.5) * scale(ell);
        for x in 0..space.n() {
            let env = head * (1.0 + space.dist[(x, p)] / ell).powf(-decay);
            worst = worst.max(g[(x, xi)].abs() / env);
        }
    }
    worst
}

/// Measures every condition that applies to a synthesis or analysis family.
///
/// `companions` replaces the default `b_ξ = L^{-K} m_ξ` (synthesis) or
/// `b̃_ξ = L^{-N} m̃_ξ` (analysis). In inhomogeneous mode the companion
/// conditions are skipped at level 0.
#[allow(clippy::too_many_arguments)]
pub fn validate_molecule(
    family: &Mat,
    kind: MoleculeKind,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    decay: f64,
    companions: Option<&Mat>,
    budget: f64,
) -> Result<MoleculeCertificate> {
    if family.ncols() != h.len() || family.nrows() != space.n() {
        return Err(Error::IndexMismatch(format!(
            "family is {}x{}, expected {}x{}",
            family.nrows(),
            family.ncols(),
            space.n(),
            h.len()
        )));
    }
    let orders = compute_orders(params);
    if !(decay > orders.m_threshold) {
        return Err(Error::InvalidArgument(format!("decay {decay} must exceed {}", orders.m_threshold)));
    }
    let m_eff = match kind {
        MoleculeKind::Synthesis => decay,
        MoleculeKind::Analysis => decay + params.d,
    };
    let all = |_: usize| true;
    let keep_companion = |xi: usize| !(h.mode == HierarchyMode::Inhomogeneous && h.level(xi) == 0);
    let mut conditions = vec![Condition {
        name: "size",
        nu: 0,
        constant: constant(family, space, h, m_eff, |_| 1.0, all),
    }];
    let smooth_orders: Option<u32> = match kind {
        MoleculeKind::Synthesis => orders.n,
        MoleculeKind::Analysis => orders.k,
    };
    if let Some(top) = smooth_orders {
        for nu in 1..=top {
            let g = l_powers(spec, family, nu as i32)?;
            let c = constant(&g, space, h, m_eff, |l| l.powi(-2 * nu as i32), all);
            conditions.push(Condition { name: "smoothness", nu, constant: c });
        }
    }
    let factor_order: Option<u32> = match kind {
        MoleculeKind::Synthesis => orders.k,
        MoleculeKind::Analysis => orders.n,
    };
    let mut factorization_residual = 0.0;
    if let Some(k) = factor_order {
        let mut src = family.clone();
        for xi in 0..h.len() {
            if !keep_companion(xi) {
                src.column_mut(xi).fill(0.0);
            }
        }
        let b = match companions {
            Some(b) => b.clone(),
            None => l_powers(spec, &src, -(k as i32))?,
        };
        let back = l_powers(spec, &b, k as i32)?;
        let scale = max_abs(&src);
        if scale > 0.0 {
            let mut diff = &back - &src;
            for xi in 0..h.len() {
                if !keep_companion(xi) {
                    diff.column_mut(xi).fill(0.0);
                }
            }
            factorization_residual = max_abs(&diff) / scale;
        }
        // the classical synthesis form stops at ν = K − 1; ν = K repeats the size bound
        let top = match (kind, orders.flavor) {
            (MoleculeKind::Synthesis, Flavor::Classical) => k.saturating_sub(1),
            _ => k,
        };
        let mut pw = b;
        for nu in 0..=top {
            if nu > 0 {
                pw = l_powers(spec, &pw, 1)?;
            }
            let e = 2 * (k as i32 - nu as i32);
            let c = constant(&pw, space, h, m_eff, |l| l.powi(e), keep_companion);
            conditions.push(Condition { name: "companion", nu, constant: c });
        }
    }
    let max_constant = conditions.iter().map(|c| c.constant).fold(0.0, f64::max);
    let c_star = if max_constant > 0.0 { budget / max_constant } else { f64::INFINITY };
    Ok(MoleculeCertificate {
        kind,
        orders,
        decay,
        conditions,
        factorization_residual,
        budget,
        max_constant,
        c_star,
        pass: max_constant <= budget * (1.0 + 1e-12) && factorization_residual <= 1e-8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{eigendecompose, level_window, Cutoff, CutoffKind};
    use crate::frames::build_frame1;
    use crate::seqspace::Family;
    use crate::space::build_hierarchy;
    use crate::Error;

    struct Setup {
        m: ModelSpace,
        sd: SpectralData,
        h: NetHierarchy,
        psi: Mat,
    }

    fn setup(n: usize) -> Setup {
        let m = ModelSpace::build(&crate::space::ModelSpec::cycle(n)).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let w = level_window(&sd, 2.0, HierarchyMode::Homogeneous).unwrap();
        let h = build_hierarchy(&m, 2.0, 0.5, w, HierarchyMode::Homogeneous).unwrap();
        let psi = build_frame1(&sd, &h, &Cutoff::new(CutoffKind::LowPass, 2.0).unwrap()).unwrap().elements;
        Setup { m, sd, h, psi }
    }

    fn pr(s: f64) -> SpaceParams {
        SpaceParams::new(s, 2.0, 2.0, Flavor::Classical, Family::TriebelLizorkin, 1.0, 1.0).unwrap()
    }

    #[test]
    fn zero_family_passes() {
        let t = setup(32);
        let z = Mat::zeros(32, t.h.len());
        for kind in [MoleculeKind::Synthesis, MoleculeKind::Analysis] {
            let c = validate_molecule(&z, kind, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
            assert_eq!(c.max_constant, 0.0);
            assert!(c.pass);
        }
    }

    #[test]
    fn scaled_frame_is_a_molecule_family_and_constants_scale() {
        let t = setup(32);
        let c = validate_molecule(&t.psi, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
        assert!(c.max_constant.is_finite() && c.max_constant > 0.0);
        // s = 0: size, smoothness ν = 1 and companion ν = 0
        let names: Vec<_> = c.conditions.iter().map(|c| (c.name, c.nu)).collect();
        assert_eq!(names, vec![("size", 0), ("smoothness", 1), ("companion", 0)]);
        assert!(c.factorization_residual < 1e-10);
        let scaled = &t.psi * c.c_star;
        let c2 = validate_molecule(&scaled, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
        assert!(c2.pass);
        for (a, b) in c.conditions.iter().zip(&c2.conditions) {
            assert!((b.constant - c.c_star * a.constant).abs() <= 1e-12 * b.constant.max(1e-300));
        }
    }

    #[test]
    fn shifted_family_breaks_decay() {
        let t = setup(32);
        let base = validate_molecule(&t.psi, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
        // move every element to the antipode of its center
        let shifted = Mat::from_fn(32, t.h.len(), |x, xi| t.psi[((x + 16) % 32, xi)]);
        let bad = validate_molecule(&shifted, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
        assert!(bad.conditions[0].constant > 10.0 * base.conditions[0].constant);
        let scaled = &shifted * base.c_star;
        let fail = validate_molecule(&scaled, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
        assert!(!fail.pass);
    }

    #[test]
    fn companions_need_mean_zero() {
        let t = setup(16);
        let mut f = t.psi.clone();
        f.column_mut(0).add_scalar_mut(1.0);
        let r = validate_molecule(&f, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0);
        assert!(matches!(r, Err(Error::NullspaceComponent(_))));
        assert!(validate_molecule(&t.psi, MoleculeKind::Synthesis, &pr(0.0), &t.m, &t.sd, &t.h, 1.0, None, 1.0).is_err());
    }

    #[test]
    fn analysis_orders_follow_voidness() {
        let t = setup(16);
        let c = validate_molecule(&t.psi, MoleculeKind::Analysis, &pr(-1.0), &t.m, &t.sd, &t.h, 2.0, None, 1.0).unwrap();
        // s < 0: smoothness up to K = 2, no companion
        let names: Vec<_> = c.conditions.iter().map(|c| (c.name, c.nu)).collect();
        assert_eq!(names, vec![("size", 0), ("smoothness", 1), ("smoothness", 2)]);
        let c = validate_molecule(&t.psi, MoleculeKind::Analysis, &pr(3.0), &t.m, &t.sd, &t.h, 3.5, None, 1.0).unwrap();
        let names: Vec<_> = c.conditions.iter().map(|c| (c.name, c.nu)).collect();
        assert_eq!(names, vec![("size", 0), ("companion", 0), ("companion", 1), ("companion", 2)]);
    }

    #[test]
    fn l_powers_match_single_vector_route() {
        let t = setup(16);
        let col = t.psi.column(3).into_owned();
        for nu in [-2, -1, 0, 1, 3] {
            let a = l_powers(&t.sd, &t.psi, nu).unwrap().column(3).into_owned();
            let b = crate::calculus::apply_l_power(&t.sd, &col, nu, true).unwrap();
            assert!((a - b).amax() < 1e-10);
        }
    }
}
