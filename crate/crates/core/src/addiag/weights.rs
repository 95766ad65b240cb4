use crate::linalg::Mat;
use crate::seqspace::{Flavor, SpaceParams};
use crate::space::{ModelSpace, NetHierarchy};

/// Per-index tables the weights need: `ℓ(ξ)`, `|B_ξ|` and center distances.
#[derive(Clone, Debug)]
pub struct NetGeometry {
    pub ell: Vec<f64>,
    pub b_vol: Vec<f64>,
    pub rho: Mat,
}

impl NetGeometry {
    pub fn new(space: &ModelSpace, h: &NetHierarchy) -> Self {
        let n = h.len();
        let pts: Vec<usize> = (0..n).map(|xi| h.point(xi)).collect();
        Self {
            ell: (0..n).map(|xi| h.ell(xi)).collect(),
            b_vol: (0..n).map(|xi| h.b_vol(xi)).collect(),
            rho: Mat::from_fn(n, n, |a, b| space.dist[(pts[a], pts[b])]),
        }
    }

    pub fn len(&self) -> usize {
        self.ell.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ell.is_empty()
    }
}

/// `ω_{ξη}(β, γ)`; the classical form carries `(ℓ(ξ)/ℓ(η))^s (|B_ξ|/|B_η|)^{1/2}`,
/// the tilde form `(|B_ξ|/|B_η|)^{s/d + 1/2}`.
pub fn omega2(g: &NetGeometry, xi: usize, eta: usize, beta: f64, gamma: f64, params: &SpaceParams) -> f64 {
    let j = params.J();
    let (lx, le) = (g.ell[xi], g.ell[eta]);
    let vr = g.b_vol[xi] / g.b_vol[eta];
    let lead = match params.flavor {
        Flavor::Classical => (lx / le).powf(params.s) * vr.sqrt(),
        Flavor::Tilde => vr.powf(params.s / params.d + 0.5),
    };
    let decay = (1.0 + g.rho[(xi, eta)] / lx.max(le)).powf(-j - beta);
    let scale = (lx / le).powf(gamma).min((le / lx).powf(j + gamma));
    lead * decay * scale
}

/// `ω_{ξη}(δ) = ω_{ξη}(δ, δ)`.
pub fn omega(g: &NetGeometry, xi: usize, eta: usize, delta: f64, params: &SpaceParams) -> f64 {
    omega2(g, xi, eta, delta, delta, params)
}

/// Full table `(ω_{ξη}(β, γ))`.
pub fn omega_matrix(g: &NetGeometry, beta: f64, gamma: f64, params: &SpaceParams) -> Mat {
    let n = g.len();
    Mat::from_fn(n, n, |a, b| omega2(g, a, b, beta, gamma, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqspace::Family;
    use crate::space::{build_hierarchy, HierarchyMode, ModelSpec};
    use rand::Rng;

    fn setup() -> (NetGeometry, NetHierarchy) {
        let m = ModelSpace::build(&ModelSpec::cycle(32)).unwrap();
        let h = build_hierarchy(&m, 2.0, 0.5, (-3, 1), HierarchyMode::Homogeneous).unwrap();
        (NetGeometry::new(&m, &h), h)
    }

    fn pr(s: f64, fl: Flavor) -> SpaceParams {
        SpaceParams::new(s, 2.0, 1.0, fl, Family::TriebelLizorkin, 1.0, 1.0).unwrap()
    }

    #[test]
    fn diagonal_is_one() {
        let (g, _) = setup();
        for fl in [Flavor::Classical, Flavor::Tilde] {
            for xi in 0..g.len() {
                assert_eq!(omega(&g, xi, xi, 0.7, &pr(1.3, fl)), 1.0);
                assert_eq!(omega2(&g, xi, xi, 0.2, 1.9, &pr(-0.4, fl)), 1.0);
            }
        }
    }

    #[test]
    fn adjacent_levels_at_same_point() {
        let (g, h) = setup();
        let (s, delta) = (0.6, 0.3);
        let par = pr(s, Flavor::Classical);
        // level index 3 is j = 0, index 4 is j = 1; both nets contain point 0
        let xi = h.range(3).start;
        let eta = h.range(4).start;
        assert_eq!((h.point(xi), h.point(eta)), (0, 0));
        let expect = 2f64.powf(s) * (g.b_vol[xi] / g.b_vol[eta]).sqrt() * 2f64.powf(-(par.J() + delta));
        assert!((omega(&g, xi, eta, delta, &par) - expect).abs() < 1e-15);
    }

    #[test]
    fn two_parameter_identity_and_monotonicity() {
        let (g, _) = setup();
        let mut r = crate::linalg::rng(12);
        for _ in 0..500 {
            let (a, b) = (r.gen_range(0..g.len()), r.gen_range(0..g.len()));
            let eps = r.gen_range(0.05..2.0);
            let (be, ga) = (r.gen_range(0.01..eps), r.gen_range(0.01..eps));
            for fl in [Flavor::Classical, Flavor::Tilde] {
                let par = pr(r.gen_range(-1.0..1.0), fl);
                let w = omega(&g, a, b, eps, &par);
                assert!((omega2(&g, a, b, eps, eps, &par) - w).abs() <= 1e-14 * w);
                assert!(w <= omega2(&g, a, b, be, ga, &par) * (1.0 + 1e-14));
                assert!(w > 0.0);
            }
        }
    }

    #[test]
    fn tilde_with_zero_smoothness() {
        let (g, _) = setup();
        let par = pr(0.0, Flavor::Tilde);
        let (a, b) = (3, g.len() - 2);
        let jj = par.J();
        let (la, lb) = (g.ell[a], g.ell[b]);
        let expect = (g.b_vol[a] / g.b_vol[b]).sqrt()
            * (1.0 + g.rho[(a, b)] / la.max(lb)).powf(-jj - 0.5)
            * (la / lb).powf(0.5).min((lb / la).powf(jj + 0.5));
        assert!((omega(&g, a, b, 0.5, &par) - expect).abs() < 1e-15);
    }
}
