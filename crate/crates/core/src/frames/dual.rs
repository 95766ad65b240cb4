use super::{level_bands, Frame, FrameKind};
use crate::calculus::{apply_symbol, phi, SpectralData};
use crate::error::{Error, Result};
use crate::linalg::{scale_cols, Mat};
use crate::space::{HierarchyMode, NetHierarchy};

use super::sampling::SamplingReport;

#[derive(Clone, Debug)]
pub struct DualBuildReport {
    pub gamma: f64,
    /// `ε_j` per level.
    pub epsilon: Vec<f64>,
    pub neumann_terms: Vec<usize>,
    /// Norm of the last term relative to the first correction term, per level.
    pub neumann_tail: Vec<f64>,
    pub sampling: Vec<(f64, f64)>,
}

/// Level-`j` dual symbol `Γ(b^{1-j}u)` with `Γ(u) = Φ(b^{-2}u) − Φ(bu)`; equals 1 on
/// the primal band and lives in `[b^{j-2}, b^{j+2}]`.  Level 0 of an
/// inhomogeneous window uses `Φ(u/b)`.
pub(crate) fn dual_symbol(j: i32, b: f64, mode: HierarchyMode) -> impl Fn(f64) -> f64 {
    let low = mode == HierarchyMode::Inhomogeneous && j == 0;
    let s = b.powi(1 - j);
    move |u: f64| if low { phi(u / b, b) } else { crate::calculus::gamma(s * u, b) }
}

const TAIL: f64 = 1e-12;
const MAX_TERMS: usize = 20_000;

/// `ψ̃_ξ = c_ε |A_ξ|^{1/2} T[Γ(·,ξ)]` with `T = Σ_{k≥0} R^k`,
/// `R = Γ² − V`, `V(x,y) = Σ_η ω_η Γ(x,η) Γ(η,y)`, `ω_η = |A_η|/(1+ε)`.
pub fn build_dual_frame(spec: &SpectralData, h: &NetHierarchy, sampling: &[SamplingReport]) -> Result<(Frame, DualBuildReport)> {
    if sampling.len() != h.levels.len() {
        return Err(Error::Precondition("one sampling report per level is required".into()));
    }
    if let Some(r) = sampling.iter().find(|r| !(r.epsilon < 0.5)) {
        return Err(Error::Precondition(format!("sampling ε = {} at level {} is not below 1/2", r.epsilon, r.level)));
    }
    let n = spec.n();
    let mu = &spec.mu;
    let mut elements = Mat::zeros(n, h.len());
    let mut level_of = Vec::with_capacity(h.len());
    let mut terms = Vec::new();
    let mut tails = Vec::new();
    for (k, net) in h.levels.iter().enumerate() {
        let eps = sampling[k].epsilon;
        let c_eps = 1.0 / (1.0 + eps);
        let g = apply_symbol(spec, dual_symbol(net.level, h.b, h.mode), 1.0).table;
        let m = net.len();
        let gc = Mat::from_fn(n, m, |x, i| g[(x, net.centers[i])]);
        let omega: Vec<f64> = net.a_vol.iter().map(|a| c_eps * a).collect();
        let gcw = Mat::from_fn(n, m, |x, i| gc[(x, i)] * omega[i]);
        let v = &gcw * gc.transpose();
        let r_table = scale_cols(&g, mu) * &g - v;
        let r_op = scale_cols(&r_table, mu);
        let mut y = gc.clone();
        let mut acc = gc.clone();
        let mut first = 0.0;
        let mut last = 0.0;
        let mut rising = 0;
        let mut count = 0;
        loop {
            let next = &r_op * &y;
            let nrm = next.norm();
            count += 1;
            if count == 1 {
                first = nrm;
            }
            acc += &next;
            if nrm <= TAIL * first || nrm == 0.0 {
                last = nrm;
                break;
            }
            if count > 1 && nrm > 0.999 * last {
                rising += 1;
                if rising >= 5 {
                    return Err(Error::Divergence { terms: count });
                }
            } else {
                rising = 0;
            }
            if count >= MAX_TERMS {
                return Err(Error::Divergence { terms: count });
            }
            last = nrm;
            y = next;
        }
        terms.push(count);
        tails.push(if first > 0.0 { last / first } else { 0.0 });
        for (i, xi) in h.range(k).enumerate() {
            let col = acc.column(i) * (c_eps * net.a_vol[i].sqrt());
            elements.set_column(xi, &col);
            level_of.push(net.level);
        }
    }
    let report = DualBuildReport {
        gamma: h.gamma,
        epsilon: sampling.iter().map(|r| r.epsilon).collect(),
        neumann_terms: terms,
        neumann_tail: tails,
        sampling: sampling.iter().map(|r| (r.lower, r.upper)).collect(),
    };
    Ok((Frame { kind: FrameKind::Dual, elements, level_of, bands: level_bands(h, 2) }, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{eigendecompose, level_window, Cutoff, CutoffKind};
    use crate::frames::{accept_gamma, build_frame1, reconstruct};
    use crate::linalg::{norm2, rng, uniform_vec};
    use crate::space::{ModelSpace, ModelSpec};

    fn setup(spec: ModelSpec, mode: HierarchyMode) -> (ModelSpace, SpectralData, Frame, Frame, DualBuildReport) {
        let m = ModelSpace::build(&spec).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let w = level_window(&sd, 2.0, mode).unwrap();
        let (h, reps) = accept_gamma(&m, &sd, 2.0, 0.5, w, mode).unwrap();
        let p = build_frame1(&sd, &h, &Cutoff::new(CutoffKind::LowPass, 2.0).unwrap()).unwrap();
        let (d, rep) = build_dual_frame(&sd, &h, &reps).unwrap();
        (m, sd, p, d, rep)
    }

    #[test]
    fn two_sided_reconstruction_on_cycle() {
        let (m, sd, p, d, rep) = setup(ModelSpec::cycle(32), HierarchyMode::Homogeneous);
        assert!(rep.neumann_tail.iter().all(|t| *t <= 1e-12));
        let mut r = rng(11);
        for _ in 0..5 {
            let f = sd.project_mean_zero(&uniform_vec(&mut r, 32));
            let nf = norm2(&f, &m.mu);
            assert!(norm2(&(reconstruct(&p, &d, &f, &m.mu) - &f), &m.mu) <= 1e-9 * nf);
            assert!(norm2(&(reconstruct(&d, &p, &f, &m.mu) - &f), &m.mu) <= 1e-9 * nf);
        }
    }

    #[test]
    fn inhomogeneous_reconstruction_keeps_constants() {
        let (m, _, p, d, _) = setup(ModelSpec::path(24), HierarchyMode::Inhomogeneous);
        let f = uniform_vec(&mut rng(5), 24);
        let back = reconstruct(&p, &d, &f, &m.mu);
        assert!(norm2(&(back - &f), &m.mu) <= 1e-9 * norm2(&f, &m.mu));
    }

    #[test]
    fn perfect_sampling_gives_plain_gamma_columns() {
        // one level with every point in the net and unit masses: R = Γ² − Γ² = 0
        let m = ModelSpace::build(&ModelSpec::cycle(16)).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let h = crate::space::build_hierarchy(&m, 2.0, 0.5, (1, 1), HierarchyMode::Homogeneous).unwrap();
        let reps = vec![crate::frames::check_sampling(&sd, &h, 0).unwrap()];
        let (d, rep) = build_dual_frame(&sd, &h, &reps).unwrap();
        let g = apply_symbol(&sd, dual_symbol(1, 2.0, HierarchyMode::Homogeneous), 1.0).table;
        let c = 1.0 / (1.0 + reps[0].epsilon);
        for xi in 0..h.len() {
            let want = g.column(h.point(xi)) * (c * h.a_vol(xi).sqrt());
            assert!((d.element(xi) - want).amax() < 1e-12);
        }
        assert!(rep.neumann_terms[0] <= 2);
    }

    #[test]
    fn rejects_unmet_sampling() {
        let m = ModelSpace::build(&ModelSpec::cycle(16)).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let h = crate::space::build_hierarchy(&m, 2.0, 0.5, (0, 1), HierarchyMode::Homogeneous).unwrap();
        let mut reps: Vec<_> = (0..2).map(|k| crate::frames::check_sampling(&sd, &h, k).unwrap()).collect();
        reps[0].epsilon = 0.7;
        assert!(matches!(build_dual_frame(&sd, &h, &reps), Err(Error::Precondition(_))));
    }
}
