//! Finite level windows and the Littlewood–Paley telescoping identity.

use super::cutoff::{phi, psi};
use super::spectral::SpectralData;
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::space::HierarchyMode;

/// Smallest window `[j_min, j_max]` on which `Σ_j Ψ(b^{-j}√L)` is the identity
/// on the nonzero spectrum: `Φ(b^{-j_max}√λ_n) = 1` and `Φ(b^{1-j_min}√λ_2) = 0`.
///
/// In inhomogeneous mode the window starts at 0, where the low-pass `Φ` takes
/// the place of `Ψ`, and the identity covers the nullspace too.
pub fn level_window(spec: &SpectralData, b: f64, mode: HierarchyMode) -> Result<(i32, i32)> {
    if !(b > 1.0) {
        return Err(Error::InvalidArgument(format!("base must exceed 1, got {b}")));
    }
    let (lo, hi) = spec.nonzero_range();
    if !(hi > 0.0) {
        return Err(Error::InvalidArgument("L has no nonzero eigenvalue".into()));
    }
    let mut j_max = (hi.ln() / b.ln()).ceil() as i32;
    while phi(b.powi(-j_max) * hi, b) < 1.0 {
        j_max += 1;
    }
    while phi(b.powi(-(j_max - 1)) * hi, b) == 1.0 {
        j_max -= 1;
    }
    let mut j_min = (lo.ln() / b.ln()).floor() as i32;
    while phi(b.powi(1 - j_min) * lo, b) > 0.0 {
        j_min -= 1;
    }
    while phi(b.powi(-j_min) * lo, b) == 0.0 && j_min < j_max {
        j_min += 1;
    }
    Ok(match mode {
        HierarchyMode::Homogeneous => (j_min, j_max),
        HierarchyMode::Inhomogeneous => (0, j_max.max(0)),
    })
}

/// Level-`j` band-pass symbol; level 0 of an inhomogeneous window is the low-pass `Φ`.
pub fn level_symbol(j: i32, b: f64, mode: HierarchyMode) -> impl Fn(f64) -> f64 {
    let scale = b.powi(-j);
    let low = mode == HierarchyMode::Inhomogeneous && j == 0;
    move |u: f64| if low { phi(u, b) } else { psi(scale * u, b) }
}

/// `Σ_{j ∈ window} Ψ_j(√L) f`.
pub fn littlewood_paley_sum(spec: &SpectralData, f: &Vector, b: f64, window: (i32, i32), mode: HierarchyMode) -> Vector {
    let mut out = Vector::zeros(f.len());
    for j in window.0..=window.1 {
        out += spec.apply_fn(f, level_symbol(j, b, mode));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::eigendecompose;
    use crate::linalg::{norm2, rng, uniform_vec};
    use crate::space::{ModelSpace, ModelSpec};

    #[test]
    fn cycle64_window_and_telescoping() {
        let m = ModelSpace::build(&ModelSpec::cycle(64)).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let w = level_window(&sd, 2.0, HierarchyMode::Homogeneous).unwrap();
        // √λ_n = 2 and √λ_2 = 2 sin(π/64) ≈ 0.098
        assert_eq!(w, (-4, 1));
        let mut r = rng(7);
        for _ in 0..5 {
            let f = sd.project_mean_zero(&uniform_vec(&mut r, 64));
            let s = littlewood_paley_sum(&sd, &f, 2.0, w, HierarchyMode::Homogeneous);
            assert!(norm2(&(s - &f), &m.mu) <= 1e-10 * norm2(&f, &m.mu));
        }
    }

    #[test]
    fn every_window_level_is_nonzero_somewhere() {
        let m = ModelSpace::build(&ModelSpec::torus(8)).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let (j0, j1) = level_window(&sd, 2.0, HierarchyMode::Homogeneous).unwrap();
        for j in j0..=j1 {
            let sym = level_symbol(j, 2.0, HierarchyMode::Homogeneous);
            assert!((0..sd.n()).any(|i| sym(sd.sqrt_eigenvalue(i)) > 1e-12), "level {j} is empty");
        }
    }

    #[test]
    fn inhomogeneous_sum_keeps_constants() {
        let m = ModelSpace::build(&ModelSpec::path(20)).unwrap();
        let sd = eigendecompose(&m).unwrap();
        let w = level_window(&sd, 2.0, HierarchyMode::Inhomogeneous).unwrap();
        assert_eq!(w.0, 0);
        let f = uniform_vec(&mut rng(9), 20);
        let s = littlewood_paley_sum(&sd, &f, 2.0, w, HierarchyMode::Inhomogeneous);
        assert!((s - &f).amax() < 1e-12);
    }
}
