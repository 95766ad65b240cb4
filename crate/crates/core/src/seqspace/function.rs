use super::params::{Family, Flavor, SpaceParams};
use crate::calculus::{Cutoff, CutoffKind, SpectralData};
use crate::error::{Error, Result};
use crate::linalg::{lq, norm_p, Vector};
use crate::space::ModelSpace;

/// Checks `supp φ ⊂ [1/b, b]` and `|φ| > 0` on `[b^{-3/4}, b^{3/4}]`.
pub fn validate_phi(phi: &Cutoff, b: f64) -> Result<()> {
    if phi.kind == CutoffKind::LowPass {
        return Err(Error::InvalidArgument("low-pass cutoff is not supported away from 0".into()));
    }
    let (lo, hi) = phi.support();
    if lo < 1.0 / b * (1.0 - 1e-12) || hi > b * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument(format!("supp φ = [{lo}, {hi}] is not inside [1/{b}, {b}]")));
    }
    let (a, c) = (-0.75 * b.ln(), 0.75 * b.ln());
    let n = 400;
    for k in 0..=n {
        let u = (a + (c - a) * k as f64 / n as f64).exp();
        if phi.eval(u).abs() <= 0.0 {
            return Err(Error::InvalidArgument(format!("φ vanishes at {u} inside [b^-3/4, b^3/4]")));
        }
    }
    Ok(())
}

/// Levels `j` for which `φ(b^{-j}√λ)` can be nonzero on the spectrum; outside
/// them every term of the norm vanishes, so the windowed sum is the full sum.
fn active_levels(spec: &SpectralData, b: f64) -> (i32, i32) {
    let (lo, hi) = spec.nonzero_range();
    ((lo.ln() / b.ln()).floor() as i32 - 1, (hi.ln() / b.ln()).ceil() as i32 + 1)
}

/// Pieces `φ_j(√L) f` together with the pointwise weight of each level.
fn pieces(
    f: &Vector,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    phi: &Cutoff,
    b: f64,
) -> Result<Vec<(Vector, Vector)>> {
    validate_phi(phi, b)?;
    if f.len() != spec.n() {
        return Err(Error::IndexMismatch(format!("function has {} values, model has {}", f.len(), spec.n())));
    }
    let mut c = spec.coefficients(f);
    for i in 0..spec.nullspace_dim {
        c[i] = 0.0;
    }
    let (j0, j1) = active_levels(spec, b);
    let mut out = Vec::new();
    for j in j0..=j1 {
        let scale = b.powi(-j);
        let mut cj = c.clone();
        for (i, v) in cj.iter_mut().enumerate() {
            *v *= phi.eval(scale * spec.sqrt_eigenvalue(i));
        }
        if cj.iter().all(|v| *v == 0.0) {
            continue;
        }
        let piece = spec.synthesize(&cj);
        let w = match params.flavor {
            Flavor::Classical => Vector::from_element(f.len(), b.powf(j as f64 * params.s)),
            Flavor::Tilde => Vector::from_iterator(
                f.len(),
                (0..f.len()).map(|x| space.ball_volume(x, b.powi(-j)).powf(-params.s / params.d)),
            ),
        };
        out.push((piece, w));
    }
    Ok(out)
}

/// `(Σ_j (‖w_j φ_j(√L) f‖_p)^q)^{1/q}` with `w_j = b^{js}` or `|B(·, b^{-j})|^{-s/d}`.
pub fn besov_norm(
    f: &Vector,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    phi: &Cutoff,
    b: f64,
) -> Result<f64> {
    let ps = pieces(f, params, space, spec, phi, b)?;
    Ok(lq(ps.iter().map(|(g, w)| norm_p(&g.component_mul(w), &space.mu, params.p)), params.q))
}

/// `‖(Σ_j (w_j |φ_j(√L) f|)^q)^{1/q}‖_p`.
pub fn tl_norm(
    f: &Vector,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    phi: &Cutoff,
    b: f64,
) -> Result<f64> {
    if params.p.is_infinite() {
        return Err(Error::InvalidArgument("Triebel-Lizorkin norm needs p < inf".into()));
    }
    let ps = pieces(f, params, space, spec, phi, b)?;
    let g = Vector::from_iterator(f.len(), (0..f.len()).map(|x| lq(ps.iter().map(|(g, w)| (g[x] * w[x]).abs()), params.q)));
    Ok(norm_p(&g, &space.mu, params.p))
}

/// Dispatches on `params.family`.
pub fn function_norm(
    f: &Vector,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    phi: &Cutoff,
    b: f64,
) -> Result<f64> {
    match params.family {
        Family::Besov => besov_norm(f, params, space, spec, phi, b),
        Family::TriebelLizorkin => tl_norm(f, params, space, spec, phi, b),
    }
}
