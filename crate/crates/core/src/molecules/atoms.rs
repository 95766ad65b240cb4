use super::validate::{l_powers, Condition};
use crate::calculus::{Cutoff, SpectralData, SUPPORT_THRESHOLD};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::linalg::{max_abs, norm2, Mat, Vector};
use crate::seqspace::{function_norm, seq_norm, SpaceParams};
use crate::space::{HierarchyMode, ModelSpace, NetHierarchy};

/// Smallest admissible `(K, K̃)`: `(⌊(𝒥−s)/2⌋+1)₊` and `(⌊s/2⌋+2)₊`.
pub fn atom_orders(params: &SpaceParams) -> (u32, u32) {
    let k = (((params.J() - params.s) / 2.0).floor() + 1.0).max(0.0) as u32;
    let kt = ((params.s / 2.0).floor() + 2.0).max(0.0) as u32;
    (k, kt)
}

#[derive(Clone, Debug)]
pub struct AtomCertificate {
    pub k: u32,
    pub k_tilde: u32,
    pub conditions: Vec<Condition>,
    /// `max_{ξ,ν} r_ξν / δ_j`, `r_ξν` the radius of the effective support of `L^ν b_ξ`.
    pub support_constant: f64,
    pub factorization_residual: f64,
    pub budget: f64,
    pub support_budget: f64,
    pub max_constant: f64,
    pub c_star: f64,
    pub pass: bool,
}

fn plain_constant(g: &Mat, h: &NetHierarchy, scale: impl Fn(f64) -> f64, include: impl Fn(usize) -> bool) -> f64 {
    let mut worst = 0.0_f64;
    for xi in 0..h.len() {
        if include(xi) {
            let bound = h.b_vol(xi).powf(-0.5) * scale(h.ell(xi));
            worst = worst.max(g.column(xi).amax() / bound);
        }
    }
    worst
}

/// Measures the atom conditions: `|L^n a_ξ| ≤ ℓ^{-2n}|B_ξ|^{-1/2}` for `n ≤ K̃`,
/// `|L^ν b_ξ| ≤ ℓ^{2(K−ν)}|B_ξ|^{-1/2}` and the support of `L^ν b_ξ` for `ν ≤ K`.
/// `b_ξ` defaults to `L^{-K} a_ξ`. In inhomogeneous mode level 0 skips the
/// conditions on `b_ξ`.
#[allow(clippy::too_many_arguments)]
pub fn validate_atoms(
    family: &Mat,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    orders: (u32, u32),
    companions: Option<&Mat>,
    budget: f64,
    support_budget: f64,
) -> Result<AtomCertificate> {
    if family.ncols() != h.len() || family.nrows() != space.n() {
        return Err(Error::IndexMismatch(format!("family is {}x{}", family.nrows(), family.ncols())));
    }
    let (k, kt) = orders;
    let min = atom_orders(params);
    if k < min.0 || kt < min.1 {
        return Err(Error::InvalidArgument(format!("orders ({k}, {kt}) below the minimum {min:?}")));
    }
    let keep = |xi: usize| !(h.mode == HierarchyMode::Inhomogeneous && h.level(xi) == 0);
    let mut conditions = Vec::new();
    let mut pw = family.clone();
    for n in 0..=kt {
        if n > 0 {
            pw = l_powers(spec, &pw, 1)?;
        }
        let c = plain_constant(&pw, h, |l| l.powi(-2 * n as i32), |_| true);
        conditions.push(Condition { name: "size", nu: n, constant: c });
    }
    let mut src = family.clone();
    for xi in 0..h.len() {
        if !keep(xi) {
            src.column_mut(xi).fill(0.0);
        }
    }
    let b = match companions {
        Some(b) => b.clone(),
        None => l_powers(spec, &src, -(k as i32))?,
    };
    let back = l_powers(spec, &b, k as i32)?;
    let scale = max_abs(&src);
    let mut diff = &back - &src;
    for xi in 0..h.len() {
        if !keep(xi) {
            diff.column_mut(xi).fill(0.0);
        }
    }
    let factorization_residual = if scale > 0.0 { max_abs(&diff) / scale } else { 0.0 };
    let mut support_constant = 0.0_f64;
    let mut pw = b;
    for nu in 0..=k {
        if nu > 0 {
            pw = l_powers(spec, &pw, 1)?;
        }
        let e = 2 * (k as i32 - nu as i32);
        let c = plain_constant(&pw, h, |l| l.powi(e), keep);
        conditions.push(Condition { name: "companion", nu, constant: c });
        for xi in (0..h.len()).filter(|&xi| keep(xi)) {
            let col = pw.column(xi);
            let top = col.amax();
            if top == 0.0 {
                continue;
            }
            let p = h.point(xi);
            let r = (0..space.n())
                .filter(|&x| col[x].abs() > SUPPORT_THRESHOLD * top)
                .map(|x| space.dist[(x, p)])
                .fold(0.0, f64::max);
            support_constant = support_constant.max(r / h.delta(xi));
        }
    }
    let max_constant = conditions.iter().map(|c| c.constant).fold(0.0, f64::max);
    let c_star = if max_constant > 0.0 { budget / max_constant } else { f64::INFINITY };
    Ok(AtomCertificate {
        k,
        k_tilde: kt,
        conditions,
        support_constant,
        factorization_residual,
        budget,
        support_budget,
        max_constant,
        c_star,
        pass: max_constant <= budget * (1.0 + 1e-12) && support_constant <= support_budget && factorization_residual <= 1e-8,
    })
}

#[derive(Clone, Debug)]
pub struct AtomicDecomposition {
    /// `t_ξ = ⟨f, θ̃_ξ⟩ / c*`, the coefficients against the atoms `a_ξ = c* θ_ξ`.
    pub t: Vector,
    pub c_star: f64,
    /// `‖f − Σ t_ξ a_ξ‖₂ / ‖f‖₂`.
    pub residual: f64,
    /// `‖t‖_seq / ‖f‖`.
    pub coefficient_ratio: f64,
    /// `‖Σ t_ξ a_ξ‖ / ‖t‖_seq`.
    pub synthesis_ratio: f64,
}

/// Writes `f = Σ t_ξ a_ξ` with atoms `a_ξ = c* θ_ξ` from the compact frame.
#[allow(clippy::too_many_arguments)]
pub fn atomic_decompose(
    f: &Vector,
    compact: &Frame,
    compact_dual: &Frame,
    c_star: f64,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    h: &NetHierarchy,
    phi: &Cutoff,
    b: f64,
) -> Result<AtomicDecomposition> {
    if compact_dual.len() != compact.len() || compact.len() != h.len() {
        return Err(Error::Precondition("compact dual frame unavailable for this hierarchy".into()));
    }
    if !(c_star > 0.0 && c_star.is_finite()) {
        return Err(Error::InvalidArgument(format!("atom scaling must be positive and finite, got {c_star}")));
    }
    let mu = &space.mu;
    let f = spec.project_mean_zero(f);
    let t = compact_dual.analysis(&f, mu) / c_star;
    let back = compact.synthesis(&t) * c_star;
    let nf = norm2(&f, mu);
    if nf == 0.0 {
        return Ok(AtomicDecomposition { t, c_star, residual: 0.0, coefficient_ratio: 0.0, synthesis_ratio: 0.0 });
    }
    let residual = norm2(&(&back - &f), mu) / nf;
    let (nt, nfun) = (seq_norm(&t, params, h, space)?, function_norm(&f, params, space, spec, phi, b)?);
    let nback = function_norm(&back, params, space, spec, phi, b)?;
    Ok(AtomicDecomposition {
        t,
        c_star,
        residual,
        coefficient_ratio: nt / nfun,
        synthesis_ratio: if nt > 0.0 { nback / nt } else { 0.0 },
    })
}
