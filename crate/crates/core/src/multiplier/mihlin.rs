use super::symbol::Symbol;
use crate::calculus::SpectralData;
use crate::error::{Error, Result};
use crate::seqspace::{Flavor, SpaceParams};
use crate::space::ModelSpace;

/// Points of the log-spaced Mihlin grid.
pub const GRID_POINTS: usize = 4000;
/// The range scan extends the model grid by this factor on both sides.
pub const WIDE_FACTOR: f64 = 1e6;

#[derive(Clone, Debug)]
pub struct MihlinSymbol {
    pub symbol: Symbol,
    pub ell: usize,
    /// `max_{ν ≤ ℓ} sup |λ^ν m^{(ν)}(λ)|` over the model grid.
    pub mihlin_sup: f64,
    /// The same sup, one entry per order `ν = 0..=ℓ`.
    pub per_order: Vec<f64>,
    /// `[√λ₂/b², b²√λ_n]`.
    pub grid: (f64, f64),
    /// Relative change of `mihlin_sup` when the grid is doubled.
    pub refinement_change: f64,
    /// The sup over the grid widened by [`WIDE_FACTOR`].
    pub wide_sup: f64,
    /// Finite on the model range but not (or much larger) beyond it.
    pub range_restricted: bool,
    /// Smoothness threshold that `ell` had to exceed.
    pub threshold: f64,
    /// `max/min` of `|B(x,r)|/r^d` over all centres and radii.
    pub ahlfors_width: f64,
    /// Whether the Ahlfors scan relaxed the threshold.
    pub relaxed: bool,
    /// `max |m(√λ)|` over the nonzero spectrum.
    pub spectrum_sup: f64,
}

/// `max/min` of `|B(x,r)|/r^d` over every centre and every radius between the
/// smallest distance and the diameter. Open balls are constant on
/// `(r_k, r_{k+1}]`, so both ends of each interval are evaluated.
pub fn ahlfors_width(space: &ModelSpace, d: f64) -> f64 {
    let radii = space.distinct_distances();
    let radii: Vec<f64> = radii.into_iter().filter(|r| *r > 0.0).collect();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for x in 0..space.n() {
        for (k, &r) in radii.iter().enumerate() {
            // open ball at r_k, then the ball just past r_k (equal to the open ball at r_{k+1})
            let open = space.ball_volume(x, r);
            let closed = match radii.get(k + 1) {
                Some(&next) => space.ball_volume(x, next),
                None => space.total_measure(),
            };
            for v in [open / r.powf(d), closed / r.powf(d)] {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    if lo > 0.0 {
        hi / lo
    } else {
        f64::INFINITY
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
}

fn per_order_sups(symbol: &Symbol, ell: usize, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut sups = vec![0.0f64; ell + 1];
    for u in log_grid(lo, hi, n) {
        let d = symbol.derivatives(u, ell);
        let mut pw = 1.0;
        for (nu, s) in sups.iter_mut().enumerate() {
            let v = (pw * d[nu]).abs();
            // NaN propagates as an infinite sup
            *s = if v.is_nan() { f64::INFINITY } else { s.max(v) };
            pw *= u;
        }
    }
    sups
}

/// Rejects symbols with `|m(−λ) − m(λ)| > 1e-12·max(1, |m(λ)|)` on the grid.
fn check_even(symbol: &Symbol, lo: f64, hi: f64) -> Result<()> {
    for u in std::iter::once(0.0).chain(log_grid(lo, hi, GRID_POINTS)) {
        let (p, m) = (symbol.eval(u), symbol.eval(-u));
        if !((p - m).abs() <= 1e-12 * p.abs().max(1.0)) {
            return Err(Error::Symbol(format!("'{}' is not even: m({u}) = {p}, m(-{u}) = {m}", symbol.name)));
        }
    }
    Ok(())
}

/// Smoothness threshold `𝒥 + d/2` (or `𝒥` after the Ahlfors relaxation),
/// plus `|s|` for the tilde spaces.
pub fn mihlin_threshold(params: &SpaceParams, relaxed: bool) -> f64 {
    let base = if relaxed { params.J() } else { params.J() + params.d / 2.0 };
    match params.flavor {
        Flavor::Classical => base,
        Flavor::Tilde => base + params.s.abs(),
    }
}

/// Checks evenness and the smoothness threshold, then measures the Mihlin
/// constants of `symbol` on the spectral range of `spec`.
///
/// The threshold is relaxed when the Ahlfors band width at `params.d` is at
/// most `ahlfors_factor`.
pub fn check_mihlin(
    symbol: &Symbol,
    ell: usize,
    params: &SpaceParams,
    space: &ModelSpace,
    spec: &SpectralData,
    b: f64,
    ahlfors_factor: f64,
) -> Result<MihlinSymbol> {
    let width = ahlfors_width(space, params.d);
    let relaxed = width <= ahlfors_factor;
    let threshold = mihlin_threshold(params, relaxed);
    if !(ell as f64 > threshold) {
        return Err(Error::Hypothesis(format!("smoothness ℓ = {ell} must exceed {threshold:.4}")));
    }
    let (smin, smax) = spec.nonzero_range();
    let (lo, hi) = (smin / (b * b), smax * b * b);
    check_even(symbol, lo, hi)?;

    let per_order = per_order_sups(symbol, ell, lo, hi, GRID_POINTS);
    let mihlin_sup = per_order.iter().cloned().fold(0.0, f64::max);
    if !mihlin_sup.is_finite() {
        return Err(Error::Symbol(format!("'{}' has an infinite Mihlin constant on the model range", symbol.name)));
    }
    let fine = per_order_sups(symbol, ell, lo, hi, 2 * GRID_POINTS - 1).into_iter().fold(0.0, f64::max);
    let refinement_change = if mihlin_sup > 0.0 { (fine - mihlin_sup).abs() / mihlin_sup } else { fine };
    let wide_sup = per_order_sups(symbol, ell, lo / WIDE_FACTOR, hi * WIDE_FACTOR, 4 * GRID_POINTS)
        .into_iter()
        .fold(0.0, f64::max);
    let range_restricted = !wide_sup.is_finite() || wide_sup > 2.0 * mihlin_sup.max(fine);
    let spectrum_sup = (spec.nullspace_dim..spec.n())
        .map(|i| symbol.eval(spec.sqrt_eigenvalue(i)).abs())
        .fold(0.0, f64::max);
    Ok(MihlinSymbol {
        symbol: symbol.clone(),
        ell,
        mihlin_sup,
        per_order,
        grid: (lo, hi),
        refinement_change,
        wide_sup,
        range_restricted,
        threshold,
        ahlfors_width: width,
        relaxed,
        spectrum_sup,
    })
}
