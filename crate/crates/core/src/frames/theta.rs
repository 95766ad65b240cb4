//! Band-limited approximants `Θ` of the band-pass symbol `Ψ`.
//!
//! `Θ` is a finite cosine sum `Σ_k α_k cos(s_k u)` with `0 ≤ s_k ≤ R`, so each
//! `Θ(δ√L)` is a combination of wave propagators `cos(s_k δ √L)`.  It is
//! obtained by windowing the Fourier transform of `Ψ` to `[-R, R]` and then
//! subtracting `Σ_i c_i u^{2i} h(u)`, where `h` is a band-limited bump with
//! `h(0) = 1`, so that `Θ` vanishes to order `N + K` at the origin.

use crate::calculus::jet::Jet;
use crate::calculus::{psi_jet, smooth_step};
use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct BandLimitedTheta {
    pub b: f64,
    pub radius: f64,
    pub order_n: usize,
    pub order_k: usize,
    /// Period of the cosine sum; larger than every argument `Θ` is used at.
    pub period: f64,
    freqs: Vec<f64>,
    coeffs: Vec<f64>,
    bump: Vec<f64>,
    correction: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub radius: f64,
    pub eps: f64,
    /// Smallest ε for which the weighted bound holds on the grid (above the rounding floor).
    pub achieved: f64,
    /// `max_u |Ψ^{(ν)}(u) − Θ^{(ν)}(u)|` for ν = 0..=K.
    pub max_abs_error: Vec<f64>,
    /// Rounding floor used per derivative order.
    pub floor: Vec<f64>,
    pub pass: bool,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Derivatives `0..=order` of `Σ_k c_k cos(s_k u)`.
fn cos_sum_derivs(freqs: &[f64], coeffs: &[f64], u: f64, order: usize) -> Vec<f64> {
    let mut out = vec![0.0; order + 1];
    for (s, c) in freqs.iter().zip(coeffs) {
        if *c == 0.0 {
            continue;
        }
        let (sn, cs) = (s * u).sin_cos();
        let mut sp = 1.0;
        for (nu, o) in out.iter_mut().enumerate() {
            // d^ν cos(su) = s^ν cos(su + νπ/2)
            let v = match nu % 4 {
                0 => cs,
                1 => -sn,
                2 => -cs,
                _ => sn,
            };
            *o += c * sp * v;
            sp *= s;
        }
    }
    out
}

/// Taylor coefficient of `u^{2m}` in `Σ_k c_k cos(s_k u)`.
fn even_taylor(freqs: &[f64], coeffs: &[f64], m: usize) -> f64 {
    let s: f64 = freqs.iter().zip(coeffs).map(|(f, c)| c * f.powi(2 * m as i32)).sum();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * s / factorial(2 * m)
}

fn window(x: f64) -> f64 {
    smooth_step(2.0 * x.abs() - 1.0)
}

impl BandLimitedTheta {
    /// Construction at a fixed transform radius.  `u_max` is the largest
    /// argument at which `Θ` will be evaluated.
    pub fn with_radius(b: f64, order_n: usize, order_k: usize, radius: f64, u_max: f64) -> Result<Self> {
        if !(b > 1.0) || !(radius > 0.0) || !(u_max > 0.0) {
            return Err(Error::InvalidArgument("need b > 1, R > 0 and u_max > 0".into()));
        }
        if !(order_n >= order_k && order_k >= 1) {
            return Err(Error::InvalidArgument(format!("need N ≥ K ≥ 1, got N={order_n}, K={order_k}")));
        }
        let period = u_max + b + 40.0;
        let count = (radius * period / (2.0 * PI)).ceil() as usize;
        let ds = radius / count as f64;
        let freqs: Vec<f64> = (0..=count).map(|k| k as f64 * ds).collect();
        let weights: Vec<f64> = (0..=count).map(|k| if k == 0 || k == count { 0.5 * ds } else { ds }).collect();

        // Ψ̂(s) = 2∫_{1/b}^{b} Ψ(v) cos(sv) dv by the trapezoid rule; Ψ is flat at both ends.
        let (lo, hi) = (1.0 / b, b);
        let nv = (8.0 * radius * (hi - lo)).ceil().max(4000.0) as usize;
        let dv = (hi - lo) / nv as f64;
        let samples: Vec<(f64, f64)> = (1..nv)
            .map(|m| {
                let v = lo + m as f64 * dv;
                (v, psi_jet(&Jet::constant(v, 0), b).value())
            })
            .collect();
        let coeffs: Vec<f64> = freqs
            .iter()
            .zip(&weights)
            .map(|(&s, &w)| {
                let win = window(s / radius);
                if win == 0.0 {
                    return 0.0;
                }
                let hat: f64 = 2.0 * dv * samples.iter().map(|(v, p)| p * (s * v).cos()).sum::<f64>();
                w * hat * win / PI
            })
            .collect();
        let raw_bump: Vec<f64> = freqs.iter().zip(&weights).map(|(&s, &w)| w * window(s / radius)).collect();
        let total: f64 = raw_bump.iter().sum();
        let bump: Vec<f64> = raw_bump.iter().map(|v| v / total).collect();

        let constraints = (order_n + order_k).div_ceil(2);
        let h: Vec<f64> = (0..constraints).map(|m| even_taylor(&freqs, &bump, m)).collect();
        let mut correction = Vec::with_capacity(constraints);
        for m in 0..constraints {
            let t = even_taylor(&freqs, &coeffs, m);
            let s: f64 = (0..m).map(|i| correction[i] * h[m - i]).sum();
            correction.push((t - s) / h[0]);
        }
        Ok(Self { b, radius, order_n, order_k, period, freqs, coeffs, bump, correction })
    }

    /// Derivatives `Θ, Θ', …, Θ^{(order)}` at `u ≥ 0`.
    pub fn derivatives(&self, u: f64, order: usize) -> Vec<f64> {
        let mut out = cos_sum_derivs(&self.freqs, &self.coeffs, u, order);
        let h = cos_sum_derivs(&self.freqs, &self.bump, u, order);
        for (i, c) in self.correction.iter().enumerate() {
            let p = 2 * i;
            for (nu, o) in out.iter_mut().enumerate() {
                // Leibniz on u^p · h
                let mut acc = 0.0;
                for r in 0..=nu.min(p) {
                    let poly = factorial(p) / factorial(p - r) * u.powi((p - r) as i32);
                    acc += binomial(nu, r) * poly * h[nu - r];
                }
                *o -= c * acc;
            }
        }
        out
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.derivatives(u.abs(), 0)[0]
    }

    /// Sum of `|α_k| s_k^ν` over the combined cosine sum: the scale of rounding in `Θ^{(ν)}`.
    fn magnitude(&self, nu: usize) -> f64 {
        let mut m = 0.0;
        for (k, s) in self.freqs.iter().enumerate() {
            let sp = s.powi(nu as i32);
            m += (self.coeffs[k].abs() + self.correction.iter().map(|c| c.abs()).sum::<f64>() * self.bump[k].abs()) * sp;
        }
        m
    }

    /// Checks `|Ψ^{(ν)}(u) − Θ^{(ν)}(u)| ≤ ε|u|^N/(1+|u|)^{2N}` for ν ≤ K on a grid over `(0, u_max]`,
    /// up to a floating-point floor of `1e-13` times the size of the summed terms.
    pub fn check(&self, eps: f64, u_max: f64) -> ThetaReport {
        let kk = self.order_k;
        let nn = self.order_n as i32;
        let mut grid: Vec<f64> = (1..=4000).map(|i| u_max * i as f64 / 4000.0).collect();
        grid.extend((0..200).map(|i| 10f64.powf(-3.0 + 3.0 * i as f64 / 200.0) / self.b));
        let mut max_abs = vec![0.0_f64; kk + 1];
        let mut sup_psi = vec![0.0_f64; kk + 1];
        let mut rows = Vec::with_capacity(grid.len());
        for &u in &grid {
            let p = psi_jet(&Jet::variable(u, kk), self.b).derivatives();
            let t = self.derivatives(u, kk);
            for nu in 0..=kk {
                sup_psi[nu] = sup_psi[nu].max(p[nu].abs());
            }
            rows.push((u, p, t));
        }
        let floor: Vec<f64> = (0..=kk).map(|nu| 1e-13 * sup_psi[nu].max(self.magnitude(nu)).max(1.0)).collect();
        let mut achieved = 0.0_f64;
        let mut pass = true;
        for (u, p, t) in &rows {
            let w = u.powi(nn) / (1.0 + u).powi(2 * nn);
            for nu in 0..=kk {
                let diff = (p[nu] - t[nu]).abs();
                max_abs[nu] = max_abs[nu].max(diff);
                let excess = (diff - floor[nu]).max(0.0);
                if excess > 0.0 {
                    achieved = achieved.max(excess / w);
                }
                if diff > eps * w + floor[nu] {
                    pass = false;
                }
            }
        }
        ThetaReport { radius: self.radius, eps, achieved, max_abs_error: max_abs, floor, pass }
    }
}

/// Grows `R` by doubling from 4 until the weighted bound holds, up to `r_max`.
pub fn build_band_limited_theta(
    b: f64,
    order_n: usize,
    order_k: usize,
    eps: f64,
    u_max: f64,
    r_max: f64,
) -> Result<(BandLimitedTheta, ThetaReport)> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let mut radius = 4.0;
    let mut best: Option<ThetaReport> = None;
    while radius <= r_max {
        let theta = BandLimitedTheta::with_radius(b, order_n, order_k, radius, u_max)?;
        let rep = theta.check(eps, u_max);
        if rep.pass {
            return Ok((theta, rep));
        }
        if best.as_ref().is_none_or(|r| rep.achieved < r.achieved) {
            best = Some(rep);
        }
        radius *= 2.0;
    }
    let best = best.expect("at least one radius is tried when r_max ≥ 4");
    Err(Error::ToleranceUnreachable { achieved: best.achieved, radius: best.radius })
}
