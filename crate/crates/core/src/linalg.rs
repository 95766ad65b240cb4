//! Small dense helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Mat = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Deterministic generator used by every battery.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn inner(f: &Vector, g: &Vector, mu: &Vector) -> f64 {
    f.iter().zip(g.iter()).zip(mu.iter()).map(|((a, b), m)| a * b * m).sum()
}

pub fn norm2(f: &Vector, mu: &Vector) -> f64 {
    inner(f, f, mu).max(0.0).sqrt()
}

/// L^p norm against the point measure; `p = inf` gives the sup norm.
pub fn norm_p(f: &Vector, mu: &Vector, p: f64) -> f64 {
    if p.is_infinite() {
        return f.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    }
    let s: f64 = f.iter().zip(mu.iter()).map(|(v, m)| v.abs().powf(p) * m).sum();
    s.powf(1.0 / p)
}

/// ℓ^q combination of nonnegative terms with the sup convention at q = inf.
pub fn lq(terms: impl IntoIterator<Item = f64>, q: f64) -> f64 {
    if q.is_infinite() {
        terms.into_iter().fold(0.0_f64, f64::max)
    } else {
        let s: f64 = terms.into_iter().map(|t| t.powf(q)).sum();
        s.powf(1.0 / q)
    }
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0_f64, |a, v| a.max(v.abs()))
}

pub fn uniform_vec(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::from_iterator(n, (0..n).map(|_| rng.gen_range(-1.0..1.0)))
}

/// `m * diag(d)` without materialising the diagonal.
pub fn scale_cols(m: &Mat, d: &Vector) -> Mat {
    let mut out = m.clone();
    for (j, mut col) in out.column_iter_mut().enumerate() {
        col *= d[j];
    }
    out
}

pub fn scale_rows(m: &Mat, d: &Vector) -> Mat {
    let mut out = m.clone();
    for (i, mut row) in out.row_iter_mut().enumerate() {
        row *= d[i];
    }
    out
}
