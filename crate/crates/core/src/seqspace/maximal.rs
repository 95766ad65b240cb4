use crate::error::{Error, Result};
use crate::linalg::{lq, norm_p, Vector};
use crate::space::ModelSpace;

/// `M_t f(x) = sup_{B ∋ x} (|B|^{-1} ∫_B |f|^t dμ)^{1/t}`, the sup taken over
/// every ball of the model (each center, each distinct radius).
pub fn maximal_mt(f: &Vector, t: f64, space: &ModelSpace) -> Result<Vector> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("maximal exponent must be positive, got {t}")));
    }
    let n = space.n();
    let ft: Vec<f64> = f.iter().map(|v| v.abs().powf(t)).collect();
    let mut best = vec![0.0_f64; n];
    let mut order: Vec<usize> = (0..n).collect();
    for y in 0..n {
        order.sort_by(|&a, &b| space.dist[(y, a)].total_cmp(&space.dist[(y, b)]));
        // balls around y are the prefixes ending at a distance jump
        let mut avgs = Vec::new();
        let (mut num, mut den) = (0.0, 0.0);
        for (k, &x) in order.iter().enumerate() {
            num += ft[x] * space.mu[x];
            den += space.mu[x];
            if k + 1 == n || space.dist[(y, order[k + 1])] > space.dist[(y, x)] {
                avgs.push((k, num / den));
            }
        }
        // x lies in every prefix that reaches its rank
        let mut suffix = 0.0_f64;
        let mut g = avgs.len();
        for k in (0..n).rev() {
            while g > 0 && avgs[g - 1].0 >= k {
                g -= 1;
                suffix = suffix.max(avgs[g].1);
            }
            let x = order[k];
            best[x] = best[x].max(suffix);
        }
    }
    Ok(Vector::from_iterator(n, best.into_iter().map(|v| v.powf(1.0 / t))))
}

/// Ratio of the two sides of the vector-valued maximal inequality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeRatio {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, or 0 when both sides vanish.
    pub ratio: f64,
    pub degenerate: bool,
}

/// `‖(Σ_ν |M_t f_ν|^q)^{1/q}‖_p / ‖(Σ_ν |f_ν|^q)^{1/q}‖_p` for `0 < t < min{p, q}`.
pub fn fs_maximal_probe(family: &[Vector], p: f64, q: f64, t: f64, space: &ModelSpace) -> Result<ProbeRatio> {
    if !(t > 0.0 && t < p.min(q)) || p.is_infinite() {
        return Err(Error::InvalidArgument(format!("need 0 < t < min(p, q) and p < inf, got t={t}, p={p}, q={q}")));
    }
    let n = space.n();
    let maxed: Vec<Vector> = family.iter().map(|f| maximal_mt(f, t, space)).collect::<Result<_>>()?;
    let side = |fs: &[Vector]| {
        let g = Vector::from_iterator(n, (0..n).map(|x| lq(fs.iter().map(|f| f[x].abs()), q)));
        norm_p(&g, &space.mu, p)
    };
    let (lhs, rhs) = (side(&maxed), side(family));
    if rhs == 0.0 {
        return Ok(ProbeRatio { lhs, rhs, ratio: 0.0, degenerate: true });
    }
    Ok(ProbeRatio { lhs, rhs, ratio: lhs / rhs, degenerate: false })
}
