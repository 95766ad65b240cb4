use crate::error::{Error, Result};
use crate::linalg::lq;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HardyReport {
    /// `(Σ_j (Σ_{m≥j} b^{-(m-j)γ} a_m)^q)^{1/q}`.
    pub lhs_up: f64,
    /// `(Σ_j (Σ_{m≤j} b^{-(j-m)γ} a_m)^q)^{1/q}`.
    pub lhs_down: f64,
    /// `(Σ_m a_m^q)^{1/q}`.
    pub rhs: f64,
    /// Window-independent constant from [`hardy_constant`].
    pub constant: f64,
    pub pass: bool,
}

/// Bound valid on every window: `Σ_k b^{-kγ}` for `q ≥ 1` (Minkowski) and
/// `(Σ_k b^{-kγq})^{1/q}` for `q < 1` (q-triangle inequality).
pub fn hardy_constant(gamma: f64, q: f64, b: f64) -> f64 {
    if q >= 1.0 {
        1.0 / (1.0 - b.powf(-gamma))
    } else {
        (1.0 / (1.0 - b.powf(-gamma * q))).powf(1.0 / q)
    }
}

/// Both Hardy sums of a nonnegative sequence `a_m`, `m` running over one
/// finite window (index 0 is the window start).
pub fn hardy_check(a: &[f64], gamma: f64, q: f64, b: f64) -> Result<HardyReport> {
    if !(gamma > 0.0) || !(q > 0.0 && q.is_finite()) || !(b > 1.0) {
        return Err(Error::InvalidArgument(format!("need gamma > 0, 0 < q < inf, b > 1; got {gamma}, {q}, {b}")));
    }
    if a.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidArgument("Hardy sums need a nonnegative sequence".into()));
    }
    let n = a.len();
    let up = (0..n).map(|j| (j..n).map(|m| b.powf(-((m - j) as f64) * gamma) * a[m]).sum::<f64>());
    let down = (0..n).map(|j| (0..=j).map(|m| b.powf(-((j - m) as f64) * gamma) * a[m]).sum::<f64>());
    let (lhs_up, lhs_down) = (lq(up, q), lq(down, q));
    let rhs = lq(a.iter().copied(), q);
    let constant = hardy_constant(gamma, q, b);
    let slack = constant * rhs * (1.0 + 1e-12);
    Ok(HardyReport { lhs_up, lhs_down, rhs, constant, pass: lhs_up <= slack && lhs_down <= slack })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn unit_at_window_end_is_a_geometric_partial_sum() {
        let (gamma, q, b) = (0.5, 2.0, 2.0);
        let mut a = vec![0.0; 12];
        a[11] = 1.0;
        let r = hardy_check(&a, gamma, q, b).unwrap();
        let partial: f64 = (0..12).map(|k| b.powf(-(k as f64) * gamma * q)).sum();
        assert!((r.lhs_up.powf(q) - partial).abs() < 1e-13);
        assert!(r.lhs_up.powf(q) <= 1.0 / (1.0 - b.powf(-gamma * q)));
        assert_eq!(r.lhs_down, 1.0);
        assert!(r.pass);
    }

    #[test]
    fn zero_sequence() {
        let r = hardy_check(&[0.0; 5], 1.0, 0.5, 2.0).unwrap();
        assert_eq!((r.lhs_up, r.lhs_down, r.rhs), (0.0, 0.0, 0.0));
        assert!(r.pass);
    }

    #[test]
    fn q_one_rearrangement_bound() {
        let mut rng = crate::linalg::rng(4);
        let a: Vec<f64> = (0..30).map(|_| rng.gen_range(0.0..1.0)).collect();
        let r = hardy_check(&a, 0.3, 1.0, 2.0).unwrap();
        let l1: f64 = a.iter().sum();
        assert!(r.lhs_up <= hardy_constant(0.3, 1.0, 2.0) * l1 * (1.0 + 1e-12));
        assert!(r.pass);
    }

    #[test]
    fn rejects_negative_entries() {
        assert!(hardy_check(&[1.0, -1.0], 1.0, 1.0, 2.0).is_err());
    }
}
