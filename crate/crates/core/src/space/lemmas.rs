use super::{DoublingProfile, ModelSpace};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct NetCountReport {
    pub lhs_max: usize,
    pub argmax: usize,
    pub rhs: f64,
    pub pass: bool,
}

/// `#(X ∩ B(x,δ*)) ≤ c0 6^d (δ*/δ)^d`, checked at every point.
pub fn check_net_count(
    space: &ModelSpace,
    centers: &[usize],
    delta: f64,
    delta_star: f64,
    profile: &DoublingProfile,
) -> Result<NetCountReport> {
    if !(delta > 0.0 && delta <= delta_star) {
        return Err(Error::Hypothesis(format!("need 0 < δ ≤ δ*, got δ={delta}, δ*={delta_star}")));
    }
    let rhs = profile.c0 * 6f64.powf(profile.d) * (delta_star / delta).powf(profile.d);
    let (mut lhs_max, mut argmax) = (0, 0);
    for x in 0..space.n() {
        let c = centers.iter().filter(|&&c| space.dist[(x, c)] < delta_star).count();
        if c > lhs_max {
            lhs_max = c;
            argmax = x;
        }
    }
    Ok(NetCountReport { lhs_max, argmax, rhs, pass: lhs_max as f64 <= rhs })
}

#[derive(Clone, Debug)]
pub struct OneSidedSumReport {
    pub lhs_max: f64,
    pub rhs: f64,
    pub pass: bool,
}

fn one_sided_constant(profile: &DoublingProfile, sigma: f64) -> f64 {
    let d = profile.d;
    profile.c0 * 6f64.powf(d) * 2f64.powf(sigma) / (1.0 - 2f64.powf(d - sigma))
}

/// `Σ_ξ (1+ρ(x,ξ)/δ*)^{-σ} ≤ c0 6^d 2^σ/(1-2^{d-σ}) (δ*/δ)^d` at every point.
pub fn check_one_sided_sum(
    space: &ModelSpace,
    centers: &[usize],
    delta: f64,
    delta_star: f64,
    sigma: f64,
    profile: &DoublingProfile,
) -> Result<OneSidedSumReport> {
    if !(sigma > profile.d) {
        return Err(Error::Hypothesis(format!("σ = {sigma} must exceed d = {}", profile.d)));
    }
    if !(delta > 0.0 && delta <= delta_star) {
        return Err(Error::Hypothesis("need 0 < δ ≤ δ*".into()));
    }
    let rhs = one_sided_constant(profile, sigma) * (delta_star / delta).powf(profile.d);
    let lhs_max = (0..space.n())
        .map(|x| centers.iter().map(|&c| (1.0 + space.dist[(x, c)] / delta_star).powf(-sigma)).sum::<f64>())
        .fold(0.0, f64::max);
    Ok(OneSidedSumReport { lhs_max, rhs, pass: lhs_max <= rhs })
}

#[derive(Clone, Debug)]
pub struct DiscreteSumReport {
    /// Worst value of lhs / [(δ1/δ)^d (1+ρ(x,y)/δ2)^{-σ}], i.e. the measured constant.
    pub ratio: f64,
    pub argmax: (usize, usize),
    /// Constant obtained by running the splitting argument with the explicit
    /// one-sided bound: `(2^σ + 4^σ)·c0 6^d 2^σ/(1-2^{d-σ})`.
    pub explicit: f64,
    pub pass: bool,
}

/// Two-point discrete sum over a δ-net, exhaustive in `(x, y)`.
pub fn check_discrete_sum(
    space: &ModelSpace,
    centers: &[usize],
    delta: f64,
    sigma: f64,
    delta1: f64,
    delta2: f64,
    profile: &DoublingProfile,
) -> Result<DiscreteSumReport> {
    if !(sigma > profile.d) {
        return Err(Error::Hypothesis(format!("σ = {sigma} must exceed d = {}", profile.d)));
    }
    if !(delta > 0.0 && delta <= delta1 && delta1 <= delta2) {
        return Err(Error::Hypothesis("need 0 < δ ≤ δ1 ≤ δ2".into()));
    }
    let n = space.n();
    // a[x][k] = (1+ρ(x,ξ_k)/δ1)^{-σ}, b[y][k] likewise with δ2
    let a: Vec<Vec<f64>> = (0..n)
        .map(|x| centers.iter().map(|&c| (1.0 + space.dist[(x, c)] / delta1).powf(-sigma)).collect())
        .collect();
    let bt: Vec<Vec<f64>> = (0..n)
        .map(|y| centers.iter().map(|&c| (1.0 + space.dist[(y, c)] / delta2).powf(-sigma)).collect())
        .collect();
    let scale = (delta1 / delta).powf(profile.d);
    let mut ratio = 0.0;
    let mut argmax = (0, 0);
    for x in 0..n {
        for y in 0..n {
            let lhs: f64 = a[x].iter().zip(&bt[y]).map(|(p, q)| p * q).sum();
            let r = lhs * (1.0 + space.dist[(x, y)] / delta2).powf(sigma) / scale;
            if r > ratio {
                ratio = r;
                argmax = (x, y);
            }
        }
    }
    let explicit = (2f64.powf(sigma) + 4f64.powf(sigma)) * one_sided_constant(profile, sigma);
    Ok(DiscreteSumReport { ratio, argmax, explicit, pass: ratio <= explicit })
}

#[derive(Clone, Debug)]
pub struct PeetreReport {
    /// Measured constant in `Σ_u (1+ρ(x,u)/δ)^{-σ1} μ(u) ≤ c |B(x,δ)|` (δ = δ1).
    pub single: f64,
    /// Shell-counting bound `1 + c0 2^d/(1-2^{d-σ1})` for the single sum.
    pub single_explicit: f64,
    /// Measured constant of the two-term bound.
    pub two_term: f64,
    /// Measured constants of the two one-term bounds with `δmax = δ1 ∨ δ2`.
    pub one_term_x: f64,
    pub one_term_y: f64,
    pub pass: bool,
}

/// Discrete Peetre-type integrals (∫dμ → Σμ), exhaustive in `(x, y)`.
pub fn check_peetre_integrals(
    space: &ModelSpace,
    sigma1: f64,
    sigma2: f64,
    delta1: f64,
    delta2: f64,
    profile: &DoublingProfile,
) -> Result<PeetreReport> {
    let d = profile.d;
    if !(sigma1 > d && sigma2 > d) {
        return Err(Error::Hypothesis(format!("exponents ({sigma1}, {sigma2}) must exceed d = {d}")));
    }
    if !(delta1 > 0.0 && delta2 > 0.0) {
        return Err(Error::Hypothesis("scales must be positive".into()));
    }
    let n = space.n();
    let mu = &space.mu;
    let f1: Vec<Vec<f64>> = (0..n)
        .map(|x| (0..n).map(|u| (1.0 + space.dist[(x, u)] / delta1).powf(-sigma1)).collect())
        .collect();
    let f2: Vec<Vec<f64>> = (0..n)
        .map(|y| (0..n).map(|u| (1.0 + space.dist[(y, u)] / delta2).powf(-sigma2)).collect())
        .collect();
    let mut single = 0.0_f64;
    for x in 0..n {
        let s: f64 = (0..n).map(|u| f1[x][u] * mu[u]).sum();
        single = single.max(s / space.ball_volume(x, delta1));
    }
    let dmax = delta1.max(delta2);
    let (mut two_term, mut one_x, mut one_y) = (0.0_f64, 0.0_f64, 0.0_f64);
    for x in 0..n {
        let bx = space.ball_volume(x, delta1);
        for y in 0..n {
            let by = space.ball_volume(y, delta2);
            let i: f64 = (0..n).map(|u| f1[x][u] * f2[y][u] * mu[u]).sum();
            let rho = space.dist[(x, y)];
            let t = bx / (1.0 + rho / delta2).powf(sigma2) + by / (1.0 + rho / delta1).powf(sigma1);
            two_term = two_term.max(i / t);
            let ex = ((sigma1 - d).min(sigma2)).max(0.0);
            let ey = (sigma1.min(sigma2 - d)).max(0.0);
            one_x = one_x.max(i * (1.0 + rho / dmax).powf(ex) / bx);
            one_y = one_y.max(i * (1.0 + rho / dmax).powf(ey) / by);
        }
    }
    let single_explicit = 1.0 + profile.c0 * 2f64.powf(d) / (1.0 - 2f64.powf(d - sigma1));
    let pass = single <= single_explicit && two_term.is_finite() && one_x.is_finite() && one_y.is_finite();
    Ok(PeetreReport { single, single_explicit, two_term, one_term_x: one_x, one_term_y: one_y, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{build_maximal_net, measure_doubling, ModelSpec};

    fn setup(spec: ModelSpec) -> (ModelSpace, DoublingProfile) {
        let m = ModelSpace::build(&spec).unwrap();
        let p = DoublingProfile::full(&m).unwrap();
        (m, p)
    }

    #[test]
    fn cycle8_full_net_count() {
        let (m, p) = setup(ModelSpec::cycle(8));
        let all: Vec<usize> = (0..8).collect();
        let r = check_net_count(&m, &all, 1.0, 2.0, &p).unwrap();
        assert_eq!(r.lhs_max, 3);
        assert!(r.pass && r.rhs >= 3.0);
        let same = check_net_count(&m, &all, 1.0, 1.0, &p).unwrap();
        assert!(same.lhs_max >= 1 && same.rhs >= 6.0);
    }

    #[test]
    fn path10_net_count_enumeration() {
        let (m, p) = setup(ModelSpec::path(10));
        let net = vec![0, 2, 4, 6, 8];
        let r = check_net_count(&m, &net, 2.0, 4.0, &p).unwrap();
        // x = 3 sees {0,2,4,6}; x = 4 only {2,4,6} since the ball is open
        let brute: Vec<usize> = (0..10)
            .map(|x| net.iter().filter(|&&c| (x as i64 - c as i64).abs() < 4).count())
            .collect();
        assert_eq!(r.lhs_max, *brute.iter().max().unwrap());
        assert_eq!(r.lhs_max, 4);
        assert_eq!(brute[4], 3);
        assert!(r.pass);
    }

    #[test]
    fn one_sided_sum_on_cycle() {
        let (m, p) = setup(ModelSpec::cycle(64));
        let order: Vec<usize> = (0..64).collect();
        let net = build_maximal_net(&m, 4.0, &order);
        let r = check_one_sided_sum(&m, &net, 4.0, 8.0, p.d + 1.0, &p).unwrap();
        assert!(r.pass);
        assert!(check_one_sided_sum(&m, &net, 4.0, 8.0, p.d, &p).is_err());
    }

    #[test]
    fn discrete_sum_single_center_diagonal() {
        let (m, p) = setup(ModelSpec::cycle(8));
        let r = check_discrete_sum(&m, &[0], 1.0, p.d + 0.5, 1.0, 1.0, &p).unwrap();
        // x = y = 0 gives lhs = 1 against a right side of 1
        assert!(r.ratio >= 1.0 && r.pass);
    }

    #[test]
    fn discrete_sum_cycle64_exhaustive() {
        let (m, p) = setup(ModelSpec::cycle(64));
        let all: Vec<usize> = (0..64).collect();
        let sigma = 2.0;
        let r = check_discrete_sum(&m, &all, 1.0, sigma, 2.0, 2.0, &p).unwrap();
        assert!(r.pass, "ratio {} vs {}", r.ratio, r.explicit);
        assert!(check_discrete_sum(&m, &all, 1.0, 1.0, 2.0, 2.0, &p).is_err());
    }

    #[test]
    fn peetre_large_scale_is_trivial() {
        let (m, p) = setup(ModelSpec::cycle(16));
        let r = check_peetre_integrals(&m, 3.0, 3.0, 100.0, 100.0, &p).unwrap();
        assert!(r.single <= 1.0 + 1e-12);
    }

    #[test]
    fn peetre_cycle32() {
        let m = ModelSpace::build(&ModelSpec::cycle(32)).unwrap();
        let p = measure_doubling(&m, (1.0, 16.0)).unwrap();
        let r = check_peetre_integrals(&m, 2.0, 2.0, 2.0, 2.0, &p).unwrap();
        assert!(r.pass && r.two_term.is_finite());
        // equal scales at x = y reduce the product sum to the single sum
        let x = 5;
        let single: f64 = (0..32).map(|u| (1.0 + m.dist[(x, u)] / 2.0).powf(-4.0)).sum();
        let paired: f64 = (0..32).map(|u| (1.0 + m.dist[(x, u)] / 2.0).powf(-2.0).powi(2)).sum();
        assert!((single - paired).abs() < 1e-12);
    }
}
