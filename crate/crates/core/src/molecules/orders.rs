use crate::seqspace::{Flavor, SpaceParams};

/// Integer orders of the molecule conditions and the decay threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoleculeOrders {
    pub flavor: Flavor,
    /// `𝒥`.
    pub j_index: f64,
    /// Order of the `L^K` factorization; `None` where the condition is void.
    pub k: Option<u32>,
    /// Smoothness order; `None` for `s < 0`.
    pub n: Option<u32>,
    /// The decay exponent `𝓜` must exceed this (`𝒥`, or `𝒥 + |s|` for tilde).
    pub m_threshold: f64,
    /// Upper smoothness limit for the `K` conditions: `𝒥` or `𝒥 d / d*`.
    pub s_limit: f64,
}

fn floor_half_plus_one(x: f64) -> u32 {
    ((x / 2.0).floor() + 1.0).max(0.0) as u32
}

/// `K = ⌊(𝒥−s)/2⌋+1` for `s ≤ 𝒥` and `N = ⌊s/2⌋+1` for `s ≥ 0`; the tilde
/// flavor uses `s ≤ 𝒥d/d*` and `K = ⌊(𝒥 − s d*/d)/2⌋+1` when `s ≥ 0`.
pub fn compute_orders(params: &SpaceParams) -> MoleculeOrders {
    let (s, j) = (params.s, params.J());
    let n = (s >= 0.0).then(|| floor_half_plus_one(s));
    match params.flavor {
        Flavor::Classical => MoleculeOrders {
            flavor: Flavor::Classical,
            j_index: j,
            k: (s <= j).then(|| floor_half_plus_one(j - s)),
            n,
            m_threshold: j,
            s_limit: j,
        },
        Flavor::Tilde => {
            let limit = j * params.d / params.dstar;
            let k = (s <= limit).then(|| {
                if s < 0.0 {
                    floor_half_plus_one(j - s)
                } else {
                    floor_half_plus_one(j - s * params.dstar / params.d)
                }
            });
            MoleculeOrders { flavor: Flavor::Tilde, j_index: j, k, n, m_threshold: j + s.abs(), s_limit: limit }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqspace::Family;

    fn pr(s: f64, p: f64, q: f64, fl: Flavor, d: f64, dstar: f64) -> SpaceParams {
        SpaceParams::new(s, p, q, fl, Family::TriebelLizorkin, d, dstar).unwrap()
    }

    #[test]
    fn classical_orders() {
        let o = compute_orders(&pr(0.0, 2.0, 2.0, Flavor::Classical, 1.0, 1.0));
        assert_eq!((o.j_index, o.k, o.n), (1.0, Some(1), Some(1)));
        let o = compute_orders(&pr(3.0, 2.0, 2.0, Flavor::Classical, 1.0, 1.0));
        assert_eq!((o.k, o.n), (None, Some(2)));
        let o = compute_orders(&pr(-1.0, 2.0, 2.0, Flavor::Classical, 1.0, 1.0));
        assert_eq!((o.k, o.n), (Some(2), None));
        let o = compute_orders(&pr(0.5, 0.5, 2.0, Flavor::Classical, 1.5, 1.0));
        assert_eq!(o.j_index, 3.0);
        assert_eq!(o.k, Some(2));
    }

    #[test]
    fn tilde_branches_agree_at_zero() {
        let (d, ds) = (1.585, 1.0);
        let at0 = compute_orders(&pr(0.0, 1.0, 1.0, Flavor::Tilde, d, ds));
        assert_eq!(at0.k, Some(floor_half_plus_one(d)));
        let neg = compute_orders(&pr(-1e-12, 1.0, 1.0, Flavor::Tilde, d, ds));
        assert_eq!(neg.k, at0.k);
        let pos = compute_orders(&pr(1.0, 1.0, 1.0, Flavor::Tilde, d, ds));
        assert_eq!(pos.k, Some(floor_half_plus_one(d - ds / d)));
        assert_eq!(pos.m_threshold, d + 1.0);
        let void = compute_orders(&pr(3.0, 1.0, 1.0, Flavor::Tilde, d, ds));
        assert_eq!(void.k, None);
    }
}
