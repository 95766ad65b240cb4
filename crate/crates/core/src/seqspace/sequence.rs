use super::params::{Family, Flavor, SpaceParams};
use crate::error::{Error, Result};
use crate::linalg::{lq, norm_p, Vector};
use crate::space::{ModelSpace, NetHierarchy};

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

fn check_len(a: &Vector, h: &NetHierarchy) -> Result<()> {
    if a.len() != h.len() {
        return Err(Error::IndexMismatch(format!("sequence has {} entries, hierarchy has {}", a.len(), h.len())));
    }
    Ok(())
}

/// Sequence norm of `a` over the hierarchy: `ḃ`/`b̃` or `ḟ`/`f̃` by `params`.
///
/// The Besov forms weight by `|B(ξ, b^{-j})|`, the Triebel–Lizorkin forms by
/// the cells `A_ξ` through `1̃_{A_ξ} = |A_ξ|^{-1/2} 1_{A_ξ}`.
pub fn seq_norm(a: &Vector, params: &SpaceParams, h: &NetHierarchy, space: &ModelSpace) -> Result<f64> {
    check_len(a, h)?;
    let (s, p, q, d) = (params.s, params.p, params.q, params.d);
    match params.family {
        Family::Besov => {
            let mut per_level = Vec::with_capacity(h.levels.len());
            for (k, net) in h.levels.iter().enumerate() {
                let lw = match params.flavor {
                    Flavor::Classical => h.b.powf(net.level as f64 * s),
                    Flavor::Tilde => 1.0,
                };
                let terms = h.range(k).map(|xi| {
                    let vol = space.ball_volume(h.point(xi), net.ell);
                    let e = match params.flavor {
                        Flavor::Classical => inv(p) - 0.5,
                        Flavor::Tilde => -s / d + inv(p) - 0.5,
                    };
                    vol.powf(e) * a[xi].abs()
                });
                per_level.push(lw * lq(terms, p));
            }
            Ok(lq(per_level, q))
        }
        Family::TriebelLizorkin => {
            if p.is_infinite() {
                return Err(Error::InvalidArgument("Triebel-Lizorkin norm needs p < inf".into()));
            }
            let n = space.n();
            let mut g = vec![Vec::with_capacity(h.levels.len()); n];
            for (k, net) in h.levels.iter().enumerate() {
                for (i, members) in net.members.iter().enumerate() {
                    let xi = h.range(k).start + i;
                    let av = net.a_vol[i];
                    let w = match params.flavor {
                        Flavor::Classical => h.b.powf(net.level as f64 * s),
                        Flavor::Tilde => av.powf(-s / d),
                    };
                    let v = w * a[xi].abs() * av.powf(-0.5);
                    for &x in members {
                        g[x].push(v);
                    }
                }
            }
            let g = Vector::from_iterator(n, g.into_iter().map(|t| lq(t, q)));
            Ok(norm_p(&g, &space.mu, p))
        }
    }
}

/// For `p = q`, the `ḟ` norm written as a Besov-type sum with `|A_ξ|` in the
/// place of `|B(ξ, b^{-j})|`; agrees with [`seq_norm`] exactly.
pub fn seq_norm_f_via_b(a: &Vector, params: &SpaceParams, h: &NetHierarchy) -> Result<f64> {
    check_len(a, h)?;
    if params.p != params.q || params.p.is_infinite() {
        return Err(Error::InvalidArgument("needs finite p = q".into()));
    }
    let (s, p, d) = (params.s, params.p, params.d);
    let terms = (0..h.len()).map(|xi| {
        let av = h.a_vol(xi);
        let w = match params.flavor {
            Flavor::Classical => h.b.powf(h.level(xi) as f64 * s),
            Flavor::Tilde => av.powf(-s / d),
        };
        w * av.powf(1.0 / p - 0.5) * a[xi].abs()
    });
    Ok(lq(terms, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rng, uniform_vec};
    use crate::space::{build_hierarchy, HierarchyMode, ModelSpec};

    fn setup() -> (ModelSpace, NetHierarchy) {
        let m = ModelSpace::build(&ModelSpec::cycle(32)).unwrap();
        let h = build_hierarchy(&m, 2.0, 0.5, (-3, 1), HierarchyMode::Homogeneous).unwrap();
        (m, h)
    }

    fn pr(s: f64, p: f64, q: f64, fl: Flavor, fam: Family) -> SpaceParams {
        SpaceParams::new(s, p, q, fl, fam, 1.0, 1.0).unwrap()
    }

    #[test]
    fn unit_sequence_values() {
        let (m, h) = setup();
        let xi = h.range(2).start + 1;
        let j = h.level(xi) as f64;
        let mut a = Vector::zeros(h.len());
        a[xi] = 1.0;
        let (s, p, q) = (0.7, 1.5, 3.0);
        let f = seq_norm(&a, &pr(s, p, q, Flavor::Classical, Family::TriebelLizorkin), &h, &m).unwrap();
        assert!((f - 2f64.powf(j * s) * h.a_vol(xi).powf(1.0 / p - 0.5)).abs() < 1e-12);
        let bv = m.ball_volume(h.point(xi), h.ell(xi));
        let b = seq_norm(&a, &pr(s, p, q, Flavor::Classical, Family::Besov), &h, &m).unwrap();
        assert!((b - 2f64.powf(j * s) * bv.powf(1.0 / p - 0.5)).abs() < 1e-12);
        let bt = seq_norm(&a, &pr(s, p, q, Flavor::Tilde, Family::Besov), &h, &m).unwrap();
        assert!((bt - bv.powf(-s + 1.0 / p - 0.5)).abs() < 1e-12);
        let ft = seq_norm(&a, &pr(s, p, q, Flavor::Tilde, Family::TriebelLizorkin), &h, &m).unwrap();
        assert!((ft - h.a_vol(xi).powf(-s + 1.0 / p - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn f_norm_two_routes_agree() {
        let (m, h) = setup();
        let a = uniform_vec(&mut rng(5), h.len());
        for fl in [Flavor::Classical, Flavor::Tilde] {
            let par = pr(-0.5, 1.5, 1.5, fl, Family::TriebelLizorkin);
            let x = seq_norm(&a, &par, &h, &m).unwrap();
            let y = seq_norm_f_via_b(&a, &par, &h).unwrap();
            assert!((x - y).abs() <= 1e-12 * x);
        }
    }

    #[test]
    fn sup_conventions() {
        let (m, h) = setup();
        let a = uniform_vec(&mut rng(6), h.len());
        let par = pr(0.0, f64::INFINITY, f64::INFINITY, Flavor::Classical, Family::Besov);
        let v = seq_norm(&a, &par, &h, &m).unwrap();
        let brute = (0..h.len()).map(|xi| m.ball_volume(h.point(xi), h.ell(xi)).powf(-0.5) * a[xi].abs()).fold(0.0, f64::max);
        assert!((v - brute).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        let (m, h) = setup();
        let par = pr(0.0, 2.0, 2.0, Flavor::Classical, Family::Besov);
        assert!(matches!(seq_norm(&Vector::zeros(3), &par, &h, &m), Err(Error::IndexMismatch(_))));
    }
}
