use super::norm::ad_norm;
use super::weights::NetGeometry;
use crate::error::Result;
use crate::linalg::{Mat, Vector};
use crate::seqspace::{seq_norm, Family, Flavor, SpaceParams};
use crate::space::{ModelSpace, NetHierarchy};

#[derive(Clone, Debug, PartialEq)]
pub struct BoundednessReport {
    pub delta: f64,
    /// Per sequence space: `(family, flavor, ‖A‖_δ, max ‖Ah‖ / (‖A‖_δ ‖h‖))`.
    pub entries: Vec<(Family, Flavor, f64, f64)>,
}

impl BoundednessReport {
    pub fn max_ratio(&self) -> f64 {
        self.entries.iter().map(|e| e.3).fold(0.0, f64::max)
    }
}

/// Measures `‖Ah‖_seq / (‖A‖_δ ‖h‖_seq)` over a battery for each of the four
/// sequence spaces built from `params` (the weights follow the flavor).
pub fn boundedness_probe(
    a: &Mat,
    g: &NetGeometry,
    space: &ModelSpace,
    h: &NetHierarchy,
    params: &SpaceParams,
    delta: f64,
    battery: &[Vector],
) -> Result<BoundednessReport> {
    let mut entries = Vec::new();
    for family in [Family::Besov, Family::TriebelLizorkin] {
        if family == Family::TriebelLizorkin && params.p.is_infinite() {
            continue;
        }
        for flavor in [Flavor::Classical, Flavor::Tilde] {
            let pr = params.with_family(family).with_flavor(flavor);
            let norm = ad_norm(a, g, delta, &pr)?.value;
            let mut worst = 0.0_f64;
            for v in battery {
                let nh = seq_norm(v, &pr, h, space)?;
                if nh == 0.0 || norm == 0.0 {
                    continue;
                }
                worst = worst.max(seq_norm(&(a * v), &pr, h, space)? / (norm * nh));
            }
            entries.push((family, flavor, norm, worst));
        }
    }
    Ok(BoundednessReport { delta, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rng, uniform_vec};
    use crate::space::{build_hierarchy, HierarchyMode, ModelSpec};

    #[test]
    fn identity_and_signed_diagonal() {
        let m = ModelSpace::build(&ModelSpec::cycle(32)).unwrap();
        let h = build_hierarchy(&m, 2.0, 0.5, (-3, 1), HierarchyMode::Homogeneous).unwrap();
        let g = NetGeometry::new(&m, &h);
        let p = SpaceParams::new(0.0, 2.0, 2.0, Flavor::Classical, Family::Besov, 1.0, 1.0).unwrap();
        let n = h.len();
        let mut r = rng(31);
        let battery: Vec<Vector> = (0..5).map(|_| uniform_vec(&mut r, n)).collect();
        let id = boundedness_probe(&Mat::identity(n, n), &g, &m, &h, &p, 0.5, &battery).unwrap();
        assert_eq!(id.entries.len(), 4);
        for e in &id.entries {
            assert!((e.3 - 1.0).abs() < 1e-14, "{e:?}");
        }
        let signs = Mat::from_diagonal(&Vector::from_fn(n, |i, _| if i % 3 == 0 { -1.0 } else { 1.0 }));
        let rep = boundedness_probe(&signs, &g, &m, &h, &p, 0.5, &battery).unwrap();
        assert!((rep.entries[2].3 - 1.0).abs() < 1e-14);
    }
}
