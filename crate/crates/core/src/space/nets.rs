use super::ModelSpace;
use crate::error::{Error, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HierarchyMode {
    /// Two-sided level window; functions are taken modulo constants.
    #[default]
    Homogeneous,
    /// Levels `j >= 0` only; level 0 carries the low-pass part.
    Inhomogeneous,
}

/// One level of the hierarchy: a maximal δ-net with its companion partition.
#[derive(Clone, Debug)]
pub struct Net {
    pub level: i32,
    pub delta: f64,
    /// Center point ids, ascending.
    pub centers: Vec<usize>,
    /// For every point, the position in `centers` of its owning center.
    pub owner: Vec<usize>,
    /// Points of each cell `A_ξ`.
    pub members: Vec<Vec<usize>>,
    /// `ℓ(ξ) = b^{-j}`, shared by the whole level.
    pub ell: f64,
    /// `|A_ξ|`.
    pub a_vol: Vec<f64>,
    /// `|B_ξ| = |B(ξ, δ_j)|`.
    pub b_vol: Vec<f64>,
}

/// Greedy maximal δ-net: walk `order` and keep every point at distance
/// at least `delta` from all centers kept so far.
pub fn build_maximal_net(space: &ModelSpace, delta: f64, order: &[usize]) -> Vec<usize> {
    let mut centers: Vec<usize> = Vec::new();
    for &x in order {
        if centers.iter().all(|&c| space.dist[(x, c)] >= delta) {
            centers.push(x);
        }
    }
    centers
}

/// Nearest-center partition, ties going to the lowest center id. Returns the
/// owner position (into `centers`) of every point.
pub fn build_partition(space: &ModelSpace, centers: &[usize], delta: f64) -> Result<Vec<usize>> {
    let mut owner = Vec::with_capacity(space.n());
    for y in 0..space.n() {
        let mut best = 0usize;
        for (k, &c) in centers.iter().enumerate() {
            let (dc, db) = (space.dist[(y, c)], space.dist[(y, centers[best])]);
            if dc < db || (dc == db && c < centers[best]) {
                best = k;
            }
        }
        owner.push(best);
    }
    // B(ξ, δ/2) ⊆ A_ξ ⊆ B(ξ, δ); kept as a guard.
    for y in 0..space.n() {
        let c = centers[owner[y]];
        if space.dist[(y, c)] >= delta {
            return Err(Error::Sandwich { point: y, center: c });
        }
        for (k, &e) in centers.iter().enumerate() {
            if k != owner[y] && space.dist[(y, e)] < delta / 2.0 {
                return Err(Error::Sandwich { point: y, center: e });
            }
        }
    }
    Ok(owner)
}

impl Net {
    pub fn new(space: &ModelSpace, level: i32, delta: f64, ell: f64) -> Result<Self> {
        let order: Vec<usize> = (0..space.n()).collect();
        let centers = build_maximal_net(space, delta, &order);
        let owner = build_partition(space, &centers, delta)?;
        let mut members = vec![Vec::new(); centers.len()];
        for (y, &k) in owner.iter().enumerate() {
            members[k].push(y);
        }
        let a_vol = members.iter().map(|m| m.iter().map(|&y| space.mu[y]).sum()).collect();
        let b_vol = centers.iter().map(|&c| space.ball_volume(c, delta)).collect();
        Ok(Self { level, delta, centers, owner, members, ell, a_vol, b_vol })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NetViolation {
    Separation { level: i32, a: usize, b: usize },
    Maximality { level: i32, point: usize },
    Cover { level: i32, point: usize },
    SandwichInner { level: i32, center: usize, point: usize },
    SandwichOuter { level: i32, center: usize, point: usize },
}

/// Brute-force audit of separation, maximality, disjoint cover and sandwich.
pub fn check_net(space: &ModelSpace, net: &Net) -> Vec<NetViolation> {
    let mut out = Vec::new();
    let lv = net.level;
    for (i, &a) in net.centers.iter().enumerate() {
        for &b in &net.centers[i + 1..] {
            if space.dist[(a, b)] < net.delta {
                out.push(NetViolation::Separation { level: lv, a, b });
            }
        }
    }
    let mut seen = vec![0usize; space.n()];
    for m in &net.members {
        for &y in m {
            seen[y] += 1;
        }
    }
    for y in 0..space.n() {
        if !net.centers.iter().any(|&c| space.dist[(y, c)] < net.delta) {
            out.push(NetViolation::Maximality { level: lv, point: y });
        }
        if seen[y] != 1 {
            out.push(NetViolation::Cover { level: lv, point: y });
        }
    }
    for (k, &c) in net.centers.iter().enumerate() {
        for y in 0..space.n() {
            let inside = net.members[k].contains(&y);
            let d = space.dist[(c, y)];
            if d < net.delta / 2.0 && !inside {
                out.push(NetViolation::SandwichInner { level: lv, center: c, point: y });
            }
            if inside && d >= net.delta {
                out.push(NetViolation::SandwichOuter { level: lv, center: c, point: y });
            }
        }
    }
    out
}

/// Nets for every level of a window, with `δ_j = γ b^{-j-2}` and `ℓ = b^{-j}`.
#[derive(Clone, Debug)]
pub struct NetHierarchy {
    pub b: f64,
    pub gamma: f64,
    pub mode: HierarchyMode,
    pub levels: Vec<Net>,
    offsets: Vec<usize>,
    level_of: Vec<usize>,
}

pub fn build_hierarchy(
    space: &ModelSpace,
    b: f64,
    gamma: f64,
    window: (i32, i32),
    mode: HierarchyMode,
) -> Result<NetHierarchy> {
    if !(b > 1.0) {
        return Err(Error::InvalidArgument(format!("scale base must exceed 1, got {b}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidArgument(format!("gamma must lie in (0,1), got {gamma}")));
    }
    let (mut lo, hi) = window;
    if mode == HierarchyMode::Inhomogeneous {
        lo = lo.max(0);
    }
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty level window [{lo}, {hi}]")));
    }
    let mut levels = Vec::new();
    for j in lo..=hi {
        let delta = gamma * b.powi(-j - 2);
        levels.push(Net::new(space, j, delta, b.powi(-j))?);
    }
    let mut offsets = vec![0];
    let mut level_of = Vec::new();
    for (k, net) in levels.iter().enumerate() {
        offsets.push(offsets[k] + net.len());
        level_of.extend(std::iter::repeat_n(k, net.len()));
    }
    Ok(NetHierarchy { b, gamma, mode, levels, offsets, level_of })
}

impl NetHierarchy {
    /// Total number of centers across levels.
    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn window(&self) -> (i32, i32) {
        (self.levels[0].level, self.levels.last().unwrap().level)
    }

    /// Global index range of level position `k`.
    pub fn range(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn level_index(&self, xi: usize) -> usize {
        self.level_of[xi]
    }

    pub fn level(&self, xi: usize) -> i32 {
        self.levels[self.level_of[xi]].level
    }

    fn local(&self, xi: usize) -> (&Net, usize) {
        let k = self.level_of[xi];
        (&self.levels[k], xi - self.offsets[k])
    }

    pub fn point(&self, xi: usize) -> usize {
        let (net, i) = self.local(xi);
        net.centers[i]
    }

    pub fn ell(&self, xi: usize) -> f64 {
        self.local(xi).0.ell
    }

    pub fn delta(&self, xi: usize) -> f64 {
        self.local(xi).0.delta
    }

    pub fn a_vol(&self, xi: usize) -> f64 {
        let (net, i) = self.local(xi);
        net.a_vol[i]
    }

    pub fn b_vol(&self, xi: usize) -> f64 {
        let (net, i) = self.local(xi);
        net.b_vol[i]
    }

    pub fn members(&self, xi: usize) -> &[usize] {
        let (net, i) = self.local(xi);
        &net.members[i]
    }

    pub fn violations(&self, space: &ModelSpace) -> Vec<NetViolation> {
        self.levels.iter().flat_map(|n| check_net(space, n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ModelSpec;

    fn brute_maximal(space: &ModelSpace, centers: &[usize], delta: f64) -> bool {
        // no point outside the net can be added without breaking separation
        (0..space.n())
            .filter(|x| !centers.contains(x))
            .all(|x| centers.iter().any(|&c| space.dist[(x, c)] < delta))
    }

    #[test]
    fn path_net_every_other_point() {
        let m = ModelSpace::build(&ModelSpec::path(10)).unwrap();
        let order: Vec<usize> = (0..10).collect();
        let net = build_maximal_net(&m, 2.0, &order);
        assert_eq!(net, vec![0, 2, 4, 6, 8]);
        assert!(brute_maximal(&m, &net, 2.0));
        let owner = build_partition(&m, &net, 2.0).unwrap();
        assert_eq!(owner[1], 0, "tie between 0 and 2 goes low");
        assert_eq!(owner[9], 4);
    }

    #[test]
    fn small_delta_keeps_every_point() {
        let m = ModelSpace::build(&ModelSpec::cycle(8)).unwrap();
        let order: Vec<usize> = (0..8).collect();
        assert_eq!(build_maximal_net(&m, 1.0, &order), order);
    }

    #[test]
    fn cycle_net_with_delta_three() {
        let m = ModelSpace::build(&ModelSpec::cycle(8)).unwrap();
        let order: Vec<usize> = (0..8).collect();
        let net = build_maximal_net(&m, 3.0, &order);
        assert_eq!(net, vec![0, 3]);
        assert!(brute_maximal(&m, &net, 3.0));
        let owner = build_partition(&m, &net, 3.0).unwrap();
        let a0: Vec<usize> = (0..8).filter(|&y| owner[y] == 0).collect();
        let a3: Vec<usize> = (0..8).filter(|&y| owner[y] == 1).collect();
        // point 6 is at distance 2 from 0 and 3 from 3
        assert_eq!(a0, vec![0, 1, 6, 7]);
        assert_eq!(a3, vec![2, 3, 4, 5]);
        let n = Net::new(&m, 0, 3.0, 1.0).unwrap();
        assert!(check_net(&m, &n).is_empty());
    }

    #[test]
    fn same_order_same_net() {
        let m = ModelSpace::build(&ModelSpec::torus(6)).unwrap();
        let order: Vec<usize> = (0..36).rev().collect();
        assert_eq!(build_maximal_net(&m, 2.5, &order), build_maximal_net(&m, 2.5, &order));
    }

    #[test]
    fn hierarchy_levels_are_nested_in_delta() {
        let m = ModelSpace::build(&ModelSpec::cycle(32)).unwrap();
        let h = build_hierarchy(&m, 2.0, 0.5, (-3, 1), HierarchyMode::Homogeneous).unwrap();
        assert_eq!(h.levels.len(), 5);
        for w in h.levels.windows(2) {
            assert!((w[0].delta / w[1].delta - 2.0).abs() < 1e-14);
        }
        assert!(h.violations(&m).is_empty());
        let xi = h.range(0).start;
        assert_eq!(h.level(xi), -3);
        assert_eq!(h.ell(xi), 8.0);
        let inh = build_hierarchy(&m, 2.0, 0.5, (-3, 1), HierarchyMode::Inhomogeneous).unwrap();
        assert_eq!(inh.window(), (0, 1));
    }
}
