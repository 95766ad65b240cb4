//! Finite metric-measure models, doubling measurement, maximal nets and the
//! counting/summation lemmas that the frame machinery relies on.

mod doubling;
mod lemmas;
mod nets;

pub use doubling::{measure_doubling, DoublingProfile};
pub use lemmas::{
    check_discrete_sum, check_net_count, check_one_sided_sum, check_peetre_integrals,
    DiscreteSumReport, NetCountReport, OneSidedSumReport, PeetreReport,
};
pub use nets::{
    build_hierarchy, build_maximal_net, build_partition, check_net, HierarchyMode, Net,
    NetHierarchy, NetViolation,
};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Cycle,
    /// n×n grid with periodic boundary.
    Torus,
    Path,
    /// Weighted tree given by an edge list of `(u, v, length)`.
    Tree,
}

/// Declarative description of a bundled model.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    #[serde(default = "default_scale")]
    pub l_scale: f64,
    #[serde(default)]
    pub mu: Option<Vec<f64>>,
    #[serde(default)]
    pub edges: Option<Vec<(usize, usize, f64)>>,
}

fn default_scale() -> f64 {
    1.0
}

impl ModelSpec {
    pub fn cycle(n: usize) -> Self {
        Self { kind: ModelKind::Cycle, n, l_scale: 1.0, mu: None, edges: None }
    }
    pub fn torus(n: usize) -> Self {
        Self { kind: ModelKind::Torus, n, l_scale: 1.0, mu: None, edges: None }
    }
    pub fn path(n: usize) -> Self {
        Self { kind: ModelKind::Path, n, l_scale: 1.0, mu: None, edges: None }
    }
    pub fn tree(n: usize, edges: Vec<(usize, usize, f64)>) -> Self {
        Self { kind: ModelKind::Tree, n, l_scale: 1.0, mu: None, edges: Some(edges) }
    }

    pub fn label(&self) -> String {
        match self.kind {
            ModelKind::Cycle => format!("C{}", self.n),
            ModelKind::Torus => format!("T{}x{}", self.n, self.n),
            ModelKind::Path => format!("P{}", self.n),
            ModelKind::Tree => format!("tree{}", self.n),
        }
    }

    /// Same model with every linear size doubled (used for refinement checks).
    pub fn refined(&self) -> Result<Self> {
        match self.kind {
            ModelKind::Tree => Err(Error::InvalidArgument("trees have no canonical refinement".into())),
            _ => Ok(Self { n: self.n * 2, mu: None, ..self.clone() }),
        }
    }
}

/// A finite point set with distances, point masses and a nonnegative
/// operator `L` that is self-adjoint in `L²(μ)` and kills constants.
///
/// `l` is stored as the matrix acting on point-value vectors, so
/// `(Lf)(x) = Σ_y l[(x, y)] f(y)`.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    pub name: String,
    pub dist: Mat,
    pub mu: Vector,
    pub l: Mat,
    rows: Vec<Vec<(f64, usize)>>,
    cum: Vec<Vec<f64>>,
}

impl ModelSpace {
    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn total_measure(&self) -> f64 {
        self.mu.sum()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.max()
    }

    /// Sorted distinct positive distances.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.dist.iter().copied().filter(|d| *d > 0.0).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    pub fn min_positive_distance(&self) -> f64 {
        self.distinct_distances().first().copied().unwrap_or(1.0)
    }

    /// Open ball `{y : d(x,y) < r}` and its measure.
    pub fn ball(&self, x: usize, r: f64) -> (Vec<usize>, f64) {
        let k = self.rows[x].partition_point(|(d, _)| *d < r);
        let mut pts: Vec<usize> = self.rows[x][..k].iter().map(|(_, p)| *p).collect();
        pts.sort_unstable();
        (pts, self.ball_volume(x, r))
    }

    pub fn ball_volume(&self, x: usize, r: f64) -> f64 {
        let k = self.rows[x].partition_point(|(d, _)| *d < r);
        if k == 0 {
            0.0
        } else {
            self.cum[x][k - 1]
        }
    }

    pub fn build(spec: &ModelSpec) -> Result<Self> {
        let n = spec.n;
        let (points, edges) = match spec.kind {
            ModelKind::Cycle => {
                if n < 3 {
                    return Err(Error::InvalidModel("cycle needs n >= 3".into()));
                }
                (n, (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect::<Vec<_>>())
            }
            ModelKind::Path => {
                if n < 2 {
                    return Err(Error::InvalidModel("path needs n >= 2".into()));
                }
                (n, (0..n - 1).map(|i| (i, i + 1, 1.0)).collect())
            }
            ModelKind::Torus => {
                if n < 3 {
                    return Err(Error::InvalidModel("torus needs side >= 3".into()));
                }
                let mut e = Vec::with_capacity(2 * n * n);
                for r in 0..n {
                    for c in 0..n {
                        let i = r * n + c;
                        e.push((i, r * n + (c + 1) % n, 1.0));
                        e.push((i, ((r + 1) % n) * n + c, 1.0));
                    }
                }
                (n * n, e)
            }
            ModelKind::Tree => {
                let e = spec
                    .edges
                    .clone()
                    .ok_or_else(|| Error::InvalidModel("tree needs an edge list".into()))?;
                if e.len() + 1 != n {
                    return Err(Error::InvalidModel(format!(
                        "a tree on {n} points has {} edges, got {}",
                        n - 1,
                        e.len()
                    )));
                }
                (n, e)
            }
        };
        for &(u, v, w) in &edges {
            if u >= points || v >= points || u == v || !(w > 0.0) {
                return Err(Error::InvalidModel(format!("bad edge ({u}, {v}, {w})")));
            }
        }
        let mu = match &spec.mu {
            Some(m) if m.len() != points => {
                return Err(Error::InvalidModel(format!("mu has {} entries, need {points}", m.len())))
            }
            Some(m) => Vector::from_vec(m.clone()),
            None => Vector::from_element(points, 1.0),
        };
        let dist = shortest_paths(points, &edges)?;
        // Conductance 1/len² so that unit-length graphs get the plain Laplacian.
        let mut a = Mat::zeros(points, points);
        for &(u, v, w) in &edges {
            let c = 1.0 / (w * w);
            a[(u, v)] -= c;
            a[(v, u)] -= c;
            a[(u, u)] += c;
            a[(v, v)] += c;
        }
        let mut l = a * spec.l_scale;
        for (i, mut row) in l.row_iter_mut().enumerate() {
            row /= mu[i];
        }
        Self::from_parts(spec.label(), dist, mu, l)
    }

    /// Validates and wraps raw tables.
    pub fn from_parts(name: String, dist: Mat, mu: Vector, l: Mat) -> Result<Self> {
        let n = mu.len();
        if dist.nrows() != n || dist.ncols() != n || l.nrows() != n || l.ncols() != n {
            return Err(Error::InvalidModel("table sizes disagree".into()));
        }
        if let Some(m) = mu.iter().find(|m| !(**m > 0.0)) {
            return Err(Error::InvalidModel(format!("nonpositive point mass {m}")));
        }
        for x in 0..n {
            for y in 0..n {
                let d = dist[(x, y)];
                if d.is_infinite() {
                    return Err(Error::Disconnected);
                }
                if !(d >= 0.0) || d != dist[(y, x)] || ((d == 0.0) != (x == y)) {
                    return Err(Error::InvalidModel(format!("distance table invalid at ({x}, {y})")));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if dist[(x, z)] > dist[(x, y)] + dist[(y, z)] + 1e-12 {
                        return Err(Error::InvalidModel(format!("triangle inequality fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        let scale = l.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-300);
        // Self-adjointness in L²(μ) means diag(μ)·L is symmetric.
        for x in 0..n {
            for y in 0..x {
                let a = mu[x] * l[(x, y)];
                let b = mu[y] * l[(y, x)];
                if (a - b).abs() > 1e-12 * scale * mu.max() {
                    return Err(Error::InvalidModel("L is not symmetric in the mu inner product".into()));
                }
            }
        }
        let ones = Vector::from_element(n, 1.0);
        if (&l * &ones).amax() > 1e-10 * scale {
            return Err(Error::InvalidModel("L does not annihilate constants".into()));
        }
        let sym = symmetrized(&l, &mu);
        let lo = sym.symmetric_eigenvalues().min();
        if lo < -1e-10 * scale {
            return Err(Error::InvalidModel(format!("L is not positive semidefinite (eigenvalue {lo:.3e})")));
        }
        let mut rows = Vec::with_capacity(n);
        let mut cum = Vec::with_capacity(n);
        for x in 0..n {
            let mut r: Vec<(f64, usize)> = (0..n).map(|y| (dist[(x, y)], y)).collect();
            r.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut acc = 0.0;
            cum.push(
                r.iter()
                    .map(|(_, y)| {
                        acc += mu[*y];
                        acc
                    })
                    .collect(),
            );
            rows.push(r);
        }
        Ok(Self { name, dist, mu, l, rows, cum })
    }
}

/// `D^{1/2} L D^{-1/2}`, symmetrised against rounding.
pub(crate) fn symmetrized(l: &Mat, mu: &Vector) -> Mat {
    let n = mu.len();
    let s = Mat::from_fn(n, n, |i, j| l[(i, j)] * (mu[i] / mu[j]).sqrt());
    (&s + s.transpose()) * 0.5
}

fn shortest_paths(n: usize, edges: &[(usize, usize, f64)]) -> Result<Mat> {
    let mut d = Mat::from_element(n, n, f64::INFINITY);
    for i in 0..n {
        d[(i, i)] = 0.0;
    }
    for &(u, v, w) in edges {
        if w < d[(u, v)] {
            d[(u, v)] = w;
            d[(v, u)] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[(i, k)];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let c = dik + d[(k, j)];
                if c < d[(i, j)] {
                    d[(i, j)] = c;
                }
            }
        }
    }
    if d.iter().any(|v| v.is_infinite()) {
        return Err(Error::Disconnected);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_distances_wrap() {
        let m = ModelSpace::build(&ModelSpec::cycle(8)).unwrap();
        assert_eq!(m.n(), 8);
        assert_eq!(m.dist[(0, 3)], 3.0);
        assert_eq!(m.dist[(0, 5)], 3.0);
        assert_eq!(m.diameter(), 4.0);
    }

    #[test]
    fn two_point_path_laplacian() {
        let m = ModelSpace::build(&ModelSpec::path(2)).unwrap();
        assert_eq!(m.l, Mat::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn torus_ball_of_radius_one_and_a_half() {
        let m = ModelSpace::build(&ModelSpec::torus(4)).unwrap();
        for x in 0..16 {
            assert_eq!(m.ball_volume(x, 1.5), 5.0);
        }
    }

    #[test]
    fn open_balls_on_the_cycle() {
        let m = ModelSpace::build(&ModelSpec::cycle(8)).unwrap();
        assert_eq!(m.ball(0, 1.5), (vec![0, 1, 7], 3.0));
        assert_eq!(m.ball(3, 1.0), (vec![3], 1.0));
        assert_eq!(m.ball(0, 100.0).1, 8.0);
        // the boundary radius is excluded
        assert_eq!(m.ball(0, 2.0).0, vec![0, 1, 7]);
    }

    #[test]
    fn weighted_tree_distances() {
        let t = ModelSpec::tree(4, vec![(0, 1, 2.0), (1, 2, 0.5), (1, 3, 1.0)]);
        let m = ModelSpace::build(&t).unwrap();
        assert_eq!(m.dist[(0, 2)], 2.5);
        assert_eq!(m.dist[(2, 3)], 1.5);
    }

    #[test]
    fn rejects_forest() {
        let t = ModelSpec::tree(4, vec![(0, 1, 1.0), (2, 3, 1.0), (0, 1, 1.0)]);
        assert!(matches!(ModelSpace::build(&t), Err(Error::Disconnected)));
    }

    #[test]
    fn rejects_indefinite_and_asymmetric_operators() {
        let base = ModelSpace::build(&ModelSpec::path(3)).unwrap();
        let neg = -base.l.clone();
        let r = ModelSpace::from_parts("neg".into(), base.dist.clone(), base.mu.clone(), neg);
        assert!(matches!(r, Err(Error::InvalidModel(_))));
        let mut skew = base.l.clone();
        skew[(0, 1)] = -2.0;
        skew[(0, 0)] = 2.0;
        let r = ModelSpace::from_parts("skew".into(), base.dist.clone(), base.mu.clone(), skew);
        assert!(matches!(r, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn weighted_measure_keeps_l_self_adjoint() {
        let mut s = ModelSpec::path(4);
        s.mu = Some(vec![1.0, 2.0, 0.5, 3.0]);
        let m = ModelSpace::build(&s).unwrap();
        let dl = Mat::from_diagonal(&m.mu) * &m.l;
        assert!((&dl - dl.transpose()).amax() < 1e-14);
    }
}
