//! Eigendecomposition in the μ-weighted inner product and the resulting
//! functional calculus `f(δ√L)`.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};
use crate::space::ModelSpace;

/// μ-orthonormal eigenbasis of `L`, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenfunctions.
    pub eigenfunctions: Mat,
    pub nullspace_dim: usize,
    pub mu: Vector,
    /// `max |λ|`, used as the scale for tolerances.
    pub l_norm: f64,
}

/// Two-point kernel acting by `(Kf)(x) = Σ_y K(x,y) f(y) μ(y)`.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub table: Mat,
    /// Smallest `[lo, hi]` (in `√λ` units) containing every eigenvalue the symbol does not kill.
    pub band: Option<(f64, f64)>,
}

impl Kernel {
    pub fn apply(&self, f: &Vector, mu: &Vector) -> Vector {
        &self.table * f.component_mul(mu)
    }

    /// Column `K(·, y)`.
    pub fn column(&self, y: usize) -> Vector {
        self.table.column(y).into_owned()
    }
}

pub fn eigendecompose(space: &ModelSpace) -> Result<SpectralData> {
    let n = space.n();
    let sym = crate::space::symmetrized(&space.l, &space.mu);
    let eig = sym.clone().try_symmetric_eigen(1e-15, 10_000).ok_or_else(|| {
        Error::Eigen("symmetric eigensolver did not converge".into())
    })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let l_norm = eig.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1e-300);
    let tol = 1e-10 * l_norm;
    let inv_sqrt_mu = space.mu.map(|m| 1.0 / m.sqrt());
    let mut vals = Vec::with_capacity(n);
    let mut vecs = Mat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        let lam = eig.eigenvalues[i];
        vals.push(if lam < tol { 0.0 } else { lam });
        let mut v = eig.eigenvectors.column(i).component_mul(&inv_sqrt_mu);
        // Fix the sign so the basis is deterministic.
        let pivot = v.iter().copied().fold(0.0_f64, |a, x| if x.abs() > a.abs() { x } else { a });
        if pivot < 0.0 {
            v = -v;
        }
        vecs.set_column(k, &v);
    }
    let nullspace_dim = vals.iter().filter(|v| **v == 0.0).count();
    Ok(SpectralData { eigenvalues: vals, eigenfunctions: vecs, nullspace_dim, mu: space.mu.clone(), l_norm })
}

impl SpectralData {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn sqrt_eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i].sqrt()
    }

    /// Smallest and largest nonzero `√λ`.
    pub fn nonzero_range(&self) -> (f64, f64) {
        let k = self.nullspace_dim.min(self.n() - 1);
        (self.eigenvalues[k].sqrt(), self.eigenvalues[self.n() - 1].sqrt())
    }

    /// `⟨f, e_i⟩_μ` for every `i`.
    pub fn coefficients(&self, f: &Vector) -> Vector {
        self.eigenfunctions.tr_mul(&f.component_mul(&self.mu))
    }

    pub fn synthesize(&self, c: &Vector) -> Vector {
        &self.eigenfunctions * c
    }

    /// `f(√L) g` applied spectrally.
    pub fn apply_fn(&self, g: &Vector, f: impl Fn(f64) -> f64) -> Vector {
        let mut c = self.coefficients(g);
        for (i, ci) in c.iter_mut().enumerate() {
            *ci *= f(self.sqrt_eigenvalue(i));
        }
        self.synthesize(&c)
    }

    /// Removes the nullspace component (the finite analogue of working modulo polynomials).
    pub fn project_mean_zero(&self, g: &Vector) -> Vector {
        let mut c = self.coefficients(g);
        for i in 0..self.nullspace_dim {
            c[i] = 0.0;
        }
        self.synthesize(&c)
    }

    /// Norm of the nullspace component of `g`.
    pub fn nullspace_component(&self, g: &Vector) -> f64 {
        let c = self.coefficients(g);
        (0..self.nullspace_dim).map(|i| c[i] * c[i]).sum::<f64>().sqrt()
    }

    /// Kernel of `E diag(v) Eᵀ` for given per-eigenvalue multipliers.
    pub fn kernel_from_values(&self, v: &[f64]) -> Mat {
        let mut scaled = self.eigenfunctions.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= v[k];
        }
        let k = &scaled * self.eigenfunctions.transpose();
        (&k + k.transpose()) * 0.5
    }

    /// Operator matrix of `L`, rebuilt from the eigenbasis.
    pub fn reconstruct_l(&self) -> Mat {
        let k = self.kernel_from_values(&self.eigenvalues);
        crate::linalg::scale_cols(&k, &self.mu)
    }
}

/// Kernel of `f(δ√L)` for an even real symbol `f`.
pub fn apply_symbol(spec: &SpectralData, f: impl Fn(f64) -> f64, delta: f64) -> Kernel {
    let vals: Vec<f64> = (0..spec.n()).map(|i| f(delta * spec.sqrt_eigenvalue(i))).collect();
    let mut band: Option<(f64, f64)> = None;
    for (i, v) in vals.iter().enumerate() {
        if v.abs() > 1e-14 {
            let s = spec.sqrt_eigenvalue(i);
            band = Some(match band {
                None => (s, s),
                Some((lo, hi)) => (lo.min(s), hi.max(s)),
            });
        }
    }
    Kernel { table: spec.kernel_from_values(&vals), band }
}

/// `L^m g` for integer `m`; negative powers act on the orthogonal complement
/// of the nullspace and require a mean-zero input.
///
/// For `m > 0` the nullspace component is annihilated (as `L` does); for
/// `m = 0` the input is returned untouched.
pub fn apply_l_power(spec: &SpectralData, g: &Vector, m: i32, mod_nullspace: bool) -> Result<Vector> {
    if m == 0 {
        return Ok(g.clone());
    }
    if m < 0 {
        if !mod_nullspace {
            return Err(Error::InvalidArgument("negative powers need mod_nullspace".into()));
        }
        let comp = spec.nullspace_component(g);
        let scale = crate::linalg::norm2(g, &spec.mu).max(1e-300);
        if comp > 1e-10 * scale.max(1.0) {
            return Err(Error::NullspaceComponent(comp));
        }
    }
    let mut c = spec.coefficients(g);
    for (i, ci) in c.iter_mut().enumerate() {
        let lam = spec.eigenvalues[i];
        *ci = if lam == 0.0 { 0.0 } else { *ci * lam.powi(m) };
    }
    Ok(spec.synthesize(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{inner, rng, uniform_vec};
    use crate::space::ModelSpec;
    use std::f64::consts::PI;

    fn spec_of(s: ModelSpec) -> (ModelSpace, SpectralData) {
        let m = ModelSpace::build(&s).unwrap();
        let sd = eigendecompose(&m).unwrap();
        (m, sd)
    }

    #[test]
    fn two_point_path() {
        let (_, sd) = spec_of(ModelSpec::path(2));
        assert_eq!(sd.eigenvalues[0], 0.0);
        assert!((sd.eigenvalues[1] - 2.0).abs() < 1e-14);
        let e0 = sd.eigenfunctions.column(0);
        assert!((e0[0] - e0[1]).abs() < 1e-14);
        let e1 = sd.eigenfunctions.column(1);
        assert!((e1[0] + e1[1]).abs() < 1e-14);
    }

    #[test]
    fn cycle_spectrum_is_circulant() {
        let n = 24;
        let (_, sd) = spec_of(ModelSpec::cycle(n));
        let mut want: Vec<f64> = (0..n).map(|k| 2.0 - 2.0 * (2.0 * PI * k as f64 / n as f64).cos()).collect();
        want.sort_by(f64::total_cmp);
        for (a, b) in sd.eigenvalues.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(sd.nullspace_dim, 1);
    }

    #[test]
    fn weighted_basis_is_orthonormal_and_reconstructs() {
        let mut s = ModelSpec::path(6);
        s.mu = Some(vec![1.0, 0.5, 2.0, 1.5, 0.7, 3.0]);
        let (m, sd) = spec_of(s);
        for i in 0..6 {
            for j in 0..6 {
                let g = inner(&sd.eigenfunctions.column(i).into_owned(), &sd.eigenfunctions.column(j).into_owned(), &m.mu);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-12);
            }
        }
        assert!((sd.reconstruct_l() - &m.l).amax() < 1e-10 * sd.l_norm);
        let e0 = sd.eigenfunctions.column(0);
        assert!(e0.iter().all(|v| (v - e0[0]).abs() < 1e-12));
    }

    #[test]
    fn identity_and_heat_symbols() {
        let (m, sd) = spec_of(ModelSpec::cycle(16));
        let g = uniform_vec(&mut rng(1), 16);
        let id = apply_symbol(&sd, |_| 1.0, 1.0);
        assert!((id.apply(&g, &m.mu) - &g).amax() < 1e-12);
        let heat = apply_symbol(&sd, |u| (-u * u).exp(), 2.0);
        let ones = Vector::from_element(16, 1.0);
        assert!((heat.apply(&ones, &m.mu) - &ones).amax() < 1e-12);
        assert!((&heat.table - heat.table.transpose()).amax() < 1e-14);
    }

    #[test]
    fn bump_symbol_fixes_its_spectral_span() {
        let (m, sd) = spec_of(ModelSpec::cycle(16));
        let g = uniform_vec(&mut rng(2), 16);
        // keep only eigenvalues with √λ in [0.7, 1.5]
        let inside = |u: f64| (0.7..=1.5).contains(&u);
        let proj = sd.apply_fn(&g, |u| if inside(u) { 1.0 } else { 0.0 });
        let bump = |u: f64| if inside(u) { 1.0 } else { 0.0 };
        let k = apply_symbol(&sd, bump, 1.0);
        assert!((k.apply(&proj, &m.mu) - &proj).amax() < 1e-12);
        let (lo, hi) = k.band.unwrap();
        assert!(lo >= 0.7 && hi <= 1.5);
    }

    #[test]
    fn l_powers() {
        let (m, sd) = spec_of(ModelSpec::cycle(12));
        let g = uniform_vec(&mut rng(3), 12);
        assert_eq!(apply_l_power(&sd, &g, 0, false).unwrap(), g);
        let e = sd.eigenfunctions.column(5).into_owned();
        let le = apply_l_power(&sd, &e, 1, false).unwrap();
        assert!((le - &e * sd.eigenvalues[5]).amax() < 1e-12);
        let g0 = sd.project_mean_zero(&g);
        let back = apply_l_power(&sd, &apply_l_power(&sd, &g0, -1, true).unwrap(), 1, false).unwrap();
        assert!((back - &g0).amax() < 1e-10);
        assert!(matches!(apply_l_power(&sd, &g.add_scalar(1.0), -1, true), Err(Error::NullspaceComponent(_))));
        assert!(apply_l_power(&sd, &g0, -1, false).is_err());
        assert!((&m.l * &g - apply_l_power(&sd, &g, 1, false).unwrap()).amax() < 1e-12);
    }
}
