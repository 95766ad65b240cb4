//! Smooth compactly supported cutoffs built from the `e^{-1/t}` transition.

use super::jet::Jet;
use crate::error::{Error, Result};

/// Admissible cutoff families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutoffKind {
    /// `Φ`: equal to 1 on `[0,1]`, supported in `[0,b]`.
    LowPass,
    /// `Ψ(u) = Φ(u) − Φ(bu)`: supported in `[1/b, b]`.
    BandPass,
    /// `Ψ / (Σ_j Ψ(b^{-j}·)²)^{1/2}`: band-pass with `Σ_j |φ(b^{-j}u)|² = 1`.
    Partition,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cutoff {
    pub kind: CutoffKind,
    pub b: f64,
}

fn h(t: &Jet) -> Jet {
    if t.value() <= 0.0 {
        Jet::constant(0.0, t.order())
    } else {
        t.recip().scale(-1.0).exp()
    }
}

/// C^∞ step equal to 1 for `t ≤ 0` and 0 for `t ≥ 1`.
pub fn smooth_step_jet(t: &Jet) -> Jet {
    let t0 = t.value();
    if t0 <= 0.0 {
        return Jet::constant(1.0, t.order());
    }
    if t0 >= 1.0 {
        return Jet::constant(0.0, t.order());
    }
    let a = h(&(-t).add_const(1.0));
    let z = h(t);
    &a / &(&a + &z)
}

pub fn smooth_step(t: f64) -> f64 {
    smooth_step_jet(&Jet::constant(t, 0)).value()
}

/// `Φ` evaluated on a jet in `u ≥ 0`.
pub fn phi_jet(u: &Jet, b: f64) -> Jet {
    smooth_step_jet(&u.add_const(-1.0).scale(1.0 / (b - 1.0)))
}

pub fn psi_jet(u: &Jet, b: f64) -> Jet {
    &phi_jet(u, b) - &phi_jet(&u.scale(b), b)
}

/// Dual-frame symbol `Γ(u) = Φ(b^{-2}u) − Φ(bu)`.
pub fn gamma_jet(u: &Jet, b: f64) -> Jet {
    &phi_jet(&u.scale(1.0 / (b * b)), b) - &phi_jet(&u.scale(b), b)
}

pub fn phi(u: f64, b: f64) -> f64 {
    phi_jet(&Jet::constant(u.abs(), 0), b).value()
}

pub fn psi(u: f64, b: f64) -> f64 {
    psi_jet(&Jet::constant(u.abs(), 0), b).value()
}

pub fn gamma(u: f64, b: f64) -> f64 {
    gamma_jet(&Jet::constant(u.abs(), 0), b).value()
}

fn partition_jet(u: &Jet, b: f64) -> Jet {
    let u0 = u.value();
    let num = psi_jet(u, b);
    if num.0.iter().all(|c| *c == 0.0) {
        return num;
    }
    let j0 = (u0.ln() / b.ln()).floor() as i32;
    let mut s = Jet::constant(0.0, u.order());
    for j in j0 - 2..=j0 + 2 {
        let p = psi_jet(&u.scale(b.powi(-j)), b);
        s = &s + &(&p * &p);
    }
    &num / &s.sqrt()
}

impl Cutoff {
    pub fn new(kind: CutoffKind, b: f64) -> Result<Self> {
        if !(b > 1.0) || !b.is_finite() {
            return Err(Error::InvalidArgument(format!("cutoff base must exceed 1, got {b}")));
        }
        Ok(Self { kind, b })
    }

    /// Even extension to the whole line.
    pub fn eval(&self, u: f64) -> f64 {
        self.jet(u.abs(), 0).value()
    }

    /// Taylor jet of the symbol at `u ≥ 0`.
    pub fn jet(&self, u: f64, order: usize) -> Jet {
        let x = Jet::variable(u, order);
        match self.kind {
            CutoffKind::LowPass => phi_jet(&x, self.b),
            CutoffKind::BandPass => psi_jet(&x, self.b),
            CutoffKind::Partition => partition_jet(&x, self.b),
        }
    }

    pub fn derivative(&self, u: f64, nu: usize) -> f64 {
        self.jet(u, nu).derivative(nu)
    }

    /// Closed support interval on the half-line.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            CutoffKind::LowPass => (0.0, self.b),
            _ => (1.0 / self.b, self.b),
        }
    }
}
