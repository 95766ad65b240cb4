use crate::error::{Error, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Besov,
    TriebelLizorkin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Weights `b^{js}`.
    Classical,
    /// Weights `|B(·, b^{-j})|^{-s/d}` in place of `b^{js}`.
    Tilde,
}

/// Smoothness and integrability indices of one space, with the doubling
/// dimensions `d`, `d*` of the underlying model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceParams {
    pub s: f64,
    pub p: f64,
    pub q: f64,
    pub flavor: Flavor,
    pub family: Family,
    pub d: f64,
    pub dstar: f64,
}

impl SpaceParams {
    pub fn new(s: f64, p: f64, q: f64, flavor: Flavor, family: Family, d: f64, dstar: f64) -> Result<Self> {
        if !(p > 0.0) || !(q > 0.0) {
            return Err(Error::InvalidArgument(format!("exponents must be positive, got p={p}, q={q}")));
        }
        if family == Family::TriebelLizorkin && p.is_infinite() {
            return Err(Error::InvalidArgument("Triebel-Lizorkin spaces need p < inf".into()));
        }
        if !(d > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(format!("need finite s and d > 0, got s={s}, d={d}")));
        }
        Ok(Self { s, p, q, flavor, family, d, dstar })
    }

    /// `𝒥 = d / min{1, p}` for Besov, `d / min{1, p, q}` for Triebel–Lizorkin.
    #[allow(non_snake_case)]
    pub fn J(&self) -> f64 {
        let m = match self.family {
            Family::Besov => self.p.min(1.0),
            Family::TriebelLizorkin => self.p.min(self.q).min(1.0),
        };
        self.d / m
    }

    /// Exponent `r = min{1, p, q}` of the quasi-triangle inequality.
    pub fn r(&self) -> f64 {
        self.p.min(self.q).min(1.0)
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = flavor;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_index() {
        let p = SpaceParams::new(0.0, 0.5, 2.0, Flavor::Classical, Family::Besov, 1.5, 1.0).unwrap();
        assert_eq!(p.J(), 3.0);
        let f = p.with_family(Family::TriebelLizorkin);
        assert_eq!(f.J(), 3.0);
        let g = SpaceParams::new(0.0, 2.0, 0.25, Flavor::Classical, Family::TriebelLizorkin, 1.0, 1.0).unwrap();
        assert_eq!(g.J(), 4.0);
        assert_eq!(g.with_family(Family::Besov).J(), 1.0);
    }

    #[test]
    fn tl_rejects_infinite_p() {
        assert!(SpaceParams::new(0.0, f64::INFINITY, 2.0, Flavor::Tilde, Family::TriebelLizorkin, 1.0, 1.0).is_err());
        assert!(SpaceParams::new(0.0, f64::INFINITY, 2.0, Flavor::Tilde, Family::Besov, 1.0, 1.0).is_ok());
        assert!(SpaceParams::new(0.0, 0.0, 2.0, Flavor::Tilde, Family::Besov, 1.0, 1.0).is_err());
    }
}
