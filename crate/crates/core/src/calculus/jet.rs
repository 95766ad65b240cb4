//! Truncated Taylor series ("jets") for exact derivatives of closed-form symbols.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Taylor coefficients `c_k` of `f(x0 + h) = Σ c_k h^k`, truncated at a fixed order.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet(pub Vec<f64>);

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Jet(c)
    }

    /// The affine map `h ↦ x0 + slope·h`.
    pub fn affine(x0: f64, slope: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = x0;
        if order > 0 {
            c[1] = slope;
        }
        Jet(c)
    }

    pub fn variable(x0: f64, order: usize) -> Self {
        Self::affine(x0, 1.0, order)
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `ν`-th derivative at the expansion point.
    pub fn derivative(&self, nu: usize) -> f64 {
        if nu > self.order() {
            return 0.0;
        }
        let fact: f64 = (1..=nu).map(|k| k as f64).product();
        self.0[nu] * fact
    }

    /// All derivatives `f, f', …, f^{(order)}`.
    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order()).map(|nu| self.derivative(nu)).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Jet(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add_const(&self, s: f64) -> Self {
        let mut c = self.0.clone();
        c[0] += s;
        Jet(c)
    }

    pub fn exp(&self) -> Self {
        let a = &self.0;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = a[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b[k - j]).sum();
            b[k] = s / k as f64;
        }
        Jet(b)
    }

    /// Natural logarithm; the value must be positive.
    pub fn ln(&self) -> Self {
        let a = &self.0;
        let n = a.len();
        let mut b = vec![0.0; n];
        b[0] = a[0].ln();
        for k in 1..n {
            let s: f64 = (1..k).map(|j| j as f64 * b[j] * a[k - j]).sum();
            b[k] = (a[k] - s / k as f64) / a[0];
        }
        Jet(b)
    }

    /// `self^p` for a positive value.
    pub fn powf(&self, p: f64) -> Self {
        if self.order() == 0 {
            return Jet(vec![self.0[0].powf(p)]);
        }
        self.ln().scale(p).exp()
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut out = Jet::constant(1.0, self.order());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn recip(&self) -> Self {
        &Jet::constant(1.0, self.order()) / self
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.0;
        let n = a.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        s[0] = a[0].sin();
        c[0] = a[0].cos();
        for k in 1..n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc -= j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (Jet(s), Jet(c))
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.0.len();
        let c = (0..n).map(|k| (0..=k).map(|j| self.0[j] * o.0[k - j]).sum()).collect();
        Jet(c)
    }
}

impl Div for &Jet {
    type Output = Jet;
    fn div(self, o: &Jet) -> Jet {
        let n = self.0.len();
        let mut c = vec![0.0; n];
        for k in 0..n {
            let s: f64 = (1..=k).map(|j| o.0[j] * c[k - j]).sum();
            c[k] = (self.0[k] - s) / o.0[0];
        }
        Jet(c)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, o: Jet) -> Jet {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);
