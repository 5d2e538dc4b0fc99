//! Truncated Taylor series in one variable, used to differentiate the
//! x-space wavefunctions to any fixed order without finite differences.

use std::ops::{Add, Mul, Sub};

use crate::poly::FloatPoly;

/// Coefficients f^{(k)}(x₀)/k! for k = 0..=order.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet(Vec<f64>);

impl Jet {
    pub fn constant(c: f64, order: usize) -> Self {
        let mut v = vec![0.0; order + 1];
        v[0] = c;
        Jet(v)
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Jet::constant(x0, order);
        if order > 0 {
            j.0[1] = 1.0;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet(self.0.iter().map(|c| c * s).collect())
    }

    pub fn exp(&self) -> Jet {
        let n = self.0.len();
        let mut e = vec![0.0; n];
        e[0] = self.0[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * self.0[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    /// Natural log; the value must be positive.
    pub fn ln(&self) -> Jet {
        let a = &self.0;
        let n = a.len();
        let mut l = vec![0.0; n];
        l[0] = a[0].ln();
        for k in 1..n {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * a[k - j]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Jet(l)
    }

    /// self^p for positive value.
    pub fn powf(&self, p: f64) -> Jet {
        if p == 0.0 {
            return Jet::constant(1.0, self.order());
        }
        self.ln().scale(p).exp()
    }

    /// (sin self, cos self).
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.0;
        let n = a.len();
        let (mut s, mut c) = (vec![0.0; n], vec![0.0; n]);
        (s[0], c[0]) = a[0].sin_cos();
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

    /// p(self) by Horner's rule.
    pub fn compose(&self, p: &FloatPoly) -> Jet {
        let mut acc = Jet::constant(0.0, self.order());
        for c in p.0.iter().rev() {
            acc = &acc * self;
            acc.0[0] += c;
        }
        acc
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

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.0.len();
        let mut out = vec![0.0; n];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Jet(out)
    }
}
