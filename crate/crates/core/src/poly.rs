//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, to_f64, Rational};

/// A polynomial in η with exact rational coefficients, lowest degree first.
///
/// Stored canonically: the highest coefficient is nonzero, and the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial η.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c0 + c1 η` from small integers.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Poly::new(vec![c0, c1])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of η^k (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Formal d/dη.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * int(k as i64))
                .collect(),
        )
    }

    /// The substitution η → −η.
    pub fn reflect(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| if k % 2 == 1 { -a } else { a.clone() })
                .collect(),
        }
    }

    /// `self(q(η))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().eval(x)
    }

    /// Float copy of the coefficients for repeated evaluation.
    pub fn to_f64_coeffs(&self) -> FloatPoly {
        FloatPoly(self.coeffs.iter().map(to_f64).collect())
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Returns `r` with `self = divisor * r`, failing when the remainder is nonzero.
    pub fn exact_divide(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonExactDivision)
        }
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Same polynomial scaled to leading coefficient one.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the root η = `root`.
    pub fn root_multiplicity(&self, root: &Rational) -> usize {
        if self.is_zero() {
            return 0;
        }
        let factor = Poly::linear(-root, Rational::one());
        let mut p = self.clone();
        let mut k = 0;
        while let Ok(q) = p.exact_divide(&factor) {
            p = q;
            k += 1;
        }
        k
    }

    /// Descending-power LaTeX rendering, e.g. `\frac{1}{2}\eta^{2} - 3`.
    pub fn to_latex(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let body = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            match k {
                0 => out.push_str(&body),
                _ => {
                    if !a.is_one() {
                        out.push_str(&body);
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{{{k}}}"));
                    }
                }
            }
        }
        out
    }

    /// Coefficients as `"p/q"` strings, ascending degree.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.coeff_strings().join(", "))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})η")?,
                _ => write!(f, "({c})η^{k}")?,
            }
        }
        Ok(())
    }
}

/// Float coefficients, lowest degree first, for fast Horner evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly(pub Vec<f64>);

impl FloatPoly {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Value, first and second derivative at `x`.
    pub fn eval_d2(&self, x: f64) -> (f64, f64, f64) {
        let (mut p, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for c in self.0.iter().rev() {
            d2 = d2 * x + 2.0 * d1;
            d1 = d1 * x + p;
            p = p * x + c;
        }
        (p, d1, d2)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn difference_of_squares() {
        let p = Poly::from_ints(&[1, 1]);
        let q = Poly::from_ints(&[-1, 1]);
        assert_eq!(&p * &q, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn power_rule() {
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).derivative(), Poly::from_ints(&[0, 2]));
        assert!(Poly::from_ints(&[5]).derivative().is_zero());
    }

    #[test]
    fn reflection_alternates_signs() {
        assert_eq!(Poly::from_ints(&[0, 3, 1]).reflect(), Poly::from_ints(&[0, -3, 1]));
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::new(vec![int(0), int(0)]).degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn exact_division() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.exact_divide(&Poly::from_ints(&[-1, 1])).unwrap(), Poly::from_ints(&[1, 1]));
        let p = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.exact_divide(&Poly::x()), Err(Error::NonExactDivision));
        assert_eq!(p.exact_divide(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn evaluation() {
        let p = Poly::new(vec![rat(15, 8), rat(-5, 2), rat(1, 2)]);
        assert_eq!(p.eval(&int(2)), rat(15, 8) - int(5) + int(2));
        assert!((p.eval_f64(2.0) - (15.0 / 8.0 - 5.0 + 2.0)).abs() < 1e-15);
        let (v, d1, d2) = p.to_f64_coeffs().eval_d2(3.0);
        assert!((v - (15.0 / 8.0 - 7.5 + 4.5)).abs() < 1e-14);
        assert!((d1 - (-2.5 + 3.0)).abs() < 1e-14);
        assert!((d2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn gcd_and_multiplicity() {
        let a = Poly::from_ints(&[-1, 1]);
        let b = Poly::from_ints(&[2, 1]);
        let p = &(&a * &a) * &b;
        assert_eq!(p.gcd(&p.derivative()), a);
        assert_eq!(p.root_multiplicity(&int(1)), 2);
        assert_eq!(p.root_multiplicity(&int(-2)), 1);
        assert_eq!(p.root_multiplicity(&int(0)), 0);
    }

    #[test]
    fn latex_descending() {
        let p = Poly::new(vec![rat(15, 8), rat(-5, 2), rat(1, 2)]);
        assert_eq!(p.to_latex("\\eta"), "\\frac{1}{2}\\eta^{2} - \\frac{5}{2}\\eta + \\frac{15}{8}");
        assert_eq!(Poly::from_ints(&[-4, -1]).to_latex("x"), "-x - 4");
    }

    #[test]
    fn compose_with_linear() {
        // p(η) = η², p((1-η)/2) = (1 - 2η + η²)/4
        let p = Poly::from_ints(&[0, 0, 1]);
        let q = Poly::linear(rat(1, 2), rat(-1, 2));
        assert_eq!(p.compose(&q), Poly::new(vec![rat(1, 4), rat(-1, 2), rat(1, 4)]));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-9i64..=9, 1i64..=5), 0..6)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn exact_divide_inverts_multiplication(p in small_poly(), q in small_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).exact_divide(&q).unwrap(), p);
        }

        #[test]
        fn reflection_is_a_ring_map(p in small_poly(), q in small_poly()) {
            prop_assert_eq!((&p * &q).reflect(), &p.reflect() * &q.reflect());
            prop_assert_eq!(p.reflect().reflect(), p);
        }
    }
}
