//! Classical Laguerre and Jacobi polynomials with exact rational parameters.
//!
//! Both families are built straight from their hypergeometric series. The
//! forward-shift and contiguity identities below are then checked as exact
//! polynomial equalities, which doubles as a test of the construction.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::Poly;
use crate::rational::{factorial, int, pochhammer, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaguerreParam {
    pub alpha: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiParam {
    pub alpha: Rational,
    pub beta: Rational,
}

impl JacobiParam {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        JacobiParam { alpha, beta }
    }

    pub fn swapped(&self) -> Self {
        JacobiParam::new(self.beta.clone(), self.alpha.clone())
    }
}

/// L_n^{(α)}(η) = (1/n!) Σ_k ((−n)_k / k!) (α+k+1)_{n−k} η^k; zero for n < 0.
pub fn laguerre(n: i64, alpha: &Rational) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let n = n as usize;
    let minus_n = int(-(n as i64));
    let nfact = factorial(n);
    Poly::new(
        (0..=n)
            .map(|k| {
                let a = alpha + int(k as i64 + 1);
                pochhammer(&minus_n, k) * pochhammer(&a, n - k) / (factorial(k) * &nfact)
            })
            .collect(),
    )
}

/// (1 − η)/2.
pub fn half_one_minus() -> Poly {
    Poly::linear(rat(1, 2), rat(-1, 2))
}

/// (1 + η)/2.
pub fn half_one_plus() -> Poly {
    Poly::linear(rat(1, 2), rat(1, 2))
}

/// P_n^{(α,β)}(η) as a series in (1−η)/2; zero for n < 0.
///
/// The prefactor (α+1)_n is folded into each term as (α+k+1)_{n−k}, so
/// parameters with (α+1)_k = 0 need no special casing.
pub fn jacobi(n: i64, alpha: &Rational, beta: &Rational) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let n = n as usize;
    let minus_n = int(-(n as i64));
    let top = alpha + beta + int(n as i64 + 1);
    let nfact = factorial(n);
    let in_t = Poly::new(
        (0..=n)
            .map(|k| {
                let a = alpha + int(k as i64 + 1);
                pochhammer(&minus_n, k) * pochhammer(&top, k) * pochhammer(&a, n - k)
                    / (factorial(k) * &nfact)
            })
            .collect(),
    );
    in_t.compose(&half_one_minus())
}

/// True when P_n^{(α,β)} drops below degree n (leading coefficient (n+α+β+1)_n vanishes).
pub fn jacobi_is_degenerate(n: i64, alpha: &Rational, beta: &Rational) -> bool {
    n > 0 && pochhammer(&(alpha + beta + int(n + 1)), n as usize).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: i64,
    pub params: String,
    /// Some polynomial involved loses degree at these parameters.
    pub degenerate: bool,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn verify_laguerre_identities(n: i64, p: &LaguerreParam) -> IdentityReport {
    let a = &p.alpha;
    let one = Rational::one();
    let l = |m: i64, al: &Rational| laguerre(m, al);

    let forward = l(n, a).derivative() == -l(n - 1, &(a + &one));
    let id1 = &l(n, a) - &l(n, &(a - &one)) == l(n - 1, a);
    let lhs = &(&Poly::x() * &l(n - 1, &(a + &one))) - &l(n - 1, a).scale(a);
    let id2 = lhs == l(n, &(a - &one)).scale(&int(-n));

    IdentityReport {
        n,
        params: format!("alpha={a}"),
        degenerate: false,
        checks: vec![
            IdentityCheck { identity: "Lforward", holds: forward },
            IdentityCheck { identity: "Lid1", holds: id1 },
            IdentityCheck { identity: "Lid2", holds: id2 },
        ],
    }
}

pub fn verify_jacobi_identities(n: i64, p: &JacobiParam) -> IdentityReport {
    let (a, b) = (&p.alpha, &p.beta);
    let one = Rational::one();
    let nn = int(n);
    let j = |m: i64, al: &Rational, be: &Rational| jacobi(m, al, be);

    let forward = j(n, a, b).derivative()
        == j(n - 1, &(a + &one), &(b + &one)).scale(&((&nn + a + b + &one) / int(2)));

    let lhs = &j(n, a, &(b - &one)).scale(&(&nn + b)) - &j(n, &(a - &one), b).scale(b);
    let rhs = (&half_one_plus() * &j(n - 1, a, &(b + &one))).scale(&(&nn + a + b));
    let id1 = lhs == rhs;

    let lhs = &j(n, &(a - &one), b).scale(&(&nn + a)) - &j(n, a, &(b - &one)).scale(a);
    let rhs = (&half_one_minus() * &j(n - 1, &(a + &one), b)).scale(&-(&nn + a + b));
    let id1m = lhs == rhs;

    let degenerate = [
        (n, a.clone(), b.clone()),
        (n, a.clone(), b - &one),
        (n, a - &one, b.clone()),
        (n - 1, a + &one, b + &one),
        (n - 1, a.clone(), b + &one),
        (n - 1, a + &one, b.clone()),
    ]
    .iter()
    .any(|(m, al, be)| jacobi_is_degenerate(*m, al, be));

    IdentityReport {
        n,
        params: format!("alpha={a} beta={b}"),
        degenerate,
        checks: vec![
            IdentityCheck { identity: "Jforward", holds: forward },
            IdentityCheck { identity: "Jid1", holds: id1 },
            IdentityCheck { identity: "Jid1m", holds: id1m },
        ],
    }
}

/// P_n^{(α,β)}(−η) = (−1)^n P_n^{(β,α)}(η).
pub fn classical_parity(n: i64, p: &JacobiParam) -> IdentityReport {
    let lhs = jacobi(n, &p.alpha, &p.beta).reflect();
    let mut rhs = jacobi(n, &p.beta, &p.alpha);
    if n % 2 != 0 {
        rhs = -rhs;
    }
    IdentityReport {
        n,
        params: format!("alpha={} beta={}", p.alpha, p.beta),
        degenerate: jacobi_is_degenerate(n, &p.alpha, &p.beta),
        checks: vec![IdentityCheck { identity: "P:J", holds: lhs == rhs }],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_low_degrees() {
        let a = rat(7, 5);
        assert_eq!(laguerre(0, &a), Poly::one());
        assert_eq!(laguerre(1, &a), Poly::linear(&a + int(1), int(-1)));
        assert_eq!(
            laguerre(2, &rat(1, 2)),
            Poly::new(vec![rat(15, 8), rat(-5, 2), rat(1, 2)])
        );
        assert!(laguerre(-1, &a).is_zero());
    }

    #[test]
    fn laguerre_leading_coefficient() {
        for n in 0..8 {
            let p = laguerre(n, &rat(3, 7));
            assert_eq!(p.degree(), Some(n as usize));
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(p.leading_coeff().unwrap(), &(sign / factorial(n as usize)));
        }
    }

    #[test]
    fn jacobi_low_degrees() {
        assert_eq!(jacobi(1, &int(0), &int(0)), Poly::x());
        let (a, b) = (rat(2, 3), rat(-5, 4));
        assert_eq!(
            jacobi(1, &a, &b),
            Poly::linear((&a - &b) / int(2), (&a + &b + int(2)) / int(2))
        );
        assert_eq!(jacobi(0, &a, &b), Poly::one());
        assert!(jacobi(-2, &a, &b).is_zero());
        // Legendre P_2 = (3η² − 1)/2
        assert_eq!(jacobi(2, &int(0), &int(0)), Poly::new(vec![rat(-1, 2), int(0), rat(3, 2)]));
    }

    #[test]
    fn jacobi_with_negative_integer_alpha() {
        // α = −1: (α+1)_k vanishes, the folded series must still be right.
        // P_1^{(−1,β)} = (−1−β)/2 + (β+1)η/2
        let b = rat(3, 2);
        assert_eq!(
            jacobi(1, &int(-1), &b),
            Poly::linear((int(-1) - &b) / int(2), (&b + int(1)) / int(2))
        );
        assert!(classical_parity(3, &JacobiParam::new(int(-1), b)).all_hold());
    }

    #[test]
    fn laguerre_identities_by_hand() {
        let r = verify_laguerre_identities(1, &LaguerreParam { alpha: rat(5, 3) });
        assert!(r.all_hold());
        let r = verify_laguerre_identities(2, &LaguerreParam { alpha: rat(-2, 9) });
        assert!(r.all_hold());
        let r = verify_laguerre_identities(3, &LaguerreParam { alpha: rat(7, 3) });
        assert!(r.all_hold());
    }

    #[test]
    fn jacobi_identities_by_hand() {
        assert!(verify_jacobi_identities(1, &JacobiParam::new(int(0), int(0))).all_hold());
        assert!(verify_jacobi_identities(2, &JacobiParam::new(rat(1, 3), rat(3, 4))).all_hold());
        assert!(verify_jacobi_identities(5, &JacobiParam::new(rat(-7, 2), rat(11, 5))).all_hold());
    }

    #[test]
    fn degenerate_parameters_are_flagged() {
        // n + α + β + 1 = 0 at n = 1 kills the linear term.
        let p = JacobiParam::new(rat(-1, 2), rat(-3, 2));
        assert!(jacobi_is_degenerate(1, &p.alpha, &p.beta));
        let r = verify_jacobi_identities(1, &p);
        assert!(r.degenerate);
        assert!(r.all_hold());
    }

    #[test]
    fn parity_cases() {
        assert!(classical_parity(0, &JacobiParam::new(rat(1, 5), rat(9, 2))).all_hold());
        assert!(classical_parity(1, &JacobiParam::new(rat(1, 5), rat(9, 2))).all_hold());
        assert!(classical_parity(4, &JacobiParam::new(rat(5, 2), rat(1, 3))).all_hold());
    }

    #[test]
    fn laguerre_at_origin() {
        let a = rat(-5, 7);
        for n in 0..=10usize {
            let expected = pochhammer(&(&a + int(1)), n) / factorial(n);
            assert_eq!(laguerre(n as i64, &a).eval(&int(0)), expected);
        }
    }
}
