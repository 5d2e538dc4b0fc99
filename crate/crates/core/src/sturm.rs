//! Distinct real-root counting with Sturm chains over ℚ.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

/// Sturm chain p, p', -rem(p, p'), ... of a square-free polynomial.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_at(p: &Poly, at: &Bound) -> Ordering {
    let Some(deg) = p.degree() else {
        return Ordering::Equal;
    };
    let lead = p.leading_coeff().unwrap();
    let s = match at {
        Bound::Finite(x) => p.eval(x),
        Bound::PosInfinity => lead.clone(),
        Bound::NegInfinity if deg % 2 == 1 => -lead,
        Bound::NegInfinity => lead.clone(),
    };
    s.cmp(&Rational::zero())
}

/// Sign changes along the chain, zeros skipped.
fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_root_count(p: &Poly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ordered = match (lo, hi) {
        (Bound::Finite(a), Bound::Finite(b)) => a < b,
        (Bound::PosInfinity, _) | (_, Bound::NegInfinity) => false,
        _ => true,
    };
    if !ordered {
        return Ok(0);
    }
    // Square-free part: all roots simple, same distinct roots.
    let sf = p.exact_divide(&p.gcd(&p.derivative()))?;
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    // At a root r of sf, dropping the zero gives the count just right of r,
    // and just left of r it is one more.
    let v_lo = variations(chain.iter().map(|q| sign_at(q, lo)));
    let mut v_hi = variations(chain.iter().map(|q| sign_at(q, hi)));
    if sign_at(&sf, hi) == Ordering::Equal {
        v_hi += 1;
    }
    Ok(v_lo.saturating_sub(v_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn fin(n: i64) -> Bound {
        Bound::Finite(int(n))
    }

    #[test]
    fn linear_outside_interval() {
        let p = Poly::from_ints(&[3, 1]);
        assert_eq!(sturm_root_count(&p, &fin(0), &Bound::PosInfinity).unwrap(), 0);
        assert_eq!(sturm_root_count(&p, &Bound::NegInfinity, &fin(0)).unwrap(), 1);
    }

    #[test]
    fn two_roots_in_window() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_root_count(&p, &fin(-2), &fin(2)).unwrap(), 2);
        assert_eq!(sturm_root_count(&p, &fin(-1), &fin(1)).unwrap(), 0);
        assert_eq!(sturm_root_count(&p, &fin(-1), &fin(2)).unwrap(), 1);
    }

    #[test]
    fn double_root_counted_once() {
        let p = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(sturm_root_count(&p, &fin(-1), &fin(1)).unwrap(), 1);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            sturm_root_count(&Poly::zero(), &fin(0), &fin(1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn constants_have_no_roots() {
        assert_eq!(sturm_root_count(&Poly::from_ints(&[5]), &Bound::NegInfinity, &Bound::PosInfinity).unwrap(), 0);
    }

    proptest! {
        #[test]
        fn matches_constructed_roots(
            roots in prop::collection::vec((-8i64..=8, 1i64..=3), 1..6),
            lo in -9i64..=9,
            width in 1i64..=12,
        ) {
            let mut p = Poly::one();
            let mut distinct: Vec<Rational> = Vec::new();
            for (n, d) in &roots {
                let r = rat(*n, *d);
                p = &p * &Poly::linear(-r.clone(), int(1));
                if !distinct.contains(&r) {
                    distinct.push(r);
                }
            }
            let (a, b) = (rat(2 * lo + 1, 2), rat(2 * lo + 1, 2) + int(width));
            let expected = distinct.iter().filter(|r| **r > a && **r < b).count();
            let got = sturm_root_count(&p, &Bound::Finite(a), &Bound::Finite(b)).unwrap();
            prop_assert_eq!(got, expected);
            // integer endpoints may coincide with roots
            let (a, b) = (int(lo), int(lo + width));
            let expected = distinct.iter().filter(|r| **r > a && **r < b).count();
            let got = sturm_root_count(&p, &Bound::Finite(a), &Bound::Finite(b)).unwrap();
            prop_assert_eq!(got, expected);
        }
    }
}
