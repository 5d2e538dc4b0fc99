//! System parameters, multi-index sets and the seed (virtual state) data.
//!
//! Everything here lives in η-space: ξ_v, the quasi-polynomials μ_v and their
//! derivatives, the eigenpolynomials P_n with energies E_n, and the
//! first-derivative polynomials ζ_n, ζ̃_v.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::{half_one_minus, half_one_plus, jacobi, laguerre};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{greatest_integer_less_than, int, pochhammer, pow_i, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Laguerre,
    Jacobi,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Laguerre => "L",
            Family::Jacobi => "J",
        }
    }

    /// Normalization constant between x-space Wronskians and η-space polynomials.
    pub fn c_f(self) -> Rational {
        match self {
            Family::Laguerre => int(2),
            Family::Jacobi => int(-4),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeedType {
    I,
    II,
}

impl SeedType {
    pub fn flipped(self) -> SeedType {
        match self {
            SeedType::I => SeedType::II,
            SeedType::II => SeedType::I,
        }
    }
}

impl fmt::Display for SeedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedType::I => "I",
            SeedType::II => "II",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemParams {
    family: Family,
    g: Rational,
    h: Option<Rational>,
}

impl SystemParams {
    /// g ≥ 1/2. The boundary value only admits Type I seeds and reduces to
    /// the classical weight with exponent 0.
    pub fn laguerre(g: Rational) -> Result<Self> {
        if g < rat(1, 2) {
            return Err(Error::InvalidParams(format!("g = {g} must be at least 1/2")));
        }
        Ok(SystemParams { family: Family::Laguerre, g, h: None })
    }

    pub fn jacobi(g: Rational, h: Rational) -> Result<Self> {
        if g < rat(1, 2) || h < rat(1, 2) {
            return Err(Error::InvalidParams(format!("g = {g}, h = {h} must both be at least 1/2")));
        }
        Ok(SystemParams { family: Family::Jacobi, g, h: Some(h) })
    }

    pub fn new(family: Family, g: Rational, h: Option<Rational>) -> Result<Self> {
        match family {
            Family::Laguerre => SystemParams::laguerre(g),
            Family::Jacobi => {
                let h = h.ok_or_else(|| Error::InvalidParams("jacobi family needs h".into()))?;
                SystemParams::jacobi(g, h)
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn g(&self) -> &Rational {
        &self.g
    }

    /// `h` for the Jacobi family, zero for Laguerre (where it never enters).
    pub fn h(&self) -> Rational {
        self.h.clone().unwrap_or_else(Rational::zero)
    }

    pub fn h_opt(&self) -> Option<&Rational> {
        self.h.as_ref()
    }

    /// (g, h) → (h, g); Jacobi only.
    pub fn swapped(&self) -> Result<Self> {
        match &self.h {
            Some(h) => SystemParams::jacobi(h.clone(), self.g.clone()),
            None => Err(Error::FamilyMismatch("jacobi")),
        }
    }

    /// Largest admissible seed degree for a type, `None` when unbounded.
    pub fn max_degree(&self, kind: SeedType) -> Option<i64> {
        let half = rat(1, 2);
        let bound = match (self.family, kind) {
            (Family::Laguerre, SeedType::I) => return None,
            (Family::Laguerre, SeedType::II) | (Family::Jacobi, SeedType::II) => {
                greatest_integer_less_than(&(&self.g - &half))
            }
            (Family::Jacobi, SeedType::I) => greatest_integer_less_than(&(self.h() - &half)),
        };
        Some(bound.to_i64().unwrap_or(i64::MAX))
    }

    pub fn check_seed(&self, v: u32, kind: SeedType) -> Result<()> {
        match self.max_degree(kind) {
            Some(max) if i64::from(v) > max => Err(Error::OutOfRange { v, kind: kind.to_string(), max }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seed {
    pub degree: u32,
    pub kind: SeedType,
}

impl Seed {
    pub fn new(degree: u32, kind: SeedType) -> Self {
        Seed { degree, kind }
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.degree)
    }
}

/// Ordered multi-index D = ((d_1, t_1), …, (d_M, t_M)).
///
/// Order is significant: permuting entries flips signs of every determinant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSpec {
    family: Family,
    entries: Vec<Seed>,
}

impl IndexSpec {
    /// Validates ranges for `params` and rejects repeated seeds.
    pub fn new(params: &SystemParams, entries: Vec<Seed>) -> Result<Self> {
        let spec = IndexSpec { family: params.family(), entries };
        spec.validate(params)?;
        Ok(spec)
    }

    pub fn empty(family: Family) -> Self {
        IndexSpec { family, entries: Vec::new() }
    }

    pub(crate) fn unchecked(family: Family, entries: Vec<Seed>) -> Self {
        IndexSpec { family, entries }
    }

    pub fn validate(&self, params: &SystemParams) -> Result<()> {
        if self.family != params.family() {
            return Err(Error::FamilyMismatch(match self.family {
                Family::Laguerre => "laguerre",
                Family::Jacobi => "jacobi",
            }));
        }
        for (i, s) in self.entries.iter().enumerate() {
            if self.entries[..i].contains(s) {
                return Err(Error::DuplicateSeed { v: s.degree, kind: s.kind.to_string() });
            }
            params.check_seed(s.degree, s.kind)?;
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn entries(&self) -> &[Seed] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn m_i(&self) -> usize {
        self.entries.iter().filter(|s| s.kind == SeedType::I).count()
    }

    pub fn m_ii(&self) -> usize {
        self.m() - self.m_i()
    }

    /// M' = (M_I − M_II)/2.
    pub fn m_prime(&self) -> Rational {
        rat(self.m_i() as i64 - self.m_ii() as i64, 2)
    }

    pub fn degree_sum(&self) -> u64 {
        self.entries.iter().map(|s| u64::from(s.degree)).sum()
    }

    /// Compact `I1,II2` rendering (empty string for D = ∅).
    pub fn render(&self) -> String {
        self.entries.iter().map(Seed::to_string).collect::<Vec<_>>().join(",")
    }
}

/// prefactor × polynomial, closed under d/dη.
///
/// Laguerre: e^{aη} η^b p(η). Jacobi: ((1−η)/2)^c ((1+η)/2)^d p(η).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    pub family: Family,
    pub exp_coef: i64,
    pub pow_eta: Rational,
    pub pow_one_minus: Rational,
    pub pow_one_plus: Rational,
    pub poly: Poly,
}

impl QuasiPoly {
    pub fn polynomial(family: Family, poly: Poly) -> Self {
        QuasiPoly {
            family,
            exp_coef: 0,
            pow_eta: Rational::zero(),
            pow_one_minus: Rational::zero(),
            pow_one_plus: Rational::zero(),
            poly,
        }
    }

    /// Formal d/dη. The power exponents (b, or c and d) drop by exactly one
    /// and the polynomial part absorbs the rest.
    pub fn derivative(&self) -> QuasiPoly {
        let one = Rational::one();
        let mut out = self.clone();
        match self.family {
            Family::Laguerre => {
                // d(e^{aη} η^b p) = e^{aη} η^{b−1} (aηp + bp + ηp')
                let eta = Poly::x();
                let p = &self.poly;
                let term = &(&eta * p).scale(&int(self.exp_coef)) + &p.scale(&self.pow_eta);
                out.poly = &term + &(&eta * &p.derivative());
                out.pow_eta = &self.pow_eta - &one;
            }
            Family::Jacobi => {
                // d/dη ((1−η)/2)^c = −(c/2) ((1−η)/2)^{c−1}, likewise +(d/2) for (1+η)/2
                let (m, pl) = (half_one_minus(), half_one_plus());
                let p = &self.poly;
                let c_half = &self.pow_one_minus / int(2);
                let d_half = &self.pow_one_plus / int(2);
                let a = (&pl * p).scale(&-c_half);
                let b = (&m * p).scale(&d_half);
                let c = &(&m * &pl) * &p.derivative();
                out.poly = &(&a + &b) + &c;
                out.pow_one_minus = &self.pow_one_minus - &one;
                out.pow_one_plus = &self.pow_one_plus - &one;
            }
        }
        out
    }

    /// Moves every factor of η (resp. (1∓η)/2) from the polynomial part into
    /// the prefactor, so equal functions get equal representations.
    pub fn canonical(&self) -> QuasiPoly {
        let mut out = self.clone();
        if out.poly.is_zero() {
            return QuasiPoly::polynomial(self.family, Poly::zero());
        }
        match self.family {
            Family::Laguerre => {
                let k = out.poly.root_multiplicity(&Rational::zero());
                for _ in 0..k {
                    out.poly = out.poly.exact_divide(&Poly::x()).expect("root at zero");
                }
                out.pow_eta += int(k as i64);
            }
            Family::Jacobi => {
                let k = out.poly.root_multiplicity(&int(1));
                for _ in 0..k {
                    out.poly = out.poly.exact_divide(&half_one_minus()).expect("root at one");
                }
                out.pow_one_minus += int(k as i64);
                let k = out.poly.root_multiplicity(&int(-1));
                for _ in 0..k {
                    out.poly = out.poly.exact_divide(&half_one_plus()).expect("root at minus one");
                }
                out.pow_one_plus += int(k as i64);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualState {
    pub v: u32,
    pub kind: SeedType,
    pub xi: Poly,
    pub mu: QuasiPoly,
    pub energy: Rational,
    pub zeta_tilde: Poly,
}

pub fn virtual_state(params: &SystemParams, v: u32, kind: SeedType) -> Result<VirtualState> {
    params.check_seed(v, kind)?;
    let half = rat(1, 2);
    let g = params.g();
    let h = params.h();
    let vr = int(i64::from(v));
    let vi = i64::from(v);
    let four = int(-4);
    let mut mu = QuasiPoly::polynomial(params.family(), Poly::zero());

    let (xi, energy, zeta_tilde) = match (params.family(), kind) {
        (Family::Laguerre, SeedType::I) => {
            let xi = laguerre(vi, &(g - &half)).reflect();
            let e = &four * (g + &vr + &half);
            let zt = (&Poly::x() * &laguerre(vi, &(g + &half)).reflect()).scale(&int(2));
            mu.exp_coef = 1;
            (xi, e, zt)
        }
        (Family::Laguerre, SeedType::II) => {
            let xi = laguerre(vi, &(&half - g));
            let e = &four * (g - &vr - &half);
            let zt = laguerre(vi, &(-g - &half)).scale(&(int(-2) * (g - &half - &vr)));
            mu.pow_eta = &half - g;
            (xi, e, zt)
        }
        (Family::Jacobi, SeedType::I) => {
            let xi = jacobi(vi, &(g - &half), &(&half - &h));
            let e = &four * (g + &vr + &half) * (&h - &vr - &half);
            let zt = (&Poly::linear(int(1), int(-1)) * &jacobi(vi, &(g + &half), &(-&h - &half)))
                .scale(&(&h - &half - &vr));
            mu.pow_one_plus = &half - &h;
            (xi, e, zt)
        }
        (Family::Jacobi, SeedType::II) => {
            let xi = jacobi(vi, &(&half - g), &(&h - &half));
            let e = &four * (g - &vr - &half) * (&h + &vr + &half);
            let zt = (&Poly::linear(int(1), int(1)) * &jacobi(vi, &(-g - &half), &(&h + &half)))
                .scale(&-(g - &half - &vr));
            mu.pow_one_minus = &half - g;
            (xi, e, zt)
        }
    };
    mu.poly = xi.clone();
    Ok(VirtualState { v, kind, xi, mu, energy, zeta_tilde })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData {
    pub p: Poly,
    pub energy: Rational,
    pub zeta: Poly,
}

pub fn eigen_data(params: &SystemParams, n: u32) -> EigenData {
    let half = rat(1, 2);
    let g = params.g();
    let ni = i64::from(n);
    let nr = int(ni);
    match params.family() {
        Family::Laguerre => EigenData {
            p: laguerre(ni, &(g - &half)),
            energy: int(4) * &nr,
            zeta: (&Poly::x() * &laguerre(ni - 1, &(g + &half))).scale(&int(-2)),
        },
        Family::Jacobi => {
            let h = params.h();
            let one_minus_sq = Poly::from_ints(&[1, 0, -1]);
            EigenData {
                p: jacobi(ni, &(g - &half), &(&h - &half)),
                energy: int(4) * &nr * (&nr + g + &h),
                zeta: (&one_minus_sq * &jacobi(ni - 1, &(g + &half), &(&h + &half)))
                    .scale(&(-(&nr + g + &h) / int(2))),
            }
        }
    }
}

/// ∂_η^{j−1} μ_v by repeated formal differentiation, canonicalized.
pub fn mu_derivative_repeated(params: &SystemParams, v: u32, kind: SeedType, j: u32) -> Result<QuasiPoly> {
    if j == 0 {
        return Err(Error::InvalidParams("derivative index j starts at 1".into()));
    }
    let mut q = virtual_state(params, v, kind)?.mu;
    for _ in 1..j {
        q = q.derivative();
    }
    Ok(q.canonical())
}

/// ∂_η^{j−1} μ_v from the shifted-parameter closed forms, canonicalized.
pub fn mu_derivative_closed(params: &SystemParams, v: u32, kind: SeedType, j: u32) -> Result<QuasiPoly> {
    if j == 0 {
        return Err(Error::InvalidParams("derivative index j starts at 1".into()));
    }
    params.check_seed(v, kind)?;
    let half = rat(1, 2);
    let g = params.g();
    let h = params.h();
    let vi = i64::from(v);
    let vr = int(vi);
    let jm1 = (j - 1) as usize;
    let jr = int(i64::from(j));
    let sign = if jm1 % 2 == 0 { int(1) } else { int(-1) };
    let two_pow = pow_i(&int(2), -(jm1 as i64));
    let shift = &jr - rat(3, 2); // j − 3/2
    let mut q = QuasiPoly::polynomial(params.family(), Poly::zero());
    match (params.family(), kind) {
        (Family::Laguerre, SeedType::I) => {
            q.exp_coef = 1;
            q.poly = laguerre(vi, &(g + &shift)).reflect();
        }
        (Family::Laguerre, SeedType::II) => {
            let coef = sign * pochhammer(&(g - &half - &vr), jm1);
            q.pow_eta = -g - &shift;
            q.poly = laguerre(vi, &(-g - &shift)).scale(&coef);
        }
        (Family::Jacobi, SeedType::I) => {
            let coef = sign * two_pow * pochhammer(&(&h - &half - &vr), jm1);
            q.pow_one_plus = -&h - &shift;
            q.poly = jacobi(vi, &(g + &shift), &(-&h - &shift)).scale(&coef);
        }
        (Family::Jacobi, SeedType::II) => {
            let coef = two_pow * pochhammer(&(g - &half - &vr), jm1);
            q.pow_one_minus = -g - &shift;
            q.poly = jacobi(vi, &(-g - &shift), &(&h + &shift)).scale(&coef);
        }
    }
    Ok(q.canonical())
}

/// Energy sign helper for reports: true when Ẽ_v < 0.
pub fn is_negative_energy(state: &VirtualState) -> bool {
    state.energy.is_negative()
}

/// Largest seed degree usable in enumeration for a type, capped at `cap`.
pub fn degree_cap(params: &SystemParams, kind: SeedType, cap: u32) -> Option<u32> {
    match params.max_degree(kind) {
        None => Some(cap),
        Some(m) if m < 0 => None,
        Some(m) => Some(cap.min(u32::try_from(m).unwrap_or(u32::MAX))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lag(g: Rational) -> SystemParams {
        SystemParams::laguerre(g).unwrap()
    }

    fn jac(g: Rational, h: Rational) -> SystemParams {
        SystemParams::jacobi(g, h).unwrap()
    }

    #[test]
    fn parameter_bounds() {
        assert!(SystemParams::laguerre(rat(1, 3)).is_err());
        assert!(SystemParams::jacobi(int(1), rat(2, 5)).is_err());
        // at the boundary no Type II (nor Jacobi Type I) seed survives
        let p = SystemParams::jacobi(rat(1, 2), rat(1, 2)).unwrap();
        assert!(p.check_seed(0, SeedType::I).is_err());
        assert!(p.check_seed(0, SeedType::II).is_err());
        assert!(SystemParams::new(Family::Jacobi, int(1), None).is_err());
    }

    #[test]
    fn index_ranges() {
        let p = lag(rat(7, 3));
        assert_eq!(p.max_degree(SeedType::I), None);
        assert_eq!(p.max_degree(SeedType::II), Some(1));
        let p = jac(rat(7, 3), rat(11, 4));
        assert_eq!(p.max_degree(SeedType::I), Some(2));
        assert_eq!(p.max_degree(SeedType::II), Some(1));
        // g − 1/2 = 2 exactly: the boundary degree itself is excluded
        let p = lag(rat(5, 2));
        assert_eq!(p.max_degree(SeedType::II), Some(1));
        assert!(IndexSpec::new(&p, vec![Seed::new(2, SeedType::II)]).is_err());
    }

    #[test]
    fn duplicates_rejected() {
        let p = lag(rat(7, 3));
        let e = IndexSpec::new(&p, vec![Seed::new(1, SeedType::I), Seed::new(1, SeedType::I)]);
        assert!(matches!(e, Err(Error::DuplicateSeed { v: 1, .. })));
        assert!(IndexSpec::new(&p, vec![Seed::new(1, SeedType::I), Seed::new(1, SeedType::II)]).is_ok());
    }

    #[test]
    fn counts_and_m_prime() {
        let p = jac(rat(7, 3), rat(11, 4));
        let d = IndexSpec::new(
            &p,
            vec![Seed::new(1, SeedType::I), Seed::new(1, SeedType::II), Seed::new(2, SeedType::I)],
        )
        .unwrap();
        assert_eq!((d.m(), d.m_i(), d.m_ii()), (3, 2, 1));
        assert_eq!(d.m_prime(), rat(1, 2));
        assert_eq!(d.render(), "I1,II1,I2");
    }

    #[test]
    fn virtual_state_energies() {
        let s = virtual_state(&lag(rat(5, 2)), 1, SeedType::I).unwrap();
        assert_eq!(s.energy, int(-16));
        let s = virtual_state(&jac(rat(3, 2), rat(5, 2)), 0, SeedType::I).unwrap();
        assert_eq!(s.energy, int(-16));
    }

    #[test]
    fn virtual_state_polynomials() {
        let p = lag(rat(7, 3));
        let s = virtual_state(&p, 0, SeedType::I).unwrap();
        assert_eq!(s.zeta_tilde, Poly::from_ints(&[0, 2]));
        let s = virtual_state(&lag(rat(5, 2)), 1, SeedType::II).unwrap();
        assert_eq!(s.xi, Poly::from_ints(&[-1, -1]));
        assert!(matches!(
            virtual_state(&lag(rat(5, 2)), 2, SeedType::II),
            Err(Error::OutOfRange { v: 2, .. })
        ));
    }

    #[test]
    fn eigen_values() {
        let e = eigen_data(&jac(rat(3, 2), rat(5, 2)), 1);
        assert_eq!(e.energy, int(20));
        let p = lag(rat(7, 3));
        assert!(eigen_data(&p, 0).zeta.is_zero());
        assert_eq!(eigen_data(&p, 1).zeta, Poly::from_ints(&[0, -2]));
        assert_eq!(eigen_data(&p, 3).energy, int(12));
    }

    #[test]
    fn mu_derivative_examples() {
        let g = rat(7, 3);
        let p = lag(g.clone());
        // j = 1 leaves μ_v untouched
        let mu = virtual_state(&p, 1, SeedType::II).unwrap().mu.canonical();
        assert_eq!(mu_derivative_repeated(&p, 1, SeedType::II, 1).unwrap(), mu);
        // L2, v = 0, j = 2: (1/2 − g) η^{−1/2−g}
        let d = mu_derivative_repeated(&p, 0, SeedType::II, 2).unwrap();
        assert_eq!(d.pow_eta, rat(-1, 2) - &g);
        assert_eq!(d.poly, Poly::constant(rat(1, 2) - &g));
        assert_eq!(d, mu_derivative_closed(&p, 0, SeedType::II, 2).unwrap());
        // L1, v = 1, j = 2: e^η (g + 3/2 + η)
        let d = mu_derivative_repeated(&p, 1, SeedType::I, 2).unwrap();
        assert_eq!(d.exp_coef, 1);
        assert_eq!(d.pow_eta, int(0));
        assert_eq!(d.poly, Poly::linear(&g + rat(3, 2), int(1)));
    }

    #[test]
    fn closed_forms_match_repeated_differentiation() {
        let params = [lag(rat(7, 3)), lag(rat(9, 2)), jac(rat(7, 3), rat(11, 4)), jac(rat(9, 2), rat(17, 4))];
        for p in &params {
            for kind in [SeedType::I, SeedType::II] {
                for v in 0..=3 {
                    if p.check_seed(v, kind).is_err() {
                        continue;
                    }
                    for j in 1..=5 {
                        let a = mu_derivative_repeated(p, v, kind, j).unwrap();
                        let b = mu_derivative_closed(p, v, kind, j).unwrap();
                        assert_eq!(a, b, "{:?} v={v} {kind} j={j}", p.family());
                    }
                }
            }
        }
    }

    #[test]
    fn derivative_lowers_exponents_by_one() {
        let p = jac(rat(7, 3), rat(11, 4));
        let mu = virtual_state(&p, 1, SeedType::II).unwrap().mu;
        let d = mu.derivative();
        assert_eq!(d.pow_one_minus, &mu.pow_one_minus - int(1));
        assert_eq!(d.pow_one_plus, &mu.pow_one_plus - int(1));
        let p = lag(rat(7, 3));
        let mu = virtual_state(&p, 1, SeedType::I).unwrap().mu;
        assert_eq!(mu.derivative().pow_eta, &mu.pow_eta - int(1));
    }

    #[test]
    fn xi_is_polynomial_part_of_mu() {
        for p in [lag(rat(7, 3)), jac(rat(7, 3), rat(11, 4))] {
            for kind in [SeedType::I, SeedType::II] {
                for v in 0..=1 {
                    let s = virtual_state(&p, v, kind).unwrap();
                    assert_eq!(s.mu.poly, s.xi);
                    assert!(is_negative_energy(&s));
                }
            }
        }
    }

    /// Applies (d/dx − φ_0'/φ_0) to the seed (or eigen) wavefunction and
    /// rewrites the result in η, independently of the stored ζ formulas:
    /// c_F ζ = (Δ log-derivative)·η'·ξ + η'²·ξ'.
    fn reduced_first_derivative(p: &SystemParams, kind: Option<SeedType>, xi: &Poly) -> Poly {
        let half = rat(1, 2);
        let d = xi.derivative();
        let eta = Poly::x();
        let one_minus_sq = Poly::from_ints(&[1, 0, -1]);
        match (p.family(), kind) {
            (Family::Laguerre, None) => (&eta * &d).scale(&int(2)),
            (Family::Laguerre, Some(SeedType::I)) => (&eta * &(xi + &d)).scale(&int(2)),
            (Family::Laguerre, Some(SeedType::II)) => {
                &xi.scale(&(int(1) - int(2) * p.g())) + &(&eta * &d).scale(&int(2))
            }
            (Family::Jacobi, None) => -(&one_minus_sq * &d),
            (Family::Jacobi, Some(SeedType::I)) => {
                let a = (&Poly::linear(int(1), int(-1)) * xi).scale(&((p.h() - &half) * int(1)));
                &a - &(&one_minus_sq * &d)
            }
            (Family::Jacobi, Some(SeedType::II)) => {
                let a = (&Poly::linear(int(1), int(1)) * xi).scale(&(&half - p.g()));
                &a - &(&one_minus_sq * &d)
            }
        }
    }

    #[test]
    fn zeta_polynomials_reproduce_first_derivative_reduction() {
        for p in [lag(rat(7, 3)), lag(rat(9, 2)), jac(rat(7, 3), rat(11, 4)), jac(rat(3, 2), rat(5, 2))] {
            for kind in [SeedType::I, SeedType::II] {
                for v in 0..=3 {
                    let Ok(s) = virtual_state(&p, v, kind) else { continue };
                    assert_eq!(reduced_first_derivative(&p, Some(kind), &s.xi), s.zeta_tilde);
                }
            }
            for n in 0..=5 {
                let e = eigen_data(&p, n);
                assert_eq!(reduced_first_derivative(&p, None, &e.p), e.zeta);
            }
        }
    }

    #[test]
    fn degree_caps() {
        let p = lag(rat(7, 3));
        assert_eq!(degree_cap(&p, SeedType::I, 3), Some(3));
        assert_eq!(degree_cap(&p, SeedType::II, 3), Some(1));
    }
}
