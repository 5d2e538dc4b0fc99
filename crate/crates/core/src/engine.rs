//! The denominator polynomial Ξ_D and the multi-indexed polynomials P_{D,n},
//! each built three independent ways:
//!
//! * route W: Wronskian of the quasi-polynomials μ_{d_k} (and P_n), with the
//!   non-polynomial prefactors tracked symbolically and cancelled exactly;
//! * route A: determinants of shifted-parameter Laguerre/Jacobi columns
//!   (no derivatives at all), times a power of η or (1±η)/2;
//! * route B: determinants whose even rows use ζ polynomials, the odd/even
//!   row pattern coming from replacing ψ'' by (U − E)ψ.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::classical::{half_one_minus, half_one_plus, jacobi, laguerre};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rational::{as_i64, floor_int, int, pochhammer, pow_i, rat, Rational};
use crate::seed::{eigen_data, virtual_state, Family, IndexSpec, QuasiPoly, Seed, SeedType, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Route {
    W,
    A,
    B,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::W, Route::A, Route::B];

    pub fn name(self) -> &'static str {
        match self {
            Route::W => "w",
            Route::A => "a",
            Route::B => "b",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiResult {
    pub xi: Poly,
    pub p: Poly,
    pub route: Route,
    pub params: SystemParams,
    pub index: IndexSpec,
    pub n: u32,
}

/// Multiplies by `base^k`, dividing exactly when `k < 0`.
fn apply_power(p: &Poly, base: &Poly, k: i64) -> Result<Poly> {
    let factor = base.pow(k.unsigned_abs() as usize);
    if k >= 0 {
        Ok(p * &factor)
    } else {
        p.exact_divide(&factor)
    }
}

fn integral_exponent(q: &Rational, what: &str) -> Result<i64> {
    as_i64(q).ok_or_else(|| Error::InternalExponentMismatch(format!("{what} exponent {q} is not an integer")))
}

/// Half-product M(M±1)/2 as an i64; always integral.
fn triangular(m: i64) -> i64 {
    let t = m * (m + 1);
    debug_assert!(t % 2 == 0);
    t / 2
}

// ---------------------------------------------------------------------------
// Route W
// ---------------------------------------------------------------------------

/// Wronskian-of-quasi-polynomials determinant with every prefactor folded in.
///
/// `pre_*` are the exponents of the external prefactor multiplying the
/// Wronskian. Returns the pure polynomial left after cancellation.
fn wronskian_reduced(
    family: Family,
    columns: &[QuasiPoly],
    pre_exp: i64,
    pre_eta: &Rational,
    pre_minus: &Rational,
    pre_plus: &Rational,
) -> Result<Poly> {
    let size = columns.len();
    let mut derivs: Vec<Vec<QuasiPoly>> = Vec::with_capacity(size);
    for col in columns {
        let mut rows = Vec::with_capacity(size);
        let mut q = col.clone();
        for _ in 0..size {
            let next = q.derivative();
            rows.push(q);
            q = next;
        }
        derivs.push(rows);
    }
    // Row r of column k must carry the column's base exponents shifted by −r.
    for (k, rows) in derivs.iter().enumerate() {
        let base = &rows[0];
        for (r, q) in rows.iter().enumerate() {
            let shift = int(r as i64);
            let ok = q.exp_coef == base.exp_coef
                && q.pow_eta == match family {
                    Family::Laguerre => &base.pow_eta - &shift,
                    Family::Jacobi => base.pow_eta.clone(),
                }
                && q.pow_one_minus == match family {
                    Family::Laguerre => base.pow_one_minus.clone(),
                    Family::Jacobi => &base.pow_one_minus - &shift,
                }
                && q.pow_one_plus == match family {
                    Family::Laguerre => base.pow_one_plus.clone(),
                    Family::Jacobi => &base.pow_one_plus - &shift,
                };
            if !ok {
                return Err(Error::InternalExponentMismatch(format!("row {r} of column {k}")));
            }
        }
    }
    let det = PolyMatrix::from_fn(size, size, |r, k| derivs[k][r].poly.clone()).determinant()?;

    let row_shift = int(triangular(size as i64 - 1));
    let sum = |f: &dyn Fn(&QuasiPoly) -> Rational| columns.iter().map(f).fold(Rational::zero(), |a, b| a + b);
    let net_exp = columns.iter().map(|c| c.exp_coef).sum::<i64>() + pre_exp;
    if net_exp != 0 {
        return Err(Error::InternalExponentMismatch(format!("e^{{{net_exp} η}} left over")));
    }
    match family {
        Family::Laguerre => {
            let net = sum(&|c| c.pow_eta.clone()) - &row_shift + pre_eta;
            apply_power(&det, &Poly::x(), integral_exponent(&net, "η")?)
        }
        Family::Jacobi => {
            let net_m = sum(&|c| c.pow_one_minus.clone()) - &row_shift + pre_minus;
            let net_p = sum(&|c| c.pow_one_plus.clone()) - &row_shift + pre_plus;
            let p = apply_power(&det, &half_one_minus(), integral_exponent(&net_m, "(1−η)/2")?)?;
            apply_power(&p, &half_one_plus(), integral_exponent(&net_p, "(1+η)/2")?)
        }
    }
}

fn seed_mus(params: &SystemParams, index: &IndexSpec) -> Result<Vec<QuasiPoly>> {
    index
        .entries()
        .iter()
        .map(|s| virtual_state(params, s.degree, s.kind).map(|v| v.mu))
        .collect()
}

/// External prefactor exponents of the Wronskian definitions; `shift` is −1/2 for Ξ, +1/2 for P.
fn w_prefactor(params: &SystemParams, index: &IndexSpec, shift: &Rational) -> (i64, Rational, Rational, Rational) {
    let (mi, mii) = (index.m_i() as i64, index.m_ii() as i64);
    let g = params.g();
    let zero = Rational::zero();
    match params.family() {
        Family::Laguerre => (-mi, (int(mi) + g + shift) * int(mii), zero.clone(), zero),
        Family::Jacobi => {
            let minus = (int(mi) + g + shift) * int(mii);
            let plus = (int(mii) + params.h() + shift) * int(mi);
            (0, zero, minus, plus)
        }
    }
}

pub fn xi_route_w(params: &SystemParams, index: &IndexSpec) -> Result<Poly> {
    index.validate(params)?;
    let cols = seed_mus(params, index)?;
    let (e, eta, m, p) = w_prefactor(params, index, &rat(-1, 2));
    wronskian_reduced(params.family(), &cols, e, &eta, &m, &p)
}

pub fn p_route_w(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<Poly> {
    index.validate(params)?;
    let mut cols = seed_mus(params, index)?;
    cols.push(QuasiPoly::polynomial(params.family(), eigen_data(params, n).p));
    let (e, eta, m, p) = w_prefactor(params, index, &rat(1, 2));
    wronskian_reduced(params.family(), &cols, e, &eta, &m, &p)
}

// ---------------------------------------------------------------------------
// Route A
// ---------------------------------------------------------------------------

/// X^{(size)}_{v,j}, j = 1..=size.
fn x_column(params: &SystemParams, seed: Seed, size: usize) -> Vec<Poly> {
    let half = rat(1, 2);
    let g = params.g();
    let h = params.h();
    let v = i64::from(seed.degree);
    let vr = int(v);
    (1..=size)
        .map(|j| {
            let jm1 = j - 1;
            let shift = int(j as i64) - rat(3, 2);
            let sign = if jm1 % 2 == 0 { int(1) } else { int(-1) };
            let power = size - j;
            let two = pow_i(&int(2), -(jm1 as i64));
            match (params.family(), seed.kind) {
                (Family::Laguerre, SeedType::I) => laguerre(v, &(g + &shift)).reflect(),
                (Family::Laguerre, SeedType::II) => {
                    let c = sign * pochhammer(&(g - &half - &vr), jm1);
                    Poly::monomial(c, power) * laguerre(v, &(-g - &shift))
                }
                (Family::Jacobi, SeedType::I) => {
                    let c = sign * two * pochhammer(&(&h - &half - &vr), jm1);
                    half_one_plus().pow(power).scale(&c) * jacobi(v, &(g + &shift), &(-&h - &shift))
                }
                (Family::Jacobi, SeedType::II) => {
                    let c = two * pochhammer(&(g - &half - &vr), jm1);
                    half_one_minus().pow(power).scale(&c) * jacobi(v, &(-g - &shift), &(&h + &shift))
                }
            }
        })
        .collect()
}

/// Z^{(size)}_{n,j}, j = 1..=size.
fn z_column(params: &SystemParams, n: u32, size: usize) -> Vec<Poly> {
    let g = params.g();
    let h = params.h();
    let n = i64::from(n);
    (1..=size)
        .map(|j| {
            let jm1 = j - 1;
            let shift = int(j as i64) - rat(3, 2);
            let deg = n + 1 - j as i64;
            match params.family() {
                Family::Laguerre => {
                    let p = laguerre(deg, &(g + &shift));
                    if jm1 % 2 == 0 {
                        p
                    } else {
                        -p
                    }
                }
                Family::Jacobi => {
                    let c = pow_i(&int(2), -(jm1 as i64)) * pochhammer(&(int(n) + g + &h), jm1);
                    jacobi(deg, &(g + &shift), &(&h + &shift)).scale(&c)
                }
            }
        })
        .collect()
}

fn route_a_prefactor(params: &SystemParams, index: &IndexSpec, det: &Poly) -> Result<Poly> {
    let (mi, mii) = (index.m_i() as i64, index.m_ii() as i64);
    match params.family() {
        Family::Laguerre => apply_power(det, &Poly::x(), -mii * (mii - 1)),
        Family::Jacobi => {
            let p = apply_power(det, &half_one_plus(), -mi * (mi - 1))?;
            apply_power(&p, &half_one_minus(), -mii * (mii - 1))
        }
    }
}

pub fn xi_route_a(params: &SystemParams, index: &IndexSpec) -> Result<Poly> {
    index.validate(params)?;
    let m = index.m();
    let cols: Vec<Vec<Poly>> = index.entries().iter().map(|&s| x_column(params, s, m)).collect();
    let det = PolyMatrix::from_columns(cols)?.determinant()?;
    route_a_prefactor(params, index, &det)
}

pub fn p_route_a(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<Poly> {
    index.validate(params)?;
    let size = index.m() + 1;
    let mut cols: Vec<Vec<Poly>> = index.entries().iter().map(|&s| x_column(params, s, size)).collect();
    cols.push(z_column(params, n, size));
    let det = PolyMatrix::from_columns(cols)?.determinant()?;
    route_a_prefactor(params, index, &det)
}

// ---------------------------------------------------------------------------
// Route B
// ---------------------------------------------------------------------------

/// Column (ξ-like, ζ-like, energy) for the odd/even row pattern.
struct BColumn {
    value: Poly,
    first: Poly,
    energy: Rational,
}

fn b_columns(params: &SystemParams, index: &IndexSpec) -> Result<Vec<BColumn>> {
    index
        .entries()
        .iter()
        .map(|s| {
            let vs = virtual_state(params, s.degree, s.kind)?;
            Ok(BColumn { value: vs.xi, first: vs.zeta_tilde, energy: vs.energy })
        })
        .collect()
}

fn b_determinant(cols: &[BColumn]) -> Result<Poly> {
    let size = cols.len();
    // rows 2l−1 (1-based): (−E)^{l−1} ξ ; rows 2l: (−E)^{l−1} ζ
    let m = PolyMatrix::from_fn(size, size, |r, k| {
        let c = &cols[k];
        let l = (r / 2) as i64;
        let coef = pow_i(&-c.energy.clone(), l);
        if r % 2 == 0 {
            c.value.scale(&coef)
        } else {
            c.first.scale(&coef)
        }
    });
    m.determinant()
}

fn c_f_scale(params: &SystemParams, det: &Poly, exponent: i64) -> Poly {
    det.scale(&pow_i(&params.family().c_f(), exponent))
}

/// Exponent −(a + s)(a + M − 2[M/2]) of the route-B prefactor, with a = [±M'].
fn b_exponent(a: i64, s: i64, m: i64) -> i64 {
    -(a + s) * (a + m - 2 * (m / 2))
}

pub fn xi_route_b(params: &SystemParams, index: &IndexSpec) -> Result<Poly> {
    index.validate(params)?;
    let m = index.m() as i64;
    let cols = b_columns(params, index)?;
    let det = c_f_scale(params, &b_determinant(&cols)?, -triangular(m - 1));
    let fm = i64::try_from(floor_int(&index.m_prime())).expect("small M'");
    let k = b_exponent(fm, 0, m);
    match params.family() {
        Family::Laguerre => apply_power(&det, &Poly::x(), k),
        Family::Jacobi => {
            let p = apply_power(&det, &half_one_minus(), k)?;
            apply_power(&p, &half_one_plus(), k)
        }
    }
}

pub fn p_route_b(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<Poly> {
    index.validate(params)?;
    let m = index.m() as i64;
    let mut cols = b_columns(params, index)?;
    let e = eigen_data(params, n);
    cols.push(BColumn { value: e.p, first: e.zeta, energy: e.energy });
    let det = c_f_scale(params, &b_determinant(&cols)?, -triangular(m));
    let fm = i64::try_from(floor_int(&index.m_prime())).expect("small M'");
    let fmn = i64::try_from(floor_int(&-index.m_prime())).expect("small M'");
    match params.family() {
        Family::Laguerre => apply_power(&det, &Poly::x(), b_exponent(fm, 1, m)),
        Family::Jacobi => {
            let p = apply_power(&det, &half_one_minus(), b_exponent(fm, 1, m))?;
            apply_power(&p, &half_one_plus(), b_exponent(fmn, 1, m))
        }
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

pub fn xi_by(route: Route, params: &SystemParams, index: &IndexSpec) -> Result<Poly> {
    match route {
        Route::W => xi_route_w(params, index),
        Route::A => xi_route_a(params, index),
        Route::B => xi_route_b(params, index),
    }
}

pub fn p_by(route: Route, params: &SystemParams, index: &IndexSpec, n: u32) -> Result<Poly> {
    match route {
        Route::W => p_route_w(params, index, n),
        Route::A => p_route_a(params, index, n),
        Route::B => p_route_b(params, index, n),
    }
}

pub fn compute(route: Route, params: &SystemParams, index: &IndexSpec, n: u32) -> Result<MiResult> {
    Ok(MiResult {
        xi: xi_by(route, params, index)?,
        p: p_by(route, params, index, n)?,
        route,
        params: params.clone(),
        index: index.clone(),
        n,
    })
}

pub fn route_w(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<MiResult> {
    compute(Route::W, params, index, n)
}

pub fn route_a(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<MiResult> {
    compute(Route::A, params, index, n)
}

pub fn route_b(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<MiResult> {
    compute(Route::B, params, index, n)
}

// ---------------------------------------------------------------------------
// Parity
// ---------------------------------------------------------------------------

/// Same degrees, types I ↔ II, order preserved. Jacobi only.
pub fn mirror_reflect(index: &IndexSpec) -> Result<IndexSpec> {
    if index.family() != Family::Jacobi {
        return Err(Error::FamilyMismatch("jacobi"));
    }
    Ok(IndexSpec::unchecked(
        Family::Jacobi,
        index.entries().iter().map(|s| Seed::new(s.degree, s.kind.flipped())).collect(),
    ))
}

/// D′ = D as a set.
pub fn is_mirror_symmetric(index: &IndexSpec) -> bool {
    index.entries().iter().all(|s| index.entries().contains(&Seed::new(s.degree, s.kind.flipped())))
}

fn sign_pow(e: u64) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub key: String,
    /// (−1)^{n + M(M+1)/2 + Σd}
    pub p_sign: i8,
    /// (−1)^{M(M−1)/2 + Σd}
    pub xi_sign: i8,
    pub p_holds: bool,
    pub xi_holds: bool,
    /// Present for mirror-symmetric D: P_{D′,n} = (−1)^{(M/2)²} P_{D,n},
    /// P_{D,n}(−η;(g,h)) = (−1)^n P_{D,n}(η;(h,g)) and Ξ_D(−η;(g,h)) = Ξ_D(η;(h,g)).
    pub mirror_symmetric: Option<bool>,
}

impl ParityReport {
    pub fn holds(&self) -> bool {
        self.p_holds && self.xi_holds && self.mirror_symmetric.unwrap_or(true)
    }
}

pub fn parity_check(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<ParityReport> {
    parity_check_with(Route::A, params, index, n)
}

pub fn parity_check_with(route: Route, params: &SystemParams, index: &IndexSpec, n: u32) -> Result<ParityReport> {
    if params.family() != Family::Jacobi {
        return Err(Error::FamilyMismatch("jacobi"));
    }
    index.validate(params)?;
    let swapped = params.swapped()?;
    let reflected = mirror_reflect(index)?;
    reflected.validate(&swapped)?;

    let m = index.m() as u64;
    let dsum = index.degree_sum();
    let p_sign = sign_pow(u64::from(n) + m * (m + 1) / 2 + dsum);
    let xi_sign = sign_pow(m * m.saturating_sub(1) / 2 + dsum);

    let p_lhs = p_by(route, params, index, n)?.reflect();
    let p_rhs = p_by(route, &swapped, &reflected, n)?.scale(&p_sign);
    let xi_lhs = xi_by(route, params, index)?.reflect();
    let xi_rhs = xi_by(route, &swapped, &reflected)?.scale(&xi_sign);

    let mirror_symmetric = if is_mirror_symmetric(index) && m > 0 {
        let half_m = m / 2;
        let p_d = p_by(route, params, index, n)?;
        let p_dprime = p_by(route, params, &IndexSpec::new(params, reflected.entries().to_vec())?, n)?;
        let same_set = p_dprime == p_d.scale(&sign_pow(half_m * half_m));
        let p_special = p_lhs == p_by(route, &swapped, index, n)?.scale(&sign_pow(u64::from(n)));
        let xi_special = xi_lhs == xi_by(route, &swapped, index)?;
        Some(same_set && p_special && xi_special)
    } else {
        None
    };

    let to_i8 = |s: &Rational| if s.is_one() { 1 } else { -1 };
    Ok(ParityReport {
        key: crate::case::CaseKey::new(params, index, n).to_string(),
        p_sign: to_i8(&p_sign),
        xi_sign: to_i8(&xi_sign),
        p_holds: p_lhs == p_rhs,
        xi_holds: xi_lhs == xi_rhs,
        mirror_symmetric,
    })
}
