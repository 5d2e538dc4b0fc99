//! x-space wavefunctions, the deformed potential and Schrödinger residuals.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use serde::Serialize;

use super::jet::Jet;
use crate::engine::{p_by, xi_by, Route};
use crate::error::{Error, Result};
use crate::poly::{FloatPoly, Poly};
use crate::rational::to_f64;
use crate::seed::{eigen_data, virtual_state, Family, IndexSpec, SeedType, SystemParams};

/// One deformed system (params, D) and one eigen-index n, with its exact
/// polynomials cached as floats.
#[derive(Debug, Clone)]
pub struct WaveContext {
    pub params: SystemParams,
    pub index: IndexSpec,
    pub n: u32,
    pub xi: Poly,
    pub p: Poly,
    xi_f: FloatPoly,
    p_f: FloatPoly,
    g: f64,
    h: f64,
    /// g + M_I − M_II and h − M_I + M_II.
    g_hat: f64,
    h_hat: f64,
    m_prime: f64,
}

impl WaveContext {
    pub fn new(params: &SystemParams, index: &IndexSpec, n: u32) -> Result<Self> {
        let xi = xi_by(Route::A, params, index)?;
        let p = p_by(Route::A, params, index, n)?;
        Ok(Self::from_polys(params, index, n, xi, p))
    }

    pub fn from_polys(params: &SystemParams, index: &IndexSpec, n: u32, xi: Poly, p: Poly) -> Self {
        let shift = index.m_i() as f64 - index.m_ii() as f64;
        let g = to_f64(params.g());
        let h = to_f64(&params.h());
        WaveContext {
            params: params.clone(),
            index: index.clone(),
            n,
            xi_f: xi.to_f64_coeffs(),
            p_f: p.to_f64_coeffs(),
            xi,
            p,
            g,
            h,
            g_hat: g + shift,
            h_hat: h - shift,
            m_prime: shift / 2.0,
        }
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn xi_float(&self) -> &FloatPoly {
        &self.xi_f
    }

    pub fn p_float(&self) -> &FloatPoly {
        &self.p_f
    }

    /// Exponents of the orthogonality weight: η (L) or (1−η)/2 and (1+η)/2 (J).
    pub fn weight_exponents(&self) -> (f64, f64) {
        (self.g_hat - 0.5, self.h_hat - 0.5)
    }

    /// E_n, unchanged by the deformation.
    pub fn energy(&self) -> f64 {
        let n = f64::from(self.n);
        match self.family() {
            Family::Laguerre => 4.0 * n,
            Family::Jacobi => 4.0 * n * (n + self.g + self.h),
        }
    }

    pub fn eta(&self, x: f64) -> f64 {
        match self.family() {
            Family::Laguerre => x * x,
            Family::Jacobi => (2.0 * x).cos(),
        }
    }

    pub fn x_in_domain(&self, x: f64) -> bool {
        match self.family() {
            Family::Laguerre => x > 0.0 && x.is_finite(),
            Family::Jacobi => x > 0.0 && x < FRAC_PI_2,
        }
    }

    pub fn eta_in_domain(&self, eta: f64) -> bool {
        match self.family() {
            Family::Laguerre => eta > 0.0 && eta.is_finite(),
            Family::Jacobi => eta > -1.0 && eta < 1.0,
        }
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if self.x_in_domain(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("x = {x} outside the physical domain")))
        }
    }

    fn xi_at(&self, eta: f64) -> Result<(f64, f64, f64)> {
        let v = self.xi_f.eval_d2(eta);
        let scale: f64 = self.xi_f.0.iter().rev().fold(0.0, |acc, c| acc * eta.abs() + c.abs());
        if v.0.abs() <= 8.0 * f64::EPSILON * scale {
            return Err(Error::Domain(format!("Ξ_D vanishes at η = {eta}")));
        }
        Ok(v)
    }

    /// Undeformed potential U(x).
    pub fn base_potential(&self, x: f64) -> f64 {
        let (g, h) = (self.g, self.h);
        match self.family() {
            Family::Laguerre => x * x + g * (g - 1.0) / (x * x) - 2.0 * g - 1.0,
            Family::Jacobi => {
                let (s, c) = x.sin_cos();
                g * (g - 1.0) / (s * s) + h * (h - 1.0) / (c * c) - (g + h) * (g + h)
            }
        }
    }

    /// φ̂_0(x) with the shifted couplings.
    pub fn hat_ground(&self, x: f64) -> f64 {
        match self.family() {
            Family::Laguerre => (-0.5 * x * x).exp() * x.powf(self.g_hat),
            Family::Jacobi => {
                let (s, c) = x.sin_cos();
                s.powf(self.g_hat) * c.powf(self.h_hat)
            }
        }
    }
}

/// Orthogonality density in η, up to a positive constant.
pub fn weight_density(ctx: &WaveContext, eta: f64) -> Result<f64> {
    if !ctx.eta_in_domain(eta) {
        return Err(Error::Domain(format!("η = {eta} outside the physical domain")));
    }
    let xi = ctx.xi_at(eta)?.0;
    let (a, b) = ctx.weight_exponents();
    Ok(match ctx.family() {
        Family::Laguerre => (-eta).exp() * eta.powf(a) / (xi * xi),
        Family::Jacobi => ((1.0 - eta) / 2.0).powf(a) * ((1.0 + eta) / 2.0).powf(b) / (xi * xi),
    })
}

/// U_D(x) = U(x) − 2∂²_x log|W[φ̃_{d_1},…,φ̃_{d_M}]|, with log W split into
/// log Ξ_D(η(x)) plus the elementary prefactor.
pub fn deformed_potential(ctx: &WaveContext, x: f64) -> Result<f64> {
    ctx.check_x(x)?;
    let eta = ctx.eta(x);
    let (xi, d1, d2) = ctx.xi_at(eta)?;
    let (r1, r2) = (d1 / xi, d2 / xi);
    let mp = ctx.m_prime;
    let (eta1, eta2, extra) = match ctx.family() {
        Family::Laguerre => {
            let a = mp * (mp + ctx.g - 0.5);
            (2.0 * x, 2.0, 4.0 * a / (x * x) - 4.0 * mp)
        }
        Family::Jacobi => {
            let (s, c) = x.sin_cos();
            let a = mp * (mp + ctx.g - 0.5);
            let b = mp * (mp - ctx.h + 0.5);
            (-2.0 * (2.0 * x).sin(), -4.0 * (2.0 * x).cos(), 4.0 * a / (s * s) + 4.0 * b / (c * c))
        }
    };
    let log_xi_xx = (r2 - r1 * r1) * eta1 * eta1 + r1 * eta2;
    Ok(ctx.base_potential(x) - 2.0 * log_xi_xx + extra)
}

/// φ_{D,n}(x) = c_F^M ψ_D(x) P_{D,n}(η(x)).
pub fn wavefunction(ctx: &WaveContext, x: f64) -> Result<f64> {
    ctx.check_x(x)?;
    let eta = ctx.eta(x);
    let xi = ctx.xi_at(eta)?.0;
    let c = to_f64(&ctx.family().c_f()).powi(ctx.index.m() as i32);
    Ok(c * ctx.hat_ground(x) / xi * ctx.p_f.eval(eta))
}

/// Ten fixed interior sample points per family.
pub fn residual_samples(family: Family) -> Vec<f64> {
    match family {
        Family::Laguerre => (0..10).map(|i| 0.2 + 3.3 * f64::from(i) / 9.0).collect(),
        Family::Jacobi => (0..10).map(|i| FRAC_PI_2 * f64::from(i + 1) / 11.0).collect(),
    }
}

/// max |−φ″ + U_D φ − E_n φ| / ((|E_n| + 1) max|φ|) with a 5-point stencil.
pub fn schrodinger_residual(ctx: &WaveContext, xs: &[f64], h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("stencil step {h} must be positive")));
    }
    let e = ctx.energy();
    let mut worst: f64 = 0.0;
    let mut phi_max: f64 = 0.0;
    for &x in xs {
        if !ctx.x_in_domain(x - 2.0 * h) || !ctx.x_in_domain(x + 2.0 * h) {
            return Err(Error::Domain(format!("stencil step {h} too large at x = {x}")));
        }
        let f = |t: f64| wavefunction(ctx, t);
        let (fm2, fm1, f0, fp1, fp2) = (f(x - 2.0 * h)?, f(x - h)?, f(x)?, f(x + h)?, f(x + 2.0 * h)?);
        let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        let r = (-d2 + (deformed_potential(ctx, x)? - e) * f0).abs();
        worst = worst.max(r);
        phi_max = phi_max.max(f0.abs());
    }
    if phi_max == 0.0 {
        return Ok(worst);
    }
    Ok(worst / ((e.abs() + 1.0) * phi_max))
}

/// x-space jets of the virtual-state wavefunction φ̃_v.
fn seed_jet(params: &SystemParams, v: u32, kind: SeedType, x0: f64, order: usize) -> Result<Jet> {
    let xi = virtual_state(params, v, kind)?.xi.to_f64_coeffs();
    let g = to_f64(params.g());
    let h = to_f64(&params.h());
    let x = Jet::variable(x0, order);
    Ok(match params.family() {
        Family::Laguerre => {
            let sq = &x * &x;
            let (sign, pw) = match kind {
                SeedType::I => (0.5, g),
                SeedType::II => (-0.5, 1.0 - g),
            };
            &(&sq.scale(sign).exp() * &x.powf(pw)) * &sq.compose(&xi)
        }
        Family::Jacobi => {
            let (s, c) = x.sin_cos();
            let eta = x.scale(2.0).sin_cos().1;
            let (ps, pc) = match kind {
                SeedType::I => (g, 1.0 - h),
                SeedType::II => (1.0 - g, h),
            };
            &(&s.powf(ps) * &c.powf(pc)) * &eta.compose(&xi)
        }
    })
}

/// x-space jet of the classical eigenfunction φ_n.
fn eigen_jet(params: &SystemParams, n: u32, x0: f64, order: usize) -> Jet {
    let p = eigen_data(params, n).p.to_f64_coeffs();
    let g = to_f64(params.g());
    let h = to_f64(&params.h());
    let x = Jet::variable(x0, order);
    match params.family() {
        Family::Laguerre => {
            let sq = &x * &x;
            &(&sq.scale(-0.5).exp() * &x.powf(g)) * &sq.compose(&p)
        }
        Family::Jacobi => {
            let (s, c) = x.sin_cos();
            let eta = x.scale(2.0).sin_cos().1;
            &(&s.powf(g) * &c.powf(h)) * &eta.compose(&p)
        }
    }
}

fn wronskian_from_jets(jets: &[Jet]) -> f64 {
    let k = jets.len();
    if k == 0 {
        return 1.0;
    }
    DMatrix::from_fn(k, k, |r, c| jets[c].derivative(r)).determinant()
}

/// W[φ̃_{d_1},…,φ̃_{d_M}](x0) and, when `with_eigen`, W[φ̃_{d_1},…,φ̃_{d_M},φ_n](x0).
pub fn x_wronskians(ctx: &WaveContext, x0: f64) -> Result<(f64, f64)> {
    ctx.check_x(x0)?;
    let m = ctx.index.m();
    let mut jets = ctx
        .index
        .entries()
        .iter()
        .map(|s| seed_jet(&ctx.params, s.degree, s.kind, x0, m))
        .collect::<Result<Vec<_>>>()?;
    let w_xi = wronskian_from_jets(&jets);
    jets.push(eigen_jet(&ctx.params, ctx.n, x0, m));
    Ok((w_xi, wronskian_from_jets(&jets)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XWronskianCheck {
    pub x0: f64,
    pub xi_error: f64,
    pub p_error: f64,
}

impl XWronskianCheck {
    pub fn max_error(&self) -> f64 {
        self.xi_error.max(self.p_error)
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// Compares the float x-space Wronskians with c_F^{M(M∓1)/2} × prefactor ×
/// Ξ_D (resp. P_{D,n}) at `x0`.
pub fn validate_x_wronskian(ctx: &WaveContext, x0: f64) -> Result<XWronskianCheck> {
    let (w_xi, w_p) = x_wronskians(ctx, x0)?;
    let m = ctx.index.m() as i32;
    let c = to_f64(&ctx.family().c_f());
    let eta = ctx.eta(x0);
    let mp = ctx.m_prime;
    let (g, h) = (ctx.g, ctx.h);
    let (pre_xi, pre_p) = match ctx.family() {
        Family::Laguerre => (
            eta.powf(mp * (mp + g - 0.5)) * (mp * eta).exp(),
            eta.powf((mp + 0.5) * (mp + g)) * ((mp - 0.5) * eta).exp(),
        ),
        Family::Jacobi => {
            let (s, co) = x0.sin_cos();
            let (s2, c2) = (s * s, co * co);
            (
                s2.powf(mp * (mp + g - 0.5)) * c2.powf(mp * (mp - h + 0.5)),
                s2.powf((mp + 0.5) * (mp + g)) * c2.powf((mp - 0.5) * (mp - h)),
            )
        }
    };
    let rhs_xi = c.powi(m * (m - 1) / 2) * pre_xi * ctx.xi_f.eval(eta);
    let rhs_p = c.powi(m * (m + 1) / 2) * pre_p * ctx.p_f.eval(eta);
    Ok(XWronskianCheck { x0, xi_error: rel_err(w_xi, rhs_xi), p_error: rel_err(w_p, rhs_p) })
}

/// Three fixed interior points for the Wronskian-constant check.
pub fn xwronskian_samples(family: Family) -> [f64; 3] {
    match family {
        Family::Laguerre => [0.6, 1.1, 1.7],
        Family::Jacobi => [FRAC_PI_2 * 0.25, FRAC_PI_2 * 0.5, FRAC_PI_2 * 0.75],
    }
}

/// Relative gap between [`deformed_potential`] and U − 2∂²log|W| with the
/// second derivative taken by finite differences of the float x-space
/// Wronskian. The step is `rel_step` times the distance to the nearest
/// singular endpoint, and the 5-point result is Richardson-extrapolated
/// from h and 2h.
pub fn potential_fd_gap(ctx: &WaveContext, x: f64, rel_step: f64) -> Result<f64> {
    let dist = match ctx.family() {
        Family::Laguerre => x,
        Family::Jacobi => x.min(FRAC_PI_2 - x),
    };
    let h = rel_step * dist;
    let log_w = |t: f64| -> Result<f64> { Ok(x_wronskians(ctx, t)?.0.abs().ln()) };
    let d2 = |h: f64| -> Result<f64> {
        let (a, b, c, d, e) = (log_w(x - 2.0 * h)?, log_w(x - h)?, log_w(x)?, log_w(x + h)?, log_w(x + 2.0 * h)?);
        Ok((-a + 16.0 * b - 30.0 * c + 16.0 * d - e) / (12.0 * h * h))
    };
    let fd = ctx.base_potential(x) - 2.0 * (16.0 * d2(h)? - d2(2.0 * h)?) / 15.0;
    let an = deformed_potential(ctx, x)?;
    Ok((an - fd).abs() / an.abs().max(1.0))
}
