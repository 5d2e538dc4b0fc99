//! Composite Gauss–Legendre inner products of P_{D,n} against the deformed
//! weight, with geometric grading toward singular endpoints.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::Serialize;

use super::wave::WaveContext;
use crate::engine::{p_by, Route};
use crate::error::{Error, Result};
use crate::poly::FloatPoly;
use crate::seed::{Family, IndexSpec, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Gauss–Legendre points per panel.
    pub order: usize,
    /// Lower order used on the same panels to estimate discretization error.
    pub check_order: usize,
    /// Width of the uniform Laguerre panels past η = 1.
    pub panel_width: f64,
    /// First and largest truncation radius tried (Laguerre only).
    pub min_radius: f64,
    pub max_radius: f64,
    /// Required bound on (tail + discretization) relative to the norm scale.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { order: 32, check_order: 20, panel_width: 2.0, min_radius: 30.0, max_radius: 400.0, tol: 1e-12 }
    }
}

/// Node in η with the endpoint distances kept separately, so graded panels
/// near η = ±1 do not lose precision in (1 ∓ η)/2.
#[derive(Debug, Clone, Copy)]
struct Node {
    eta: f64,
    half_minus: f64,
    half_plus: f64,
    w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gram {
    /// ⟨P_i, P_j⟩ for i, j ≤ max n.
    pub matrix: Vec<Vec<f64>>,
    pub tail_estimate: f64,
    pub discretization_estimate: f64,
    /// Truncation radius (Laguerre).
    pub radius: Option<f64>,
}

impl Gram {
    /// |⟨P_n, P_m⟩| / sqrt(⟨P_n,P_n⟩⟨P_m,P_m⟩).
    pub fn normalized(&self, n: usize, m: usize) -> f64 {
        self.matrix[n][m].abs() / (self.matrix[n][n] * self.matrix[m][m]).sqrt()
    }

    pub fn max_cross(&self) -> f64 {
        let k = self.matrix.len();
        (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.normalized(i, j))
            .fold(0.0, f64::max)
    }

    pub fn min_norm(&self) -> f64 {
        (0..self.matrix.len()).map(|i| self.matrix[i][i]).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthoResult {
    pub n: u32,
    pub m: u32,
    /// Normalized cross product for n ≠ m, the norm integral for n = m.
    pub value: f64,
    pub tail_estimate: f64,
    pub discretization_estimate: f64,
}

fn rule(order: usize) -> Result<GaussLegendre> {
    let n = NonZeroUsize::new(order).ok_or_else(|| Error::Quadrature("rule order must be positive".into()))?;
    Ok(GaussLegendre::new(n))
}

/// Graded levels so that the uncovered piece [0, ε] near an endpoint with
/// power a satisfies ε^{a+1} ≲ 1e−17.
fn levels_for(power: f64) -> Result<usize> {
    if power <= -1.0 {
        return Err(Error::Quadrature(format!("weight exponent {power} is not integrable")));
    }
    Ok(((17.0 * 10f64.log2()) / (power + 1.0)).ceil().max(8.0) as usize)
}

/// Panels in distance t from a singular endpoint, covering (0, 1], finest first.
fn graded(levels: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.5f64.powi(levels as i32))];
    for k in (0..levels).rev() {
        out.push((0.5f64.powi(k as i32 + 1), 0.5f64.powi(k as i32)));
    }
    out
}

fn push_panel(out: &mut Vec<Node>, gl: &GaussLegendre, lo: f64, hi: f64, map: impl Fn(f64) -> (f64, f64, f64)) {
    let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
    for &(x, w) in gl.as_node_weight_pairs() {
        let (eta, hm, hp) = map(mid + half * x);
        out.push(Node { eta, half_minus: hm, half_plus: hp, w: w * half });
    }
}

fn nodes(family: Family, a: f64, b: f64, radius: f64, width: f64, gl: &GaussLegendre) -> Result<(Vec<Node>, [f64; 2])> {
    let mut out = Vec::new();
    match family {
        Family::Laguerre => {
            let levels = levels_for(a)?;
            for (lo, hi) in graded(levels) {
                push_panel(&mut out, gl, lo, hi, |t| (t, 0.0, 0.0));
            }
            let count = ((radius - 1.0) / width).ceil().max(1.0) as usize;
            let w = (radius - 1.0) / count as f64;
            for k in 0..count {
                let lo = 1.0 + w * k as f64;
                push_panel(&mut out, gl, lo, lo + w, |t| (t, 0.0, 0.0));
            }
            Ok((out, [0.5f64.powi(levels as i32), 0.0]))
        }
        Family::Jacobi => {
            let (la, lb) = (levels_for(a)?, levels_for(b)?);
            // t = 1 + η from −1 up to 0, then t = 1 − η from 0 up to 1
            for (lo, hi) in graded(lb) {
                push_panel(&mut out, gl, lo, hi, |t| (t - 1.0, 1.0 - t / 2.0, t / 2.0));
            }
            for (lo, hi) in graded(la).into_iter().rev() {
                push_panel(&mut out, gl, lo, hi, |t| (1.0 - t, t / 2.0, 1.0 - t / 2.0));
            }
            Ok((out, [0.5f64.powi(la as i32), 0.5f64.powi(lb as i32)]))
        }
    }
}

struct Integrand<'a> {
    family: Family,
    a: f64,
    b: f64,
    xi: &'a FloatPoly,
    polys: &'a [FloatPoly],
}

impl Integrand<'_> {
    fn weight(&self, nd: &Node) -> f64 {
        let xi = self.xi.eval(nd.eta);
        match self.family {
            Family::Laguerre => (-nd.eta).exp() * nd.eta.powf(self.a) / (xi * xi),
            Family::Jacobi => nd.half_minus.powf(self.a) * nd.half_plus.powf(self.b) / (xi * xi),
        }
    }

    fn products(&self, nd: &Node) -> Vec<Vec<f64>> {
        let w = self.weight(nd);
        let vals: Vec<f64> = self.polys.iter().map(|p| p.eval(nd.eta)).collect();
        vals.iter().map(|vi| vals.iter().map(|vj| vi * vj * w).collect()).collect()
    }

    fn gram(&self, nodes: &[Node]) -> Vec<Vec<f64>> {
        let k = self.polys.len();
        let mut g = vec![vec![0.0; k]; k];
        for nd in nodes {
            let w = self.weight(nd) * nd.w;
            let vals: Vec<f64> = self.polys.iter().map(|p| p.eval(nd.eta)).collect();
            for i in 0..k {
                for j in 0..k {
                    g[i][j] += vals[i] * vals[j] * w;
                }
            }
        }
        g
    }
}

fn scaled_max(m: &[Vec<f64>], g: &[Vec<f64>]) -> f64 {
    let k = g.len();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            worst = worst.max(m[i][j].abs() / (g[i][i] * g[j][j]).sqrt());
        }
    }
    worst
}

/// Inner products of the given polynomials against the weight of `ctx`.
pub fn gram_of(ctx: &WaveContext, polys: &[FloatPoly], spec: &QuadratureSpec) -> Result<Gram> {
    let (a, b) = ctx.weight_exponents();
    let f = Integrand { family: ctx.family(), a, b, xi: ctx.xi_float(), polys };
    let gl = rule(spec.order)?;
    let gl_check = rule(spec.check_order)?;
    let endpoint_tail = |eps: f64, power: f64, at: Node, g: &[Vec<f64>]| -> f64 {
        if eps == 0.0 {
            return 0.0;
        }
        scaled_max(&f.products(&at), g) * eps / (power + 1.0)
    };

    let mut radius = spec.min_radius;
    loop {
        let (ns, eps) = nodes(ctx.family(), a, b, radius, spec.panel_width, &gl)?;
        let g = f.gram(&ns);
        if g.iter().enumerate().any(|(i, row)| !(row[i] > 0.0) || !row[i].is_finite()) {
            return Err(Error::Quadrature("non-positive or non-finite norm".into()));
        }
        let mut tail = match ctx.family() {
            Family::Laguerre => {
                let at_r = Node { eta: radius, half_minus: 0.0, half_plus: 0.0, w: 0.0 };
                let lo = Node { eta: eps[0], half_minus: 0.0, half_plus: 0.0, w: 0.0 };
                2.0 * scaled_max(&f.products(&at_r), &g) + endpoint_tail(eps[0], a, lo, &g)
            }
            Family::Jacobi => {
                let hi = Node { eta: 1.0 - eps[0], half_minus: eps[0] / 2.0, half_plus: 1.0 - eps[0] / 2.0, w: 0.0 };
                let lo = Node { eta: eps[1] - 1.0, half_minus: 1.0 - eps[1] / 2.0, half_plus: eps[1] / 2.0, w: 0.0 };
                endpoint_tail(eps[0], a, hi, &g) + endpoint_tail(eps[1], b, lo, &g)
            }
        };
        if !tail.is_finite() {
            tail = f64::INFINITY;
        }
        let laguerre = ctx.family() == Family::Laguerre;
        if tail > spec.tol && laguerre && radius < spec.max_radius {
            radius = (radius + 10.0).min(spec.max_radius);
            continue;
        }
        let (ns_check, _) = nodes(ctx.family(), a, b, radius, spec.panel_width, &gl_check)?;
        let g_check = f.gram(&ns_check);
        let diff: Vec<Vec<f64>> =
            g.iter().zip(&g_check).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
        let disc = scaled_max(&diff, &g);
        if tail + disc > spec.tol {
            return Err(Error::Quadrature(format!(
                "error budget unmet: tail {tail:.3e} + discretization {disc:.3e} > {:.1e}",
                spec.tol
            )));
        }
        return Ok(Gram {
            matrix: g,
            tail_estimate: tail,
            discretization_estimate: disc,
            radius: laguerre.then_some(radius),
        });
    }
}

/// ⟨P_{D,i}, P_{D,j}⟩ for 0 ≤ i, j ≤ `max_n`.
pub fn gram_matrix(params: &SystemParams, index: &IndexSpec, max_n: u32, spec: &QuadratureSpec) -> Result<Gram> {
    let ctx = WaveContext::new(params, index, 0)?;
    let polys = (0..=max_n)
        .map(|n| Ok(p_by(Route::A, params, index, n)?.to_f64_coeffs()))
        .collect::<Result<Vec<_>>>()?;
    gram_of(&ctx, &polys, spec)
}

/// Normalized cross product (n ≠ m) or positive norm (n = m).
pub fn orthogonality_check(ctx_n: &WaveContext, ctx_m: &WaveContext, spec: &QuadratureSpec) -> Result<OrthoResult> {
    if ctx_n.params != ctx_m.params || ctx_n.index != ctx_m.index {
        return Err(Error::InvalidParams("orthogonality pair must share params and index".into()));
    }
    let polys = [ctx_n.p_float().clone(), ctx_m.p_float().clone()];
    let g = gram_of(ctx_n, &polys, spec)?;
    let value = if ctx_n.n == ctx_m.n { g.matrix[0][0] } else { g.normalized(0, 1) };
    Ok(OrthoResult {
        n: ctx_n.n,
        m: ctx_m.n,
        value,
        tail_estimate: g.tail_estimate,
        discretization_estimate: g.discretization_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::seed::{Seed, SeedType};

    fn ctx(p: &SystemParams, d: Vec<Seed>, n: u32) -> WaveContext {
        WaveContext::new(p, &IndexSpec::new(p, d).unwrap(), n).unwrap()
    }

    #[test]
    fn classical_laguerre_pair() {
        let p = SystemParams::laguerre(rat(5, 2)).unwrap();
        let r = orthogonality_check(&ctx(&p, vec![], 0), &ctx(&p, vec![], 1), &QuadratureSpec::default()).unwrap();
        assert!(r.value < 1e-10, "{r:?}");
    }

    #[test]
    fn classical_norm_matches_gamma() {
        // ∫ η^{α} e^{−η} (L_0)² = Γ(α+1), α = g − 1/2 = 2
        let p = SystemParams::laguerre(rat(5, 2)).unwrap();
        let c = ctx(&p, vec![], 0);
        let r = orthogonality_check(&c, &c, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        // Jacobi with α = β = 0: ∫ dη = 2
        let p = SystemParams::jacobi(rat(1, 1), rat(1, 1)).unwrap();
        let e = IndexSpec::empty(Family::Jacobi);
        let c = WaveContext::new(&p, &e, 0).unwrap();
        let g = gram_of(&c, &[FloatPoly(vec![1.0])], &QuadratureSpec::default()).unwrap();
        // weight ((1−η)/2)^{1/2}((1+η)/2)^{1/2} integrates to π/4
        assert!((g.matrix[0][0] - std::f64::consts::FRAC_PI_4).abs() < 1e-13);
    }

    #[test]
    fn deformed_pair() {
        let p = SystemParams::laguerre(rat(7, 3)).unwrap();
        let d = vec![Seed::new(1, SeedType::I)];
        let r = orthogonality_check(&ctx(&p, d.clone(), 0), &ctx(&p, d, 2), &QuadratureSpec::default()).unwrap();
        assert!(r.value < 1e-8, "{r:?}");
    }

    #[test]
    fn gram_is_diagonal_for_jacobi() {
        let p = SystemParams::jacobi(rat(7, 3), rat(11, 4)).unwrap();
        let d = IndexSpec::new(&p, vec![Seed::new(1, SeedType::I), Seed::new(0, SeedType::II)]).unwrap();
        let g = gram_matrix(&p, &d, 5, &QuadratureSpec::default()).unwrap();
        assert!(g.max_cross() < 1e-8, "{}", g.max_cross());
        assert!(g.min_norm() > 0.0);
    }

    #[test]
    fn pair_must_share_system() {
        let p = SystemParams::laguerre(rat(7, 3)).unwrap();
        let a = ctx(&p, vec![], 0);
        let b = ctx(&p, vec![Seed::new(0, SeedType::I)], 1);
        assert!(orthogonality_check(&a, &b, &QuadratureSpec::default()).is_err());
    }
}
