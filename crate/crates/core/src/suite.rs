//! Verification drivers shared by the CLI, the Python bindings and the
//! acceptance tests.
//!
//! Every driver returns a [`Report`] whose case list is in canonical order
//! (enumeration order), regardless of how many threads evaluated it.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::case::CaseKey;
use crate::classical::{
    classical_parity, verify_jacobi_identities, verify_laguerre_identities, IdentityReport, JacobiParam,
    LaguerreParam,
};
use crate::engine::{mirror_reflect, p_by, parity_check, xi_by, Route};
use crate::error::Result;
use crate::numeric::{
    gram_matrix, potential_fd_gap, residual_samples, schrodinger_residual, validate_x_wronskian, xwronskian_samples,
    QuadratureSpec, WaveContext, XWronskianCheck,
};
use crate::poly::Poly;
use crate::rational::{rat, Rational};
use crate::seed::{
    degree_cap, mu_derivative_closed, mu_derivative_repeated, Family, IndexSpec, Seed, SeedType, SystemParams,
};
use crate::sturm::{sturm_root_count, Bound};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub key: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<CaseOutcome>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, cases: Vec<CaseOutcome>) -> Self {
        let failed = cases.iter().filter(|c| !c.pass).count();
        Report {
            suite: suite.to_string(),
            summary: Summary { total: cases.len(), failed },
            cases,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Concatenates reports, prefixing each key with its suite name.
    pub fn merge(suite: &str, parts: Vec<Report>) -> Self {
        let cases = parts
            .into_iter()
            .flat_map(|r| {
                let name = r.suite;
                r.cases.into_iter().map(move |mut c| {
                    c.key = format!("{name}/{}", c.key);
                    c
                })
            })
            .collect();
        Report::new(suite, cases)
    }
}

/// Every ordered index set of distinct admissible seeds with M ≤ `max_m` and
/// degrees ≤ `max_d`, ordered by M, then lexicographically over the seed list
/// I0, I1, …, II0, II1, ….
pub fn enumerate_index_sets(params: &SystemParams, max_m: usize, max_d: u32) -> Vec<IndexSpec> {
    let mut seeds = Vec::new();
    for kind in [SeedType::I, SeedType::II] {
        if let Some(cap) = degree_cap(params, kind, max_d) {
            seeds.extend((0..=cap).map(|v| Seed::new(v, kind)));
        }
    }
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Seed>> = vec![Vec::new()];
    for _ in 0..max_m {
        let mut next = Vec::new();
        for prefix in &layer {
            for s in &seeds {
                if !prefix.contains(s) {
                    let mut e = prefix.clone();
                    e.push(*s);
                    next.push(e);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter()
        .map(|e| IndexSpec::new(params, e).expect("enumerated seeds are admissible"))
        .collect()
}

/// Open physical domain of η: (0, ∞) for Laguerre, (−1, 1) for Jacobi.
pub fn physical_domain(family: Family) -> (Bound, Bound) {
    match family {
        Family::Laguerre => (Bound::Finite(rat(0, 1)), Bound::PosInfinity),
        Family::Jacobi => (Bound::Finite(rat(-1, 1)), Bound::Finite(rat(1, 1))),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EquivalenceOptions {
    pub max_m: usize,
    pub max_d: u32,
    pub max_n: u32,
    pub timings: bool,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions { max_m: 3, max_d: 3, max_n: 4, timings: false }
    }
}

fn deg_json(p: &Poly) -> Value {
    match p.degree() {
        Some(d) => json!(d),
        None => Value::Null,
    }
}

/// Runs the three routes on one index set; one outcome per n.
fn equivalence_for_index(params: &SystemParams, index: &IndexSpec, opts: &EquivalenceOptions) -> Vec<CaseOutcome> {
    let mut xi_results = Vec::new();
    let mut xi_ms = Vec::new();
    for route in Route::ALL {
        let t = Instant::now();
        xi_results.push(xi_by(route, params, index));
        xi_ms.push(t.elapsed().as_secs_f64() * 1e3);
    }
    let xi_equal = xi_results.iter().all(|r| r.is_ok() && *r == xi_results[0]);
    let xi = xi_results[0].as_ref().ok().cloned();
    let (lo, hi) = physical_domain(params.family());
    let xi_roots = xi.as_ref().and_then(|x| sturm_root_count(x, &lo, &hi).ok());

    (0..=opts.max_n)
        .map(|n| {
            let key = CaseKey::new(params, index, n).to_string();
            let mut p_results = Vec::new();
            let mut p_ms = Vec::new();
            for route in Route::ALL {
                let t = Instant::now();
                p_results.push(p_by(route, params, index, n));
                p_ms.push(t.elapsed().as_secs_f64() * 1e3);
            }
            let p_equal = p_results.iter().all(|r| r.is_ok() && *r == p_results[0]);
            let errors: Vec<String> = xi_results
                .iter()
                .chain(&p_results)
                .filter_map(|r| r.as_ref().err().map(ToString::to_string))
                .collect();
            let p = p_results[0].as_ref().ok();
            let degree_gap = match (p.and_then(Poly::degree), xi.as_ref().and_then(Poly::degree)) {
                (Some(a), Some(b)) => Some(a as i64 - b as i64),
                _ => None,
            };
            let mut detail = json!({
                "xi_equal": xi_equal,
                "p_equal": p_equal,
                "deg_xi": xi.as_ref().map_or(Value::Null, deg_json),
                "deg_p": p.map_or(Value::Null, deg_json),
                "degree_anomaly": degree_gap != Some(i64::from(n)),
                "xi_roots_in_domain": xi_roots,
                "errors": errors,
            });
            if opts.timings {
                detail["timings_ms"] = json!({
                    "xi": {"w": xi_ms[0], "a": xi_ms[1], "b": xi_ms[2]},
                    "p": {"w": p_ms[0], "a": p_ms[1], "b": p_ms[2]},
                });
            }
            CaseOutcome { key, pass: xi_equal && p_equal, detail }
        })
        .collect()
}

/// Cross-route exactness over every ordered index set in range.
pub fn equivalence_suite(params: &SystemParams, opts: &EquivalenceOptions) -> Report {
    let sets = enumerate_index_sets(params, opts.max_m, opts.max_d);
    let cases: Vec<CaseOutcome> = sets
        .par_iter()
        .map(|d| equivalence_for_index(params, d, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Report::new("equivalence", cases)
}

/// Random rationals p/q with |p| ≤ 40, 1 ≤ q ≤ 12 from a fixed seed.
pub fn random_rationals(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| rat(rng.random_range(-40..=40), rng.random_range(1..=12)))
        .collect()
}

fn identity_outcome(family: &str, r: &IdentityReport) -> CaseOutcome {
    CaseOutcome {
        key: format!("{family} n={} {}", r.n, r.params),
        pass: r.all_hold(),
        detail: serde_json::to_value(r).expect("serializable"),
    }
}

/// Laguerre and Jacobi identities for 1 ≤ n ≤ `max_n` over `draws` random
/// parameter sets each, plus Jacobi parity for 0 ≤ n ≤ `max_n`.
pub fn identity_suite(max_n: u32, draws: usize) -> Report {
    let alphas = random_rationals(0x1a9, draws);
    let ab: Vec<(Rational, Rational)> = random_rationals(0x1b7, draws)
        .into_iter()
        .zip(random_rationals(0x1c3, draws))
        .collect();
    let mut cases = Vec::new();
    for n in 1..=i64::from(max_n) {
        for a in &alphas {
            cases.push(identity_outcome("L", &verify_laguerre_identities(n, &LaguerreParam { alpha: a.clone() })));
        }
    }
    for n in 1..=i64::from(max_n) {
        for (a, b) in &ab {
            cases.push(identity_outcome("J", &verify_jacobi_identities(n, &JacobiParam::new(a.clone(), b.clone()))));
        }
    }
    for n in 0..=i64::from(max_n) {
        for (a, b) in &ab {
            cases.push(identity_outcome("P:J", &classical_parity(n, &JacobiParam::new(a.clone(), b.clone()))));
        }
    }
    Report::new("identities", cases)
}

/// Repeated differentiation of μ_v against the closed forms, j ≤ `max_j`, v ≤ `max_v`.
pub fn derivative_suite(param_sets: &[SystemParams], max_v: u32, max_j: u32) -> Report {
    let mut cases = Vec::new();
    for p in param_sets {
        for kind in [SeedType::I, SeedType::II] {
            for v in 0..=max_v {
                if p.check_seed(v, kind).is_err() {
                    continue;
                }
                for j in 1..=max_j {
                    let a = mu_derivative_repeated(p, v, kind, j);
                    let b = mu_derivative_closed(p, v, kind, j);
                    let pass = a.is_ok() && a == b;
                    cases.push(CaseOutcome {
                        key: format!("{} g={} h={} {kind}{v} j={j}", p.family(), p.g(), p.h()),
                        pass,
                        detail: json!({ "degree": a.ok().and_then(|q| q.poly.degree()) }),
                    });
                }
            }
        }
    }
    Report::new("derivatives", cases)
}

/// Both parity relations on every Jacobi index set whose mirror image validates.
pub fn parity_suite(params: &SystemParams, max_m: usize, max_d: u32, max_n: u32) -> Result<Report> {
    let swapped = params.swapped()?;
    let sets: Vec<IndexSpec> = enumerate_index_sets(params, max_m, max_d)
        .into_iter()
        .filter(|d| mirror_reflect(d).is_ok_and(|r| r.validate(&swapped).is_ok()))
        .collect();
    let jobs: Vec<(IndexSpec, u32)> = sets.into_iter().flat_map(|d| (0..=max_n).map(move |n| (d.clone(), n))).collect();
    let cases = jobs
        .par_iter()
        .map(|(d, n)| {
            let key = CaseKey::new(params, d, *n).to_string();
            match parity_check(params, d, *n) {
                Ok(r) => CaseOutcome { key, pass: r.holds(), detail: serde_json::to_value(&r).expect("serializable") },
                Err(e) => CaseOutcome { key, pass: false, detail: json!({ "error": e.to_string() }) },
            }
        })
        .collect();
    Ok(Report::new("parity", cases))
}

/// M = 0: Ξ = 1 and P_{∅,n} equals the classical polynomial, every route.
pub fn reduction_suite(param_sets: &[SystemParams], max_n: u32) -> Report {
    let mut cases = Vec::new();
    for p in param_sets {
        let empty = IndexSpec::empty(p.family());
        for n in 0..=max_n {
            let classical = crate::seed::eigen_data(p, n).p;
            let pass = Route::ALL.iter().all(|&r| {
                xi_by(r, p, &empty).ok() == Some(Poly::one()) && p_by(r, p, &empty, n).ok().as_ref() == Some(&classical)
            });
            cases.push(CaseOutcome {
                key: CaseKey::new(p, &empty, n).to_string(),
                pass,
                detail: json!({ "degree": classical.degree() }),
            });
        }
    }
    Report::new("reduction", cases)
}

/// Preferred nodeless index sets for the numeric suites, by family.
const REPRESENTATIVE: [&[&str]; 2] = [
    &["I1", "II1", "I2,II0", "II0,II1", "I1,I3,II1", "II1,I0,I2"],
    &["I1", "II1", "I2,II0", "II0,II1", "I0,I1,I2", "II1,I2,I0"],
];

/// Up to six admissible index sets whose Ξ_D has no zero in the physical
/// domain: the preferred list first, then the enumeration order.
pub fn representative_sets(params: &SystemParams) -> Vec<IndexSpec> {
    let (lo, hi) = physical_domain(params.family());
    let nodeless = |d: &IndexSpec| {
        xi_by(Route::A, params, d).is_ok_and(|x| sturm_root_count(&x, &lo, &hi) == Ok(0))
    };
    let row = match params.family() {
        Family::Laguerre => REPRESENTATIVE[0],
        Family::Jacobi => REPRESENTATIVE[1],
    };
    let preferred = row.iter().filter_map(|s| {
        let seeds = s.split(',').map(crate::case::parse_compact_seed).collect::<Result<Vec<_>>>().ok()?;
        IndexSpec::new(params, seeds).ok()
    });
    let mut out: Vec<IndexSpec> = Vec::new();
    for d in preferred.chain(enumerate_index_sets(params, 2, 2).into_iter().skip(1)) {
        if out.len() == 6 {
            break;
        }
        if !out.contains(&d) && nodeless(&d) {
            out.push(d);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    pub max_n: u32,
    pub quad: QuadratureSpec,
    pub ortho_tol: f64,
    pub residual_tol: f64,
    pub stencil_h: f64,
    /// Step pair for the stencil-order check and the accepted residual ratio.
    pub order_steps: (f64, f64),
    pub order_ratio: (f64, f64),
    pub potential_tol: f64,
    pub potential_rel_step: f64,
    pub xw_tol: f64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            max_n: 5,
            quad: QuadratureSpec::default(),
            ortho_tol: 1e-8,
            residual_tol: 1e-6,
            stencil_h: 1e-3,
            order_steps: (0.01, 0.005),
            order_ratio: (12.0, 20.0),
            potential_tol: 1e-7,
            potential_rel_step: 0.02,
            xw_tol: 1e-8,
        }
    }
}

fn error_case(key: String, e: &crate::error::Error) -> CaseOutcome {
    CaseOutcome { key, pass: false, detail: json!({ "error": e.to_string(), "quadrature": matches!(e, crate::error::Error::Quadrature(_)) }) }
}

/// Normalized cross products ⟨P_n, P_m⟩ for m ≠ n ≤ `max_n`, one case per (D, n).
pub fn orthogonality_suite(params: &SystemParams, sets: &[IndexSpec], opts: &NumericOptions) -> Report {
    let cases = sets
        .par_iter()
        .map(|d| {
            let keys: Vec<String> = (0..=opts.max_n).map(|n| CaseKey::new(params, d, n).to_string()).collect();
            match gram_matrix(params, d, opts.max_n, &opts.quad) {
                Err(e) => keys.into_iter().map(|k| error_case(k, &e)).collect(),
                Ok(g) => keys
                    .into_iter()
                    .enumerate()
                    .map(|(n, key)| {
                        let cross = (0..g.matrix.len()).filter(|&m| m != n).map(|m| g.normalized(n, m)).fold(0.0, f64::max);
                        let norm = g.matrix[n][n];
                        CaseOutcome {
                            key,
                            pass: cross < opts.ortho_tol && norm > 0.0,
                            detail: json!({
                                "max_cross": cross,
                                "norm": norm,
                                "tail_estimate": g.tail_estimate,
                                "discretization_estimate": g.discretization_estimate,
                                "radius": g.radius,
                            }),
                        }
                    })
                    .collect::<Vec<_>>(),
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Report::new("orthogonality", cases)
}

fn schrodinger_case(params: &SystemParams, d: &IndexSpec, n: u32, opts: &NumericOptions) -> Result<(bool, Value)> {
    let ctx = WaveContext::new(params, d, n)?;
    let xs = residual_samples(params.family());
    let residual = schrodinger_residual(&ctx, &xs, opts.stencil_h)?;
    let coarse = schrodinger_residual(&ctx, &xs, opts.order_steps.0)?;
    let fine = schrodinger_residual(&ctx, &xs, opts.order_steps.1)?;
    let ratio = coarse / fine;
    let mut gap: f64 = 0.0;
    for &x in &xs {
        gap = gap.max(potential_fd_gap(&ctx, x, opts.potential_rel_step)?);
    }
    let pass = residual < opts.residual_tol
        && ratio >= opts.order_ratio.0
        && ratio <= opts.order_ratio.1
        && gap < opts.potential_tol;
    Ok((
        pass,
        json!({
            "energy": ctx.energy(),
            "residual": residual,
            "order_ratio": ratio,
            "potential_fd_gap": gap,
        }),
    ))
}

/// Residual of H_D φ_{D,n} = E_n φ_{D,n}, the stencil-order check and the
/// analytic-vs-finite-difference potential, one case per (D, n ≤ `max_n`).
pub fn schrodinger_suite(params: &SystemParams, sets: &[IndexSpec], opts: &NumericOptions) -> Report {
    let jobs: Vec<(&IndexSpec, u32)> = sets.iter().flat_map(|d| (0..=opts.max_n).map(move |n| (d, n))).collect();
    let cases = jobs
        .par_iter()
        .map(|&(d, n)| {
            let key = CaseKey::new(params, d, n).to_string();
            match schrodinger_case(params, d, n, opts) {
                Ok((pass, detail)) => CaseOutcome { key, pass, detail },
                Err(e) => error_case(key, &e),
            }
        })
        .collect();
    Report::new("schrodinger", cases)
}

/// x-space Wronskians against prefactor × Ξ_D and × P_{D,n} at three points.
pub fn xwronskian_suite(params: &SystemParams, sets: &[IndexSpec], opts: &NumericOptions) -> Report {
    let jobs: Vec<(&IndexSpec, u32)> = sets.iter().flat_map(|d| (0..=opts.max_n).map(move |n| (d, n))).collect();
    let cases = jobs
        .par_iter()
        .map(|&(d, n)| {
            let key = CaseKey::new(params, d, n).to_string();
            let checks = WaveContext::new(params, d, n).and_then(|ctx| {
                xwronskian_samples(params.family())
                    .iter()
                    .map(|&x| validate_x_wronskian(&ctx, x))
                    .collect::<Result<Vec<_>>>()
            });
            match checks {
                Ok(c) => {
                    let worst = c.iter().map(XWronskianCheck::max_error).fold(0.0, f64::max);
                    CaseOutcome { key, pass: worst < opts.xw_tol, detail: json!({ "max_error": worst, "points": c }) }
                }
                Err(e) => error_case(key, &e),
            }
        })
        .collect();
    Report::new("xwronskian", cases)
}

/// Ξ_D roots in the physical domain over every enumerated index set; a
/// nonzero count fails the case but the suite is advisory.
pub fn nodeless_suite(params: &SystemParams, max_m: usize, max_d: u32) -> Report {
    let (lo, hi) = physical_domain(params.family());
    let cases = enumerate_index_sets(params, max_m, max_d)
        .par_iter()
        .map(|d| {
            let key = CaseKey::new(params, d, 0).to_string();
            match xi_by(Route::A, params, d).and_then(|x| sturm_root_count(&x, &lo, &hi)) {
                Ok(k) => CaseOutcome { key, pass: k == 0, detail: json!({ "roots_in_domain": k }) },
                Err(e) => error_case(key, &e),
            }
        })
        .collect();
    Report::new("nodeless", cases)
}
