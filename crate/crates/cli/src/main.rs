use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use miortho_core::case::parse_index_list;
use miortho_core::engine::{p_by, xi_by, Route};
use miortho_core::numeric::{deformed_potential, wavefunction, WaveContext};
use miortho_core::rational::parse_rational;
use miortho_core::suite::{
    derivative_suite, enumerate_index_sets, equivalence_suite, identity_suite, nodeless_suite, orthogonality_suite,
    parity_suite, reduction_suite, representative_sets, schrodinger_suite, xwronskian_suite, EquivalenceOptions,
    NumericOptions, Report,
};
use miortho_core::{CaseKey, Error, Family, IndexSpec, Poly, Rational, SystemParams};
use serde_json::{json, Map, Value};

// Closed pipe (e.g. `| head`) ends the process quietly instead of panicking.
fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

macro_rules! println {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*))) };
}

macro_rules! print {
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EXACTNESS: u8 = 3;

#[derive(Parser)]
#[command(name = "miortho", version, about = "Multi-indexed Laguerre and Jacobi polynomials, exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute Ξ_D and/or P_{D,n} by one or all routes.
    Compute(ComputeArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Sample a quantity on a grid as CSV.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Laguerre,
    Jacobi,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Laguerre => Family::Laguerre,
            FamilyArg::Jacobi => Family::Jacobi,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum RouteArg {
    W,
    A,
    B,
    All,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum What {
    Xi,
    P,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SuiteArg {
    Equivalence,
    Identities,
    Parity,
    Orthogonality,
    Schrodinger,
    Xwronskian,
    Nodeless,
    All,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SetsArg {
    Representative,
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Xi,
    P,
    Potential,
    Wavefunction,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct CaseArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, value_parser = rational_arg)]
    g: Rational,
    #[arg(long, value_parser = rational_arg)]
    h: Option<Rational>,
    /// Ordered seed list, e.g. "I:1,II:2"; empty for M = 0.
    #[arg(long, default_value = "")]
    index: String,
    #[arg(long, default_value_t = 0)]
    n: u32,
}

impl CaseArgs {
    fn resolve(&self) -> Result<(SystemParams, IndexSpec), Error> {
        let params = SystemParams::new(self.family.into(), self.g.clone(), self.h.clone())?;
        let index = IndexSpec::new(&params, parse_index_list(&self.index)?)?;
        Ok((params, index))
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    case: CaseArgs,
    #[arg(long, value_enum, default_value = "a")]
    route: RouteArg,
    #[arg(long, value_enum, default_value = "both")]
    what: What,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Restrict to one family; both by default.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long, value_parser = rational_arg, default_value = "7/3")]
    g: Rational,
    #[arg(long, value_parser = rational_arg, default_value = "11/4")]
    h: Rational,
    #[arg(long, default_value_t = 3)]
    max_m: usize,
    #[arg(long, default_value_t = 3)]
    max_d: u32,
    /// Largest n; per-suite defaults (4 exact, 10 identities, 5 orthogonality, 3 Schrödinger).
    #[arg(long)]
    max_n: Option<u32>,
    /// Random parameter draws per family for the identity suite.
    #[arg(long, default_value_t = 20)]
    draws: usize,
    /// Index sets for the orthogonality and Schrödinger suites.
    #[arg(long, value_enum, default_value = "representative")]
    sets: SetsArg,
    #[arg(long, default_value_t = 1e-8)]
    ortho_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    residual_tol: f64,
    #[arg(long, default_value_t = 1e-3)]
    stencil_h: f64,
    #[arg(long, default_value_t = 1e-7)]
    potential_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    xw_tol: f64,
    /// Add wall-clock timings (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// START:STOP:COUNT, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    #[arg(long, value_enum)]
    quantity: Quantity,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_validation() { EXIT_USAGE } else { EXIT_EXACTNESS };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("MIORTHO_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: MIORTHO_THREADS must be a positive integer");
                return ExitCode::from(EXIT_USAGE);
            }
        }
    }
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compute(a) => compute(&a),
        Cmd::Verify(a) => verify(&a),
        Cmd::Table(a) => table(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct RouteOutput {
    route: Route,
    xi: Option<Poly>,
    p: Option<Poly>,
}

fn compute(a: &ComputeArgs) -> Result<u8, Failure> {
    let (params, index) = a.case.resolve()?;
    let routes: Vec<Route> = match a.route {
        RouteArg::W => vec![Route::W],
        RouteArg::A => vec![Route::A],
        RouteArg::B => vec![Route::B],
        RouteArg::All => Route::ALL.to_vec(),
    };
    let mut outs = Vec::new();
    for r in routes {
        let xi = if a.what != What::P { Some(xi_by(r, &params, &index)?) } else { None };
        let p = if a.what != What::Xi { Some(p_by(r, &params, &index, a.case.n)?) } else { None };
        outs.push(RouteOutput { route: r, xi, p });
    }
    let equal = outs.iter().all(|o| o.xi == outs[0].xi && o.p == outs[0].p);
    let key = CaseKey::new(&params, &index, a.case.n).to_string();
    let all = a.route == RouteArg::All;

    match a.format {
        Format::Json => {
            let routes: Vec<Value> = outs
                .iter()
                .map(|o| {
                    let mut m = Map::new();
                    m.insert("route".into(), json!(o.route.name()));
                    if let Some(x) = &o.xi {
                        m.insert("xi".into(), json!(x.coeff_strings()));
                    }
                    if let Some(p) = &o.p {
                        m.insert("p".into(), json!(p.coeff_strings()));
                    }
                    Value::Object(m)
                })
                .collect();
            let mut doc = json!({ "case": key, "routes": routes });
            if all {
                doc["equal"] = json!(equal);
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Csv => {
            println!("route,quantity,degree,coefficient");
            for o in &outs {
                for (name, poly) in [("xi", &o.xi), ("p", &o.p)] {
                    if let Some(poly) = poly {
                        for (k, c) in poly.coeff_strings().iter().enumerate() {
                            println!("{},{name},{k},{c}", o.route.name());
                        }
                    }
                }
            }
            if all {
                println!("# equal: {equal}");
            }
        }
        Format::Latex => {
            println!("% {key}");
            for o in &outs {
                if let Some(x) = &o.xi {
                    println!("% route {}\n\\Xi_{{\\mathcal{{D}}}}(\\eta) = {}", o.route.name(), x.to_latex("\\eta"));
                }
                if let Some(p) = &o.p {
                    println!(
                        "% route {}\nP_{{\\mathcal{{D}},{}}}(\\eta) = {}",
                        o.route.name(),
                        a.case.n,
                        p.to_latex("\\eta")
                    );
                }
            }
            if all {
                println!("% equal: {equal}");
            }
        }
    }
    if all && !equal {
        return Err(Failure { code: EXIT_EXACTNESS, message: format!("routes disagree for {key}") });
    }
    Ok(0)
}

fn verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let families: Vec<Family> = match a.family {
        Some(f) => vec![f.into()],
        None => vec![Family::Laguerre, Family::Jacobi],
    };
    if a.suite == SuiteArg::Parity && families == [Family::Laguerre] {
        return Err(usage("the parity suite applies to the Jacobi family only"));
    }
    let systems = families
        .iter()
        .map(|&f| SystemParams::new(f, a.g.clone(), (f == Family::Jacobi).then(|| a.h.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    for t in [a.ortho_tol, a.residual_tol, a.stencil_h, a.potential_tol, a.xw_tol] {
        if !(t > 0.0) {
            return Err(usage("tolerances and step sizes must be positive"));
        }
    }

    let numeric = |max_n: u32| NumericOptions {
        max_n,
        ortho_tol: a.ortho_tol,
        residual_tol: a.residual_tol,
        stencil_h: a.stencil_h,
        potential_tol: a.potential_tol,
        xw_tol: a.xw_tol,
        ..NumericOptions::default()
    };
    let sets_for = |p: &SystemParams| match a.sets {
        SetsArg::Representative => representative_sets(p),
        SetsArg::Matrix => enumerate_index_sets(p, a.max_m, a.max_d),
    };
    let concat = |name: &str, parts: Vec<Report>| Report::new(name, parts.into_iter().flat_map(|r| r.cases).collect());

    let run = |suite: SuiteArg| -> Result<Report, Failure> {
        Ok(match suite {
            SuiteArg::Equivalence => {
                let o = EquivalenceOptions { max_m: a.max_m, max_d: a.max_d, max_n: a.max_n.unwrap_or(4), timings: a.timings };
                concat("equivalence", systems.iter().map(|p| equivalence_suite(p, &o)).collect())
            }
            SuiteArg::Identities => Report::merge(
                "identities",
                vec![
                    identity_suite(a.max_n.unwrap_or(10), a.draws),
                    derivative_suite(&systems, a.max_d, 5),
                    reduction_suite(&systems, 6),
                ],
            ),
            SuiteArg::Parity => {
                let n = a.max_n.unwrap_or(4);
                let parts = systems
                    .iter()
                    .filter(|p| p.family() == Family::Jacobi)
                    .map(|p| parity_suite(p, a.max_m, a.max_d, n))
                    .collect::<Result<Vec<_>, _>>()?;
                concat("parity", parts)
            }
            SuiteArg::Orthogonality => {
                let o = numeric(a.max_n.unwrap_or(5));
                concat("orthogonality", systems.iter().map(|p| orthogonality_suite(p, &sets_for(p), &o)).collect())
            }
            SuiteArg::Schrodinger => {
                let o = numeric(a.max_n.unwrap_or(3));
                concat("schrodinger", systems.iter().map(|p| schrodinger_suite(p, &sets_for(p), &o)).collect())
            }
            SuiteArg::Xwronskian => {
                let o = numeric(a.max_n.unwrap_or(4));
                concat(
                    "xwronskian",
                    systems.iter().map(|p| xwronskian_suite(p, &enumerate_index_sets(p, a.max_m, a.max_d), &o)).collect(),
                )
            }
            SuiteArg::Nodeless => concat("nodeless", systems.iter().map(|p| nodeless_suite(p, a.max_m, a.max_d)).collect()),
            SuiteArg::All => unreachable!(),
        })
    };

    let start = std::time::Instant::now();
    let report = if a.suite == SuiteArg::All {
        let mut parts = Vec::new();
        for s in [
            SuiteArg::Equivalence,
            SuiteArg::Identities,
            SuiteArg::Parity,
            SuiteArg::Orthogonality,
            SuiteArg::Schrodinger,
            SuiteArg::Xwronskian,
        ] {
            if s == SuiteArg::Parity && !families.contains(&Family::Jacobi) {
                continue;
            }
            parts.push(run(s)?);
        }
        Report::merge("all", parts)
    } else {
        run(a.suite)?
    };
    let mut doc = serde_json::to_value(&report).expect("serializable");
    if a.timings {
        doc["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = || usage(format!("invalid grid {s:?}, expected START:STOP:COUNT"));
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok(match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
    })
}

fn table(a: &TableArgs) -> Result<u8, Failure> {
    let grid = parse_grid(&a.grid)?;
    let (params, index) = a.case.resolve()?;
    let family = params.family();
    let mut rows = Vec::with_capacity(grid.len());
    let header = match a.quantity {
        Quantity::Xi | Quantity::P => {
            let closed = |t: f64| match family {
                Family::Laguerre => t >= 0.0,
                Family::Jacobi => (-1.0..=1.0).contains(&t),
            };
            if let Some(t) = grid.iter().find(|&&t| !closed(t)) {
                return Err(usage(format!("grid point η = {t} outside the physical domain")));
            }
            let poly = match a.quantity {
                Quantity::Xi => xi_by(Route::A, &params, &index)?,
                _ => p_by(Route::A, &params, &index, a.case.n)?,
            };
            let f = poly.to_f64_coeffs();
            rows.extend(grid.iter().map(|&t| (t, f.eval(t))));
            "eta,value"
        }
        Quantity::Potential | Quantity::Wavefunction => {
            let ctx = WaveContext::new(&params, &index, a.case.n)?;
            if let Some(x) = grid.iter().find(|&&x| !ctx.x_in_domain(x)) {
                return Err(usage(format!("grid point x = {x} outside the physical domain")));
            }
            for &x in &grid {
                let v = match a.quantity {
                    Quantity::Potential => deformed_potential(&ctx, x)?,
                    _ => wavefunction(&ctx, x)?,
                };
                rows.push((x, v));
            }
            "x,value"
        }
    };
    let mut out = String::from(header);
    out.push('\n');
    for (x, v) in rows {
        out.push_str(&format!("{x:.16e},{v:.16e}\n"));
    }
    print!("{out}");
    Ok(0)
}
