//! Command-line driver: network files, subcommands and JSON reports.

mod format;

use std::collections::HashMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use format::{parse_network, parse_network_str, serialize_network, FileError};

use crate::equilibria::{
    binomial_system, existence_test, kappa_at, parametrization, particular_solution,
    particular_solution_candidate, realize_rates, stoichiometric_generators, verify_monomial,
    ExistenceVerdict,
};
use crate::error::Error;
use crate::graphkit::{decompose, tree_constants};
use crate::model::{Network, RateAssignment};
use crate::numerics::{integrate, solve_class_map, solve_in_class, ClassMap, SolveOptions};
use crate::ratlinalg::complement_basis;
use crate::report::format_float;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::signs::{birch_check_network, multistat_check_network};
use crate::{equilibria, RationalMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "crnkit", version, about = "Exact analysis of generalized mass-action networks")]
pub struct Cli {
    /// Write a machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Seed for randomized steps (restart points in `solve`).
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Suppress text output.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Components, deficiencies and tree constants.
    Analyze { file: PathBuf },
    /// Binomial system, existence test and the set of complex balancing equilibria.
    Equilibria {
        file: PathBuf,
        /// Rate constant as SYMBOL=VALUE; repeat for every edge.
        #[arg(long = "rate", value_name = "SYM=Q")]
        rates: Vec<String>,
    },
    /// Sign-vector hypotheses for unique equilibria in every class.
    Signs { file: PathBuf },
    /// Sign-vector test for the capacity of multiple equilibria.
    Multistat { file: PathBuf },
    /// The complex balancing equilibrium in the class of a state.
    Solve {
        file: PathBuf,
        #[arg(long = "rate", value_name = "SYM=Q")]
        rates: Vec<String>,
        #[arg(long, value_name = "Q,...")]
        x0: String,
    },
    /// Integrate the dynamics with fixed-step RK4.
    Simulate {
        file: PathBuf,
        #[arg(long = "rate", value_name = "SYM=Q")]
        rates: Vec<String>,
        #[arg(long, value_name = "Q,...")]
        x0: String,
        #[arg(long = "t-end", value_name = "T")]
        t_end: String,
        #[arg(long, value_name = "H", default_value = "1/1000")]
        dt: String,
    },
    /// Rate constants with a prescribed binomial right-hand side.
    Realize {
        file: PathBuf,
        #[arg(long, value_name = "Q,...")]
        gamma: String,
    },
}

/// Text and JSON produced by a command, with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub report: Value,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e == Error::NoSolution { EXIT_NEGATIVE } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

fn matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| rationals_json(r)).collect())
}

fn floats_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_float(*x))).collect())
}

fn one_based(lists: &[Vec<usize>]) -> Value {
    json!(lists.iter().map(|l| l.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn format_list(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

fn parse_rate_flags(net: &Network, flags: &[String]) -> Result<Option<RateAssignment>, Failure> {
    if flags.is_empty() {
        return Ok(None);
    }
    let mut map = HashMap::new();
    for f in flags {
        let (sym, val) = f
            .split_once('=')
            .ok_or_else(|| input_error(format!("rate `{f}` is not of the form SYM=Q")))?;
        let q = parse_rational(val)
            .ok_or_else(|| input_error(format!("rate `{f}` has an invalid value")))?;
        if map.insert(sym.trim().to_string(), q).is_some() {
            return Err(input_error(format!("rate `{sym}` given twice")));
        }
    }
    Ok(Some(RateAssignment::from_symbols(net, &map)?))
}

fn require_rates(net: &Network, flags: &[String], command: &str) -> Result<RateAssignment, Failure> {
    parse_rate_flags(net, flags)?.ok_or_else(|| {
        input_error(format!("`{command}` needs numeric rate constants; pass --rate SYM=Q for every edge"))
    })
}

fn parse_number(s: &str) -> Option<f64> {
    parse_rational(s)
        .and_then(|q| num_traits::ToPrimitive::to_f64(&q))
        .or_else(|| s.trim().parse::<f64>().ok())
        .filter(|x| x.is_finite())
}

fn parse_state(s: &str, n: usize) -> Result<Vec<f64>, Failure> {
    let v = s
        .split(',')
        .map(|t| parse_number(t).ok_or_else(|| input_error(format!("invalid number `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(input_error(format!("--x0 needs {n} values, got {}", v.len())));
    }
    if let Some(i) = v.iter().position(|x| *x <= 0.0) {
        return Err(input_error(format!("--x0 entry {} must be positive", i + 1)));
    }
    Ok(v)
}

fn analyze(net: &Network) -> Outcome {
    let d = decompose(net);
    let r = equilibria::deficiencies(net);
    let symbols = net.rate_symbols();
    let tree: Option<Vec<String>> = tree_constants(net)
        .ok()
        .map(|k| k.iter().map(|p| p.display(&symbols)).collect());
    let mut text = String::new();
    text += &format!(
        "species: {}\nvertices: {}\nedges: {}\n",
        net.num_species(),
        net.num_vertices(),
        net.edges().len()
    );
    let show = |ls: &[Vec<usize>]| {
        ls.iter()
            .map(|l| format!("{{{}}}", l.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    text += &format!("components: {}\n", show(&d.components));
    text += &format!("terminal strong components: {}\n", show(&d.terminal_sccs));
    text += &format!("weakly reversible: {}\n", if d.weakly_reversible { "yes" } else { "no" });
    text += &format!("stoichiometric subspace dimension: {}\n", r.stoichiometric_rank);
    text += &format!("kinetic-order subspace dimension: {}\n", r.kinetic_rank);
    text += &format!("deficiency: {}\n", r.deficiency);
    text += &format!("kinetic deficiency: {}\n", r.kinetic_deficiency);
    if let Some(k) = &tree {
        text += "tree constants:\n";
        for (i, p) in k.iter().enumerate() {
            text += &format!("  K{} = {}\n", i + 1, p);
        }
    }
    let report = json!({
        "command": "analyze",
        "network": network_json(net),
        "decomposition": {
            "components": one_based(&d.components),
            "strong_components": one_based(&d.strong_components),
            "terminal_sccs": one_based(&d.terminal_sccs),
            "weakly_reversible": d.weakly_reversible,
        },
        "deficiencies": serde_json::to_value(&r).expect("serializable"),
        "tree_constants": tree,
    });
    Outcome { code: EXIT_OK, text, report }
}

fn network_json(net: &Network) -> Value {
    let sp = net.species();
    json!({
        "species": sp,
        "vertices": (0..net.num_vertices()).map(|v| json!({
            "stoich": net.stoich_complex(v).format(sp),
            "kinetic": net.kinetic_complex(v).map(|k| k.format(sp)),
        })).collect::<Vec<_>>(),
        "edges": net.edges().iter().map(|e| json!({
            "source": e.source + 1,
            "target": e.target + 1,
            "symbol": e.symbol,
        })).collect::<Vec<_>>(),
    })
}

fn equilibria_cmd(net: &Network, rates: Option<&RateAssignment>) -> Result<Outcome, Failure> {
    let sys = binomial_system(net, rates)?;
    let symbols = net.rate_symbols();
    let pairs: Vec<String> =
        sys.relation.pairs.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
    let quotients: Vec<String> =
        sys.relation.pairs.iter().map(|(i, j)| format!("K{}/K{}", j + 1, i + 1)).collect();
    let kappa: Vec<String> = sys.kappa_normalized().iter().map(|r| r.display(&symbols)).collect();
    let verdict = existence_test(&sys);
    let mut text = String::new();
    text += &format!("spanning relation: {}\n", pairs.join(" "));
    text += "exponent matrix:\n";
    for row in sys.exponents.to_rows() {
        text += &format!("  [{}]\n", row.iter().map(format_rational).collect::<Vec<_>>().join(", "));
    }
    text += &format!("kappa = {} = {}\n", format_list(&quotients), format_list(&kappa));
    if let Some(k) = &sys.kappa {
        text += &format!(
            "kappa (numeric) = {}\n",
            format_list(&k.iter().map(format_rational).collect::<Vec<_>>())
        );
    }
    let (existence_text, mut code) = match &verdict {
        ExistenceVerdict::Always => ("always".to_string(), EXIT_OK),
        ExistenceVerdict::Conditional { conditions, values, holds } => {
            let cols: Vec<String> = conditions
                .columns()
                .iter()
                .map(|c| format_list(&c.iter().map(format_rational).collect::<Vec<_>>()))
                .collect();
            let detail = match (values, holds) {
                (Some(v), Some(h)) => format!(
                    "kappa^C = {} -> {}",
                    format_list(&v.iter().map(format_rational).collect::<Vec<_>>()),
                    if *h { "holds" } else { "fails" }
                ),
                _ => "depends on the rate constants".to_string(),
            };
            let code = if *holds == Some(false) { EXIT_NEGATIVE } else { EXIT_OK };
            (format!("conditional on kappa^C = 1 with C columns {}; {detail}", cols.join(" ")), code)
        }
    };
    text += &format!("existence: {existence_text}\n");
    let mut report = json!({
        "command": "equilibria",
        "relation": sys.relation.pairs.iter().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
        "exponent_matrix": matrix_json(&sys.exponents),
        "kappa_quotients": quotients,
        "kappa_symbolic": kappa,
        "kappa_numeric": sys.kappa.as_deref().map(rationals_json),
        "existence": serde_json::to_value(&verdict).expect("serializable"),
    });
    let (particular, exact) = match particular_solution(&sys) {
        Ok(x) => (Some(x), true),
        Err(Error::NoSolution) => (None, false),
        Err(Error::RatesRequired(_)) => (Some(particular_solution_candidate(&sys)), false),
        Err(e) => return Err(e.into()),
    };
    match particular {
        Some(x) => {
            let verified = match sys.kappa {
                Some(_) => Some(verify_monomial(&x, &sys, &[])?),
                None => None,
            };
            if verified == Some(false) {
                code = EXIT_NEGATIVE;
            }
            let p = parametrization(&sys, x);
            let note = if exact { "" } else { " (valid where the existence condition holds)" };
            text += &format!("x* = {}{note}\n", p.particular);
            text += &format!("free exponents B = {}\n", format_list(
                &p.basis.vectors().iter().map(|c| format_list(&c.iter().map(format_rational).collect::<Vec<_>>())).collect::<Vec<_>>()
            ));
            text += &format!("equilibria = {}\n", p.general);
            if let Some(v) = verified {
                text += &format!("x* verified: {v}\n");
            }
            report["particular_solution"] = serde_json::to_value(&p.particular).expect("serializable");
            report["parametrization"] = json!({
                "basis": matrix_json(p.basis.matrix()),
                "equilibria": serde_json::to_value(&p.general).expect("serializable"),
            });
            report["verified"] = json!(verified);
        }
        None => {
            text += "no complex balancing equilibria for these rate constants\n";
            report["particular_solution"] = Value::Null;
            report["parametrization"] = Value::Null;
            report["verified"] = Value::Null;
        }
    }
    Ok(Outcome { code, text, report })
}

fn signs_cmd(net: &Network) -> Result<Outcome, Failure> {
    let r = birch_check_network(net)?;
    let mut text = String::new();
    text += &format!("dim S = {}, dim S~ = {}\n", r.stoichiometric_dim, r.kinetic_dim);
    text += &format!("rank match: {}\n", r.rank_match);
    text += &format!("chirotopes: {}\n", serde_json::to_value(r.chirotope_result).expect("serializable").as_str().unwrap_or(""));
    text += &format!(
        "positive vector orthogonal to S: {}\n",
        match r.positive_orthant_in_complement.witness() {
            Some(w) => format_list(&w.iter().map(format_rational).collect::<Vec<_>>()),
            None => "none".to_string(),
        }
    );
    text += &format!(
        "hypotheses: {}\n",
        if r.hypotheses_hold { "hold" } else { "not verified" }
    );
    let mut report = serde_json::to_value(&r).expect("serializable");
    report["command"] = json!("signs");
    Ok(Outcome { code: EXIT_OK, text, report })
}

fn multistat_cmd(net: &Network) -> Result<Outcome, Failure> {
    let r = multistat_check_network(net)?;
    let mut text = String::new();
    if !decompose(net).weakly_reversible {
        text += "warning: the network is not weakly reversible\n";
    }
    text += &format!("capacity: {}\n", r.capacity);
    if let Some(w) = &r.witness {
        text += &format!("witness: {w}\n");
    }
    text += &format!("sign vectors checked: {}\n", r.witnesses_checked);
    let mut report = serde_json::to_value(&r).expect("serializable");
    report["command"] = json!("multistat");
    Ok(Outcome { code: EXIT_OK, text, report })
}

fn solve_cmd(net: &Network, rates: &RateAssignment, x0: &[f64], seed: u64) -> Result<Outcome, Failure> {
    let opts = SolveOptions::default();
    let r = solve_in_class(net, rates, x0, &opts)?;
    // second start from a random point to compare against
    let map = ClassMap::new(net, rates, x0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<f64> = (0..map.num_parameters()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let (u, _, _, restart_ok) =
        solve_class_map(&map, &SolveOptions { initial: Some(start), ..opts.clone() });
    let other = map.state(&u);
    let distance = r
        .equilibrium
        .iter()
        .zip(&other)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let mut text = String::new();
    for w in &r.warnings {
        text += &format!("warning: {w}\n");
    }
    text += &format!(
        "equilibrium = ({})\n",
        r.equilibrium.iter().map(|x| format_float(*x)).collect::<Vec<_>>().join(", ")
    );
    text += &format!("residual (class) = {}\n", format_float(r.residual_map));
    text += &format!("residual (balance) = {}\n", format_float(r.residual_balance));
    text += &format!("iterations: {}\nconverged: {}\n", r.iterations, r.converged);
    text += &format!("restart distance = {}\n", format_float(distance));
    let report = json!({
        "command": "solve",
        "equilibrium": floats_json(&r.equilibrium),
        "residual_map": format_float(r.residual_map),
        "residual_balance": format_float(r.residual_balance),
        "iterations": r.iterations,
        "converged": r.converged,
        "warnings": r.warnings,
        "restart": { "seed": seed, "converged": restart_ok, "distance": format_float(distance) },
    });
    let code = if r.converged { EXIT_OK } else { EXIT_NO_CONVERGENCE };
    Ok(Outcome { code, text, report })
}

fn simulate_cmd(
    net: &Network,
    rates: &RateAssignment,
    x0: &[f64],
    t_end: f64,
    dt: f64,
) -> Result<Outcome, Failure> {
    let traj = integrate(net, rates, x0, t_end, dt)?;
    let w = complement_basis(&stoichiometric_generators(net)).matrix().transpose();
    let w = w.map(|q| num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN));
    let c0 = w.mul_vec(x0);
    let drift = traj.states.iter().fold(0.0f64, |m, x| {
        w.mul_vec(x).iter().zip(&c0).fold(m, |m, (a, b)| m.max((a - b).abs()))
    });
    let last = traj.last();
    let t_last = *traj.times.last().expect("nonempty");
    let mut text = String::new();
    text += &format!("steps: {}\n", traj.states.len() - 1);
    text += &format!("final time = {}\n", format_float(t_last));
    text += &format!(
        "final state = ({})\n",
        last.iter().map(|x| format_float(*x)).collect::<Vec<_>>().join(", ")
    );
    text += &format!("conservation drift = {}\n", format_float(drift));
    if traj.domain_exit {
        text += "left the positive orthant; integration stopped\n";
    }
    let report = json!({
        "command": "simulate",
        "steps": traj.states.len() - 1,
        "final_time": format_float(t_last),
        "final_state": floats_json(last),
        "conservation_drift": format_float(drift),
        "domain_exit": traj.domain_exit,
    });
    Ok(Outcome { code: EXIT_OK, text, report })
}

fn realize_cmd(net: &Network, gamma: &str) -> Result<Outcome, Failure> {
    let gamma = gamma
        .split(',')
        .map(|t| parse_rational(t).ok_or_else(|| input_error(format!("invalid rational `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let k = realize_rates(net, &gamma)?;
    let check = kappa_at(net, &k)? == gamma;
    let mut text = String::new();
    let mut rates = serde_json::Map::new();
    for (e, v) in net.edges().iter().zip(k.values()) {
        text += &format!("{} = {}\n", e.symbol, format_rational(v));
        rates.insert(e.symbol.clone(), rational_json(v));
    }
    text += &format!("kappa reproduced: {check}\n");
    let report = json!({
        "command": "realize",
        "gamma": rationals_json(&gamma),
        "rates": Value::Object(rates),
        "kappa_reproduced": check,
    });
    Ok(Outcome { code: EXIT_OK, text, report })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    let load = |p: &Path| -> Result<Network, Failure> { Ok(parse_network(p)?) };
    match &cli.command {
        Command::Analyze { file } => Ok(analyze(&load(file)?)),
        Command::Equilibria { file, rates } => {
            let net = load(file)?;
            let rates = parse_rate_flags(&net, rates)?;
            equilibria_cmd(&net, rates.as_ref())
        }
        Command::Signs { file } => signs_cmd(&load(file)?),
        Command::Multistat { file } => multistat_cmd(&load(file)?),
        Command::Solve { file, rates, x0 } => {
            let net = load(file)?;
            let rates = require_rates(&net, rates, "solve")?;
            let x0 = parse_state(x0, net.num_species())?;
            solve_cmd(&net, &rates, &x0, cli.seed.unwrap_or(0))
        }
        Command::Simulate { file, rates, x0, t_end, dt } => {
            let net = load(file)?;
            let rates = require_rates(&net, rates, "simulate")?;
            let x0 = parse_state(x0, net.num_species())?;
            let t_end = parse_number(t_end)
                .filter(|t| *t >= 0.0)
                .ok_or_else(|| input_error("--t-end must be a non-negative number"))?;
            let dt = parse_number(dt)
                .filter(|t| *t > 0.0)
                .ok_or_else(|| input_error("--dt must be a positive number"))?;
            simulate_cmd(&net, &rates, &x0, t_end, dt)
        }
        Command::Realize { file, gamma } => realize_cmd(&load(file)?, gamma),
    }
}

/// Runs a parsed command line: prints text, writes the JSON report and
/// returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let outcome = dispatch(cli).unwrap_or_else(|f| Outcome {
        code: f.code,
        text: String::new(),
        report: json!({ "error": f.message, "exit_code": f.code }),
    });
    if let Some(msg) = outcome.report.get("error").and_then(Value::as_str) {
        eprintln!("error: {msg}");
    } else if !cli.quiet {
        print!("{}", outcome.text);
    }
    if let Some(path) = &cli.json {
        let body = render_json(&outcome.report);
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    outcome.code
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
