use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use dihedral_hd::decomp::{decompose_tetravalent, tetravalent_parameters};
use dihedral_hd::dihedral::is_prime;
use dihedral_hd::export::{to_dot, to_text};
use dihedral_hd::oracle::{brute_force_decomposition, enumerate_connection_sets, OracleError};
use dihedral_hd::{build_graph, decompose, verify_decomposition, Certificate, ConnectionSet, GroupElement, Route};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "dihedral-hd", version, about = "Hamilton decompositions of Cayley graphs on dihedral groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and self-check a decomposition of Cay(D_2n, S).
    Decompose {
        #[arg(long)]
        n: u32,
        /// Comma-separated connection set, e.g. `r1,r6,s0`.
        #[arg(long, required_unless_present = "tetravalent", conflicts_with = "tetravalent")]
        set: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Use S = {r<i>, r<n-i>, s<j>, s<k>} on D_2n for any n >= 3.
        #[arg(long, requires_all = ["i", "j", "k"])]
        tetravalent: bool,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        j: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Check a JSON certificate.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Decompose and verify every connection set of D_2p.
    Sweep {
        #[arg(long)]
        p: u32,
        /// Also search for a decomposition by brute force where feasible.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Decompose {
            n,
            set,
            format,
            tetravalent,
            i,
            j,
            k,
        } => cmd_decompose(n, set, format, tetravalent.then(|| (i.unwrap(), j.unwrap(), k.unwrap()))),
        Command::Verify { certificate } => cmd_verify(&certificate),
        Command::Sweep { p, oracle, jobs } => cmd_sweep(p, oracle, jobs),
    }
}

fn cmd_decompose(n: u32, set: Option<String>, format: Format, tetra: Option<(u32, u32, u32)>) -> ExitCode {
    let (cs, result) = match (set, tetra) {
        (_, Some((i, j, k))) => {
            let d = match decompose_tetravalent(n, i, j, k) {
                Ok(d) => d,
                Err(e) => return usage_error(e),
            };
            let a = GroupElement::rotation(n, i as i64);
            let refl = |e: u32| GroupElement::reflection(n, e as i64);
            let cs = ConnectionSet::new(n, [a, a.inverse(), refl(j), refl(k)])
                .expect("tetravalent parameters already validated");
            (cs, Ok(d))
        }
        (Some(text), None) => {
            if n == 0 {
                return usage_error("n must be positive");
            }
            let cs = match ConnectionSet::parse(n, &text) {
                Ok(cs) => cs,
                Err(e) => return usage_error(e),
            };
            let result = if is_prime(n) {
                decompose(n, &cs)
            } else if let Some((i, j, k)) = tetravalent_parameters(&cs) {
                decompose_tetravalent(n, i, j, k)
            } else {
                return usage_error(format!(
                    "n = {n} is not prime and {{{cs}}} is not of the form {{r<i>, r<n-i>, s<j>, s<k>}} with gcd(i, n) = gcd(k-j, n) = 1"
                ));
            };
            (cs, result)
        }
        (None, None) => return usage_error("--set or --tetravalent is required"),
    };

    let d = match result {
        Ok(d) => d,
        Err(e) => return usage_error(e),
    };
    let graph = build_graph(&cs);
    let report = verify_decomposition(&graph, &d);
    if !report.ok {
        eprintln!("internal error: constructed certificate failed verification");
        eprintln!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
        return ExitCode::from(EXIT_VERIFY);
    }
    match format {
        Format::Json => println!("{}", Certificate::new(&cs, &d).to_json()),
        Format::Text => print!("{}", to_text(&graph, &d)),
        Format::Dot => print!("{}", to_dot(&graph, &d)),
    }
    ExitCode::SUCCESS
}

fn cmd_verify(path: &PathBuf) -> ExitCode {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {e}", path.display())),
    };
    let report = match Certificate::from_json(&text).and_then(|c| c.verify()) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}

#[derive(Default)]
struct Outcome {
    routes: Vec<Route>,
    failure: Option<String>,
    oracle: Option<bool>,
}

fn check_instance(p: u32, cs: &ConnectionSet, oracle: bool) -> Outcome {
    let graph = build_graph(cs);
    let mut out = Outcome::default();
    match decompose(p, cs) {
        Ok(d) => {
            let report = verify_decomposition(&graph, &d);
            if !report.ok {
                out.failure = Some(format!("{{{cs}}}: {:?}", report.failures));
            }
            let mut routes = d.routes.clone();
            routes.extend(d.matching_route);
            routes.sort();
            routes.dedup();
            out.routes = routes;
        }
        Err(e) => out.failure = Some(format!("{{{cs}}}: {e}")),
    }
    if oracle {
        out.oracle = match brute_force_decomposition(&graph) {
            Ok(d) => Some(verify_decomposition(&graph, &d).ok),
            Err(OracleError::InstanceTooLarge { .. }) => None,
            Err(OracleError::NotFound) => Some(false),
        };
        if out.oracle == Some(false) {
            out.failure.get_or_insert_with(|| format!("{{{cs}}}: oracle found no valid decomposition"));
        }
    }
    out
}

fn cmd_sweep(p: u32, oracle: bool, jobs: usize) -> ExitCode {
    if !is_prime(p) {
        return usage_error(format!("{p} is not prime"));
    }
    if p > 23 {
        return usage_error(format!("p = {p} is too large for an exhaustive sweep"));
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool,
        Err(e) => return usage_error(e),
    };
    let instances: Vec<ConnectionSet> = enumerate_connection_sets(p).collect();
    let outcomes: Vec<Outcome> =
        pool.install(|| instances.par_iter().map(|cs| check_instance(p, cs, oracle)).collect());

    let mut histogram: BTreeMap<Route, usize> = BTreeMap::new();
    let mut failures = 0;
    let (mut oracle_ok, mut oracle_skipped) = (0, 0);
    for o in &outcomes {
        for r in &o.routes {
            *histogram.entry(*r).or_default() += 1;
        }
        match o.oracle {
            Some(true) => oracle_ok += 1,
            None if oracle => oracle_skipped += 1,
            _ => {}
        }
        if let Some(f) = &o.failure {
            failures += 1;
            eprintln!("FAIL {f}");
        }
    }
    println!("p = {p}");
    println!("instances: {}", outcomes.len());
    println!("passed: {}", outcomes.len() - failures);
    println!("failed: {failures}");
    println!("routes:");
    for (route, count) in &histogram {
        println!("  {:<16} {count}", route.as_str());
    }
    if oracle {
        println!("oracle: agreed {oracle_ok}, skipped {oracle_skipped}");
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    }
}
