use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use fockforms::multilinear::SpaceParams;
use fockforms::schur::{schur_projector, semistandard_fillings, Partition};
use fockforms::schwartz::{default_grid, verify, verify_timed, Identity, Mutation, Request, VerificationReport};
use fockforms::theta::{series_table, Lattice};
use fockforms::Error;

#[derive(Parser)]
#[command(name = "fockforms", version, about = "Exact Fock-model Schwartz forms, Schur projectors and theta coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks and write one JSON report per cell.
    Verify(VerifyArgs),
    /// Compare rank(pi_lambda) with the number of semistandard fillings.
    Dims(DimsArgs),
    /// Fourier coefficient table of a definite lattice.
    Theta(ThetaArgs),
    /// Check the operator word D against the Fock expression of phi_{nq,0}.
    IntertwineCheck(IntertwineArgs),
}

#[derive(Args)]
struct Common {
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Named grid; ignored when --identity is given.
    #[arg(long, default_value = "default")]
    grid: String,
    /// Run a single cell of this identity.
    #[arg(long)]
    identity: Option<String>,
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    q: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    ell: usize,
    #[arg(long)]
    j: Option<usize>,
    /// Partition as "b1,b2,...".
    #[arg(long)]
    lambda: Option<String>,
    /// Stop at the first failing cell in grid order.
    #[arg(long)]
    fail_fast: bool,
    /// Directory for per-cell reports; reports go to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Corrupt one printed constant in every cell (sensitivity demonstration).
    #[arg(long)]
    mutate: Option<String>,
    /// Record wall-clock time per cell (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DimsArgs {
    /// Single partition; all partitions of size 1..=4 otherwise.
    #[arg(long)]
    lambda: Option<String>,
    /// Single n; n = 1..=3 otherwise.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThetaArgs {
    /// Lattice JSON file.
    #[arg(long)]
    lattice: PathBuf,
    #[arg(long, default_value_t = 1)]
    genus: usize,
    /// Partition as "b1,b2,..."; empty for plain representation numbers.
    #[arg(long, default_value = "")]
    lambda: String,
    #[arg(long)]
    bound: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct IntertwineArgs {
    #[arg(long, default_value_t = 2)]
    ell: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => run_verify(a),
        Command::Dims(a) => run_dims(a),
        Command::Theta(a) => run_theta(a),
        Command::IntertwineCheck(a) => run_intertwine(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Error> {
    if jobs == 0 {
        return Err(Error::InvalidInput("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn report_file(index: usize, r: &VerificationReport) -> String {
    let mut s = format!("{index:03}-{}-p{}-q{}-n{}-l{}", r.identity, r.p, r.q, r.n, r.ell);
    if let Some(j) = r.j {
        s.push_str(&format!("-j{j}"));
    }
    if let Some(l) = &r.lambda {
        let parts: Vec<String> = l.parts().iter().map(ToString::to_string).collect();
        s.push_str(&format!("-lambda{}", parts.join("_")));
    }
    s + ".json"
}

fn run_cells(requests: &[Request], jobs: usize, fail_fast: bool, timing: bool) -> Result<Vec<VerificationReport>, Error> {
    let first_failure = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<Result<VerificationReport, Error>>> = pool(jobs)?.install(|| {
        requests
            .par_iter()
            .enumerate()
            .map(|(i, req)| {
                if fail_fast && first_failure.load(Ordering::SeqCst) < i {
                    return None;
                }
                let r = if timing { verify_timed(req) } else { verify(req) };
                if fail_fast && !matches!(&r, Ok(rep) if rep.pass) {
                    first_failure.fetch_min(i, Ordering::SeqCst);
                }
                Some(r)
            })
            .collect()
    });
    let mut reports = Vec::new();
    for r in results {
        let Some(r) = r else { break };
        let r = r?;
        let failed = !r.pass;
        reports.push(r);
        if fail_fast && failed {
            break;
        }
    }
    Ok(reports)
}

fn finish_reports(reports: &[VerificationReport], out: Option<&Path>) -> Result<Outcome, Error> {
    for r in reports.iter().filter(|r| !r.pass) {
        eprintln!(
            "FAIL {} [{}]: {} nonzero terms, first terms {}",
            r.cell(),
            r.failing.as_deref().unwrap_or(""),
            r.residual_terms,
            r.residual
        );
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (i, r) in reports.iter().enumerate() {
                fs::write(dir.join(report_file(i, r)), serde_json::to_string_pretty(r)? + "\n")?;
            }
            let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(VerificationReport::cell).collect();
            emit(&json!({ "cells": reports.len(), "passed": passed, "failed": failed }), None)?;
        }
        None => emit(&serde_json::to_value(reports)?, None)?,
    }
    Ok(if passed == reports.len() { Outcome::Pass } else { Outcome::Fail })
}

fn run_verify(a: VerifyArgs) -> Result<Outcome, Error> {
    let mutation: Option<Mutation> = a.mutate.as_deref().map(str::parse).transpose()?;
    let requests = match &a.identity {
        Some(name) => {
            let identity: Identity = name.parse()?;
            let mut req = Request::new(identity, SpaceParams::new(a.p, a.q, a.n)?, a.ell);
            if let Some(j) = a.j {
                req = req.with_j(j);
            }
            if let Some(l) = &a.lambda {
                req = req.with_lambda(l.parse()?);
            }
            vec![req]
        }
        None if a.grid == "default" => default_grid(),
        None => return Err(Error::InvalidInput(format!("unknown grid {:?}", a.grid))),
    };
    let requests: Vec<Request> = match mutation {
        Some(m) => requests.into_iter().map(|r| r.with_mutation(m)).collect(),
        None => requests,
    };
    let reports = run_cells(&requests, a.common.jobs, a.fail_fast, a.timing)?;
    finish_reports(&reports, a.out.as_deref())
}

fn run_intertwine(a: IntertwineArgs) -> Result<Outcome, Error> {
    let requests = [(1, 1, 1), (2, 1, 1), (2, 1, 2)]
        .into_iter()
        .map(|(p, q, n)| Ok(Request::new(Identity::Intertwiner, SpaceParams::new(p, q, n)?, a.ell)))
        .collect::<Result<Vec<_>, Error>>()?;
    let reports = run_cells(&requests, a.common.jobs, false, false)?;
    finish_reports(&reports, a.out.as_deref())
}

fn run_dims(a: DimsArgs) -> Result<Outcome, Error> {
    let shapes: Vec<Partition> = match &a.lambda {
        Some(s) => vec![s.parse()?],
        None => (1..=4).flat_map(Partition::all_of).collect(),
    };
    let ns: Vec<usize> = match a.n {
        Some(0) => return Err(Error::InvalidInput("--n must be at least 1".into())),
        Some(n) => vec![n],
        None => (1..=3).collect(),
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for shape in &shapes {
        for &n in &ns {
            let rank = schur_projector(shape, n)?.rank();
            let ss = semistandard_fillings(shape, n).len();
            ok &= rank == ss;
            rows.push(json!({ "lambda": shape, "n": n, "rank": rank, "semistandard": ss, "equal": rank == ss }));
        }
    }
    emit(&Value::Array(rows), a.out.as_deref())?;
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn run_theta(a: ThetaArgs) -> Result<Outcome, Error> {
    let text = fs::read_to_string(&a.lattice)?;
    let lat = Lattice::from_json(&serde_json::from_str(&text)?)?;
    let shape: Partition = a.lambda.parse()?;
    let table = pool(a.common.jobs)?.install(|| series_table(&lat, &shape, a.genus, a.bound))?;
    let out = json!({
        "lattice": lat.to_json(),
        "genus": a.genus,
        "lambda": shape,
        "bound": a.bound,
        "coefficients": table.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    emit(&out, a.out.as_deref())?;
    Ok(Outcome::Pass)
}
