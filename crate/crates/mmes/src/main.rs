//! `mmes` command line: verify the Zha seven-qubit state, compute purity
//! reports for state files, generate reference states, and search for
//! minimizers of the multipartite entanglement potential.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mmes::io;
use mmes::potential::{entanglement_potential, purity_table, rational_annotation};
use mmes::search::{minimize_potential, Method, SearchConfig};
use mmes::state::{ghz_state, random_state, zha_seven_qubit_state, PureState};

const ZHA_PI_ME: f64 = 19.0 / 140.0;

#[derive(Parser)]
#[command(name = "mmes", version, about = "Multipartite entanglement potential toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every claimed marginal value of the built-in Zha seven-qubit state.
    VerifyZha {
        /// Emit a machine-readable report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Full balanced-bipartition potential report for a state file.
    Potential {
        /// Path to a JSON state file.
        #[arg(long)]
        input: PathBuf,
        /// Also print the purity table for subsystems of this size.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Purity table for all size-k subsystems of a state file.
    Purities {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Write a reference state to a state file.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Qubit count (required for ghz/random; must be 7 or omitted for zha).
        #[arg(long)]
        n: Option<usize>,
        /// Seed for kind=random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimize the potential and write the result JSON.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "projected-gradient")]
        method: CliMethod,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 5000)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        step_size: f64,
        #[arg(long, default_value_t = 0.5)]
        step_decay: f64,
        #[arg(long, default_value_t = 0.1)]
        temp0: f64,
        #[arg(long, default_value_t = 0.999)]
        cooling: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Zha,
    Ghz,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMethod {
    ProjectedGradient,
    Anneal,
}

impl From<CliMethod> for Method {
    fn from(m: CliMethod) -> Method {
        match m {
            CliMethod::ProjectedGradient => Method::ProjectedGradient,
            CliMethod::Anneal => Method::Anneal,
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("MMES_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            if threads > 0 {
                // 0 means auto; leave rayon's default pool alone.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        } else {
            eprintln!("warning: ignoring unparsable MMES_THREADS={v}");
        }
    }
}

fn fmt_value(x: f64) -> String {
    match rational_annotation(x) {
        Some((p, q)) => format!("{p}/{q} = {x:.12}"),
        None => format!("{x:.12}"),
    }
}

fn load_state(path: &PathBuf) -> Result<PureState, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        ExitCode::from(2)
    })?;
    io::state_from_json(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn write_file(path: &PathBuf, value: &serde_json::Value) -> Result<(), ExitCode> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    std::fs::write(path, text + "\n").map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn cmd_verify_zha(json: bool) -> ExitCode {
    let state = zha_seven_qubit_state();
    let checks = io::zha_claim_checks(&state);
    let all_pass = checks.iter().all(|c| c.pass);
    if json {
        let report = entanglement_potential(&state);
        let triples = purity_table(&state, 3).expect("k=3 valid");
        let value = serde_json::json!({
            "passed": all_pass,
            "pi_me": io::potential_report_json(&report)["pi_me"],
            "triples": io::purity_table_json(3, &triples),
            "checks": checks,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
    } else {
        for c in &checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            println!("{} = {} {status}", c.name, fmt_value(c.actual));
        }
        println!(
            "verify-zha: {} of {} checks passed",
            checks.iter().filter(|c| c.pass).count(),
            checks.len()
        );
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_potential_text(state: &PureState, k: Option<usize>) -> Result<(), ExitCode> {
    let report = entanglement_potential(state);
    println!("n = {}, balanced subsystem size = {}", report.n, report.balanced_k);
    println!("pi_ME = {}", fmt_value(report.pi_me));
    println!("lower bound 2^-k = {}", fmt_value(report.lower_bound));
    println!(
        "min purity at subsystem {}, max at {}",
        report.min_mask.label(),
        report.max_mask.label()
    );
    if let Some(k) = k {
        print_table_text(state, k)?;
    }
    Ok(())
}

fn print_table_text(state: &PureState, k: usize) -> Result<(), ExitCode> {
    let table = purity_table(state, k).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    for entry in &table {
        println!("pi_{} = {}", entry.mask.label(), fmt_value(entry.purity));
    }
    Ok(())
}

fn cmd_potential(input: PathBuf, k: Option<usize>, json: bool) -> Result<(), ExitCode> {
    let state = load_state(&input)?;
    if json {
        let mut value = io::potential_report_json(&entanglement_potential(&state));
        if let Some(k) = k {
            let table = purity_table(&state, k).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?;
            value["purity_table"] = io::purity_table_json(k, &table);
        }
        println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
        Ok(())
    } else {
        print_potential_text(&state, k)
    }
}

fn cmd_purities(input: PathBuf, k: usize, json: bool) -> Result<(), ExitCode> {
    let state = load_state(&input)?;
    if json {
        let table = purity_table(&state, k).map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(2)
        })?;
        let value = io::purity_table_json(k, &table);
        println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
        Ok(())
    } else {
        print_table_text(&state, k)
    }
}

fn cmd_gen(kind: Kind, n: Option<usize>, seed: u64, out: PathBuf) -> Result<(), ExitCode> {
    let state = match kind {
        Kind::Zha => {
            if let Some(n) = n {
                if n != 7 {
                    eprintln!("error: --kind zha requires n = 7 (got {n})");
                    return Err(ExitCode::from(2));
                }
            }
            zha_seven_qubit_state()
        }
        Kind::Ghz => {
            let n = n.ok_or_else(|| {
                eprintln!("error: --kind ghz requires --n");
                ExitCode::from(2)
            })?;
            ghz_state(n).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?
        }
        Kind::Random => {
            let n = n.ok_or_else(|| {
                eprintln!("error: --kind random requires --n");
                ExitCode::from(2)
            })?;
            random_state(n, seed).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(2)
            })?
        }
    };
    write_file(&out, &io::state_to_json(&state))
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: usize,
    method: CliMethod,
    restarts: usize,
    iters: usize,
    seed: u64,
    step_size: f64,
    step_decay: f64,
    temp0: f64,
    cooling: f64,
    tol: f64,
    out: PathBuf,
) -> Result<(), ExitCode> {
    let config = SearchConfig {
        n,
        method: method.into(),
        restarts,
        max_iters: iters,
        seed,
        step_size,
        step_decay,
        anneal_temp0: temp0,
        anneal_cooling: cooling,
        tol,
    };
    let result = minimize_potential(&config).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })?;
    for (r, samples) in result.trajectory.iter().enumerate() {
        if let (Some(first), Some(last)) = (samples.first(), samples.last()) {
            eprintln!(
                "restart {r}: iter {} pi_ME {:.12} -> iter {} pi_ME {:.12}",
                first.0, first.1, last.0, last.1
            );
        }
    }
    eprintln!(
        "best pi_ME = {} in {:.2}s",
        fmt_value(result.best_pi_me),
        result.elapsed_secs
    );
    if n == 7 && result.best_pi_me < ZHA_PI_ME - 1e-9 {
        eprintln!("==========================================================");
        eprintln!("NOTE: search found pi_ME = {:.15}", result.best_pi_me);
        eprintln!("      BELOW the 19/140 = {ZHA_PI_ME:.15} reference level.");
        eprintln!("      Inspect the result file; this is noteworthy, not a bug.");
        eprintln!("==========================================================");
    }
    write_file(&out, &io::search_result_json(&result))
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifyZha { json } => return cmd_verify_zha(json),
        Command::Potential { input, k, json } => cmd_potential(input, k, json),
        Command::Purities { input, k, json } => cmd_purities(input, k, json),
        Command::Gen { kind, n, seed, out } => cmd_gen(kind, n, seed, out),
        Command::Search {
            n,
            method,
            restarts,
            iters,
            seed,
            step_size,
            step_decay,
            temp0,
            cooling,
            tol,
            out,
        } => cmd_search(
            n, method, restarts, iters, seed, step_size, step_decay, temp0, cooling, tol, out,
        ),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
