use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use disco_top::bounds::{bound_oracle, constants_table};
use disco_top::complex::{chain_complex, deleted_join2, deleted_product, simplex_skeleton, text};
use disco_top::experiment::{measure_witness, parse_scenario, run_experiment, ExperimentConfig, ExperimentId};
use disco_top::homology::betti_numbers;
use disco_top::metric::{ngon_sample, sphere_sample};
use disco_top::report::{emit_report, Format};
use disco_top::vietoris_rips::{vr_complex, Convention, VRThreshold};
use disco_top::witnesses::{self, Witness};
use disco_top::Error;

#[derive(Parser)]
#[command(name = "disco-top", version, about = "Discontinuity moduli, configuration spaces and nonembeddability bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of c_{n,k} with provenance.
    Constants {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 9)]
        k_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Theorem-backed lower bound for a scenario.
    Bound {
        /// general-conf2 | haefliger-weber | projective | sphere | euclidean | vkf | tverberg | tverberg-kappa
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Betti numbers over GF(2).
    Homology {
        /// Complex in the text format; otherwise the d-skeleton of Δ_n.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Take the 2-fold deleted join first.
        #[arg(long)]
        deleted_join: bool,
        /// Take the r-fold deleted product first.
        #[arg(long)]
        deleted_product: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Vietoris–Rips complex of a regular polygon or a seeded sphere sample.
    Vr {
        /// Number of polygon vertices on the unit circle.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Use a random sample of S^k instead of the polygon.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Threshold in radians.
        #[arg(long)]
        t: f64,
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Build a witness and measure its modulus.
    Estimate {
        #[arg(long, value_enum)]
        witness: WitnessArg,
        #[command(flatten)]
        params: WitnessParams,
        /// Comma-separated scales.
        #[arg(long, value_delimiter = ',')]
        rho_ladder: Option<Vec<f64>>,
        #[arg(long)]
        sep: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Build a witness and export it as `<out>.csv` plus `<out>.json`.
    Witness {
        #[arg(value_enum)]
        kind: WitnessArg,
        #[command(flatten)]
        params: WitnessParams,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an experiment and emit a report; exits with status 1 if a mandatory check fails.
    Experiment {
        #[arg(value_enum)]
        id: ExperimentId,
        /// JSON config file; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: ExperimentFlags,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum WitnessArg {
    DigitInterleave,
    K5Jump,
    TverbergOnePoint,
    EquatorialOdd,
    MonotoneStep,
    NonmonotoneStep,
}

#[derive(Args)]
struct WitnessParams {
    #[arg(long, default_value_t = 8)]
    bits: u32,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 0.01)]
    offset: f64,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExperimentFlags {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    rho_ladder: Option<Vec<f64>>,
    #[arg(long)]
    sep: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    offset: Option<f64>,
    #[arg(long)]
    functions: Option<usize>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn build_witness(kind: WitnessArg, p: &WitnessParams) -> disco_top::Result<Witness> {
    match kind {
        WitnessArg::DigitInterleave => witnesses::digit_interleave(p.bits, p.grid.unwrap_or(1usize << p.bits.min(20))),
        WitnessArg::K5Jump => witnesses::k5_jump_drawing(p.offset, p.grid.unwrap_or(400)),
        WitnessArg::TverbergOnePoint => witnesses::tverberg_one_point(p.grid.unwrap_or(40)),
        WitnessArg::EquatorialOdd => witnesses::equatorial_odd(p.k, p.n, p.grid.unwrap_or(400), p.seed),
        WitnessArg::MonotoneStep => witnesses::step_witnesses(true, p.grid.unwrap_or(100)),
        WitnessArg::NonmonotoneStep => witnesses::step_witnesses(false, p.grid.unwrap_or(100)),
    }
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> disco_top::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes<T: serde::Serialize>(v: &T) -> disco_top::Result<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v)?;
    b.push(b'\n');
    Ok(b)
}

fn run(cli: Cli) -> disco_top::Result<bool> {
    match cli.command {
        Command::Constants { n, k_max, output } => {
            let rows = constants_table(n, k_max)?;
            let bytes = match output.format {
                Format::Json => json_bytes(&rows)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["n", "k", "exact", "lower", "upper", "provenance"])?;
                    let opt = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();
                    for r in &rows {
                        w.write_record([
                            r.n.to_string(),
                            r.k.to_string(),
                            opt(r.value.exact),
                            format!("{:?}", r.value.lower),
                            opt(r.value.upper),
                            r.value.provenance.join("; "),
                        ])?;
                    }
                    w.into_inner().map_err(|e| Error::Io(e.into_error()))?
                }
            };
            write_out(output.out.as_deref(), &bytes)?;
            Ok(true)
        }
        Command::Bound { scenario, d, r, n, k, output } => {
            let cfg = ExperimentConfig { d, r, n, k, ..Default::default() };
            let report = bound_oracle(parse_scenario(&scenario, &cfg)?)?;
            write_out(output.out.as_deref(), &json_bytes(&report)?)?;
            Ok(true)
        }
        Command::Homology { input, n, d, deleted_join, deleted_product: dp, output } => {
            let base = match &input {
                Some(path) => text::parse_simplicial(&fs::read_to_string(path)?)?,
                None => simplex_skeleton(n, d)?,
            };
            let (betti, counts) = if let Some(r) = dp {
                let c = deleted_product(&base, r)?;
                (betti_numbers(&chain_complex(&c)?)?, c.cell_counts())
            } else if deleted_join {
                let j = deleted_join2(&base)?;
                (betti_numbers(&chain_complex(&j)?)?, j.f_vector())
            } else {
                (betti_numbers(&chain_complex(&base)?)?, base.f_vector())
            };
            let v = serde_json::json!({ "betti": betti, "cells": counts });
            write_out(output.out.as_deref(), &json_bytes(&v)?)?;
            Ok(true)
        }
        Command::Vr { n, k, count, seed, t, strict, max_dim, output } => {
            let m = match k {
                Some(k) => {
                    let seed = seed.ok_or_else(|| Error::InvalidArgument("field `seed`: required for sampled spheres".into()))?;
                    sphere_sample(k, count, seed)?
                }
                None => ngon_sample(n)?,
            };
            let conv = if strict { Convention::Strict } else { Convention::Weak };
            let vr = vr_complex(&m, VRThreshold::new(t, conv)?, max_dim)?;
            let betti = betti_numbers(&chain_complex(&vr)?)?;
            let v = serde_json::json!({ "betti": betti, "f_vector": vr.f_vector(), "threshold": t, "strict": strict });
            write_out(output.out.as_deref(), &json_bytes(&v)?)?;
            Ok(true)
        }
        Command::Estimate { witness, params, rho_ladder, sep, output } => {
            let w = build_witness(witness, &params)?;
            let estimates = measure_witness(&w, rho_ladder, sep)?;
            let map: serde_json::Map<String, serde_json::Value> = estimates
                .into_iter()
                .map(|(k, e)| (k, serde_json::to_value(e).expect("estimate serializes")))
                .collect();
            let v = serde_json::json!({ "witness": w.spec, "verification": w.verification, "estimates": map });
            write_out(output.out.as_deref(), &json_bytes(&v)?)?;
            Ok(true)
        }
        Command::Witness { kind, params, out } => {
            let w = build_witness(kind, &params)?;
            let mut csv_path = out.clone().into_os_string();
            csv_path.push(".csv");
            let mut json_path = out.into_os_string();
            json_path.push(".json");
            w.write_csv(fs::File::create(&csv_path)?)?;
            fs::write(&json_path, w.sidecar_json()? + "\n")?;
            Ok(true)
        }
        Command::Experiment { id, config, flags } => {
            let mut cfg = match config {
                Some(path) => ExperimentConfig::from_json(&fs::read_to_string(path)?)?,
                None => ExperimentConfig::default(),
            };
            cfg.merge(&ExperimentConfig {
                experiment: Some(id),
                d: flags.d,
                r: flags.r,
                n: flags.n,
                k: flags.k,
                k_max: flags.k_max,
                grid: flags.grid,
                rho_ladder: flags.rho_ladder,
                sep: flags.sep,
                seed: flags.seed,
                offset: flags.offset,
                functions: flags.functions,
                cells: flags.cells,
                pairs: flags.pairs,
                scenario: flags.scenario,
                out: flags.out,
                format: flags.format,
            });
            let rep = run_experiment(&cfg)?;
            for line in rep.summary_lines() {
                eprintln!("{line}");
            }
            write_out(cfg.out.as_deref(), &emit_report(&rep, cfg.format.unwrap_or(Format::Json))?)?;
            Ok(rep.passed())
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("DISCO_TOP_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::InapplicableTheorem { .. } | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
