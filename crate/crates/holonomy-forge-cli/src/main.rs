//! Command-line front end for the holonomy-forge verification library.
//!
//! Subcommands map one-to-one onto the library's report pipelines; this
//! binary only parses inputs, renders findings, and sets the exit code:
//! 0 all findings pass, 1 a finding failed, 2 input error, 3 an unsupported
//! local model was encountered.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use holonomy_forge::assets;
use holonomy_forge::estimates;
use holonomy_forge::findings::{self, PipelineReport};
use holonomy_forge::io::{parse_orbifold_spec, parse_wps_spec};

#[derive(Parser)]
#[command(
    name = "holonomy-forge",
    about = "Exact verification of the algebra behind compact exceptional-holonomy constructions",
    version
)]
struct Cli {
    /// Write the run report as JSON to this path ("-" for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the canonical structure forms and their cross identities.
    VerifyStructures,
    /// Analyze a torus orbifold: group closure, fixed loci, singular set.
    OrbifoldAnalyze {
        /// Orbifold spec file (bundled asset names also resolve).
        file: String,
    },
    /// Betti numbers of the orbifold and of its resolved manifold.
    OrbifoldBetti {
        /// Orbifold spec file (bundled asset names also resolve).
        file: String,
    },
    /// Check the decay profile and the inductive estimate closure.
    EstimatesCheck {
        /// Estimate file; the bundled defaults when omitted.
        file: Option<String>,
    },
    /// Verify the quaternionic group, its two frames, and the bundled
    /// weighted-projective example.
    Spin7Demo,
    /// Run every pipeline on the bundled inputs.
    Report,
}

#[derive(Serialize)]
struct JsonFinding {
    claim: String,
    passed: bool,
    value: String,
    citation: String,
}

/// Machine-readable run report. Serialization is deterministic: fixed field
/// order, no timing data.
#[derive(Serialize)]
struct RunReport {
    schema: u32,
    command: String,
    inputs_digest: String,
    findings: Vec<JsonFinding>,
}

struct RunOutcome {
    report: PipelineReport,
    inputs_digest: String,
    command: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let elapsed_ms = started.elapsed().as_millis();
    let json_to_stdout = cli.json.as_deref() == Some(std::path::Path::new("-"));
    render_human(&outcome, elapsed_ms, !json_to_stdout);
    if let Some(path) = &cli.json {
        let run_report = RunReport {
            schema: 1,
            command: outcome.command.clone(),
            inputs_digest: outcome.inputs_digest.clone(),
            findings: outcome
                .report
                .findings
                .iter()
                .map(|f| JsonFinding {
                    claim: f.claim.clone(),
                    passed: f.passed,
                    value: f.value.clone(),
                    citation: f.citation.clone(),
                })
                .collect(),
        };
        let text = serde_json::to_string_pretty(&run_report).expect("report serializes");
        if json_to_stdout {
            println!("{text}");
        } else if let Err(e) = std::fs::write(path, text.as_bytes()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.report.unsupported_model {
        ExitCode::from(3)
    } else if !outcome.report.all_passed() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(command: &Command) -> Result<RunOutcome, String> {
    match command {
        Command::VerifyStructures => Ok(RunOutcome {
            report: findings::verify_structures(),
            inputs_digest: digest(&[]),
            command: "verify-structures".into(),
        }),
        Command::OrbifoldAnalyze { file } => {
            let text = load_input(file)?;
            let spec = parse_orbifold_spec(&text).map_err(|e| e.to_string())?;
            Ok(RunOutcome {
                report: findings::orbifold_analyze(&spec),
                inputs_digest: digest(&[&text]),
                command: "orbifold-analyze".into(),
            })
        }
        Command::OrbifoldBetti { file } => {
            let text = load_input(file)?;
            let spec = parse_orbifold_spec(&text).map_err(|e| e.to_string())?;
            Ok(RunOutcome {
                report: findings::orbifold_betti_pipeline(&spec),
                inputs_digest: digest(&[&text]),
                command: "orbifold-betti".into(),
            })
        }
        Command::EstimatesCheck { file } => {
            let text = match file {
                Some(f) => load_input(f)?,
                None => assets::asset_text("estimates_default.est"),
            };
            let (profile, system) =
                estimates::parse_estimates(&text).map_err(|e| e.to_string())?;
            Ok(RunOutcome {
                report: findings::estimates_check(&profile, &system),
                inputs_digest: digest(&[&text]),
                command: "estimates-check".into(),
            })
        }
        Command::Spin7Demo => {
            let text = assets::asset_text("joyce_wps.ywp");
            let spec = parse_wps_spec(&text).map_err(|e| e.to_string())?;
            Ok(RunOutcome {
                report: findings::spin7_demo(&spec),
                inputs_digest: digest(&[&text]),
                command: "spin7-demo".into(),
            })
        }
        Command::Report => {
            let orb = assets::asset_text("joyce_example.orb");
            let est = assets::asset_text("estimates_default.est");
            let ywp = assets::asset_text("joyce_wps.ywp");
            let orb_spec = parse_orbifold_spec(&orb).map_err(|e| e.to_string())?;
            let (profile, system) =
                estimates::parse_estimates(&est).map_err(|e| e.to_string())?;
            let wps_spec = parse_wps_spec(&ywp).map_err(|e| e.to_string())?;
            let mut report = findings::verify_structures();
            let mut extend = |mut r: PipelineReport| {
                report.unsupported_model |= r.unsupported_model;
                report.findings.append(&mut r.findings);
            };
            extend(findings::orbifold_analyze(&orb_spec));
            extend(findings::orbifold_betti_pipeline(&orb_spec));
            extend(findings::estimates_check(&profile, &system));
            extend(findings::spin7_demo(&wps_spec));
            Ok(RunOutcome {
                report,
                inputs_digest: digest(&[&orb, &est, &ywp]),
                command: "report".into(),
            })
        }
    }
}

/// Reads an input file; bare bundled asset names resolve to the shipped
/// text, and `HOLONOMY_FORGE_ASSETS` overrides both.
fn load_input(name: &str) -> Result<String, String> {
    if let Ok(dir) = std::env::var(assets::ASSETS_ENV) {
        let p = std::path::Path::new(&dir).join(name);
        if p.is_file() {
            return std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()));
        }
    }
    let path = std::path::Path::new(name);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| format!("{name}: {e}"));
    }
    assets::try_asset_text(name).ok_or_else(|| format!("no such file or bundled asset: {name}"))
}

fn digest(inputs: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for text in inputs {
        hasher.update((text.len() as u64).to_le_bytes());
        hasher.update(text.as_bytes());
    }
    format!("sha256:{:x}", hasher.finalize())
}

fn render_human(outcome: &RunOutcome, elapsed_ms: u128, enabled: bool) {
    if !enabled {
        return;
    }
    let out = std::io::stdout();
    let mut w = out.lock();
    let _ = writeln!(w, "holonomy-forge {}", outcome.command);
    let _ = writeln!(w, "inputs: {}", outcome.inputs_digest);
    for f in &outcome.report.findings {
        let tag = if f.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(w, "[{tag}] {} -- {} ({})", f.claim, f.value, f.citation);
    }
    let passed = outcome.report.findings.iter().filter(|f| f.passed).count();
    let _ = writeln!(
        w,
        "{passed}/{} findings pass in {elapsed_ms} ms",
        outcome.report.findings.len()
    );
}
