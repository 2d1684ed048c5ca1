//! `chroma` — exact planar analysis in three metrics, from the shell.
//!
//! Three subcommands:
//!
//! * `run <scene.json>` evaluates a scene's queries and prints a
//!   deterministic JSON report.
//! * `verify-laws` replays the randomized law suite over a chosen field
//!   and prints per-law trial statistics.
//! * `render <scene.json> --svg <out.svg>` evaluates like `run`, prints
//!   the identical report, and additionally writes an SVG picture.
//!
//! Exit codes: `0` clean, `1` at least one query in a report failed, `2`
//! at least one law trial failed, `3` input could not be parsed (bad
//! JSON, unknown law or field, unusable window, I/O trouble).

mod render;
mod scene;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value as Json;
use sha2::{Digest, Sha256};

use chromogeometry::explorer::{law_catalog, verify, Domain, LawId};

#[derive(Parser)]
#[command(
    name = "chroma",
    disable_version_flag = true,
    about = "Exact rational-trigonometry analysis in the blue, red, and green metrics"
)]
struct Cli {
    /// Print the version together with a fingerprint of the law set.
    #[arg(long, global = true)]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scene file's queries and print the report as JSON.
    Run {
        /// Path to the scene file.
        scene: PathBuf,
    },
    /// Replay the randomized law suite and print per-law statistics.
    VerifyLaws {
        /// A single law name, or "all" for the whole catalog.
        #[arg(long, default_value = "all")]
        law: String,
        /// "rational" or "fp:<p>" for an odd prime p.
        #[arg(long, default_value = "rational")]
        field: String,
        /// Number of randomized trials per law.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        /// Master seed; equal seeds reproduce reports byte for byte.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Numerator/denominator bound for rational draws.
        #[arg(long, default_value_t = 10)]
        height: u32,
    },
    /// Evaluate a scene, print the report, and write an SVG picture of it.
    Render {
        /// Path to the scene file.
        scene: PathBuf,
        /// Where to write the SVG document.
        #[arg(long)]
        svg: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.version {
        let digest = Sha256::digest(law_catalog().as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        println!("chroma {} (law set sha256:{hex})", env!("CARGO_PKG_VERSION"));
        return ExitCode::SUCCESS;
    }
    match cli.command {
        Some(Command::Run { scene }) => run_scene(&scene, None),
        Some(Command::Render { scene, svg }) => run_scene(&scene, Some(&svg)),
        Some(Command::VerifyLaws {
            law,
            field,
            trials,
            seed,
            height,
        }) => verify_laws(&law, &field, trials, seed, height),
        None => {
            eprintln!("error: a subcommand is required (run, verify-laws, render); see --help");
            ExitCode::from(3)
        }
    }
}

fn load_scene(path: &Path) -> Result<scene::Scene, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| format!("cannot read {}: {err}", path.display()))?;
    let json: Json = serde_json::from_str(&text)
        .map_err(|err| format!("{}: {err}", path.display()))?;
    scene::Scene::parse(&json).map_err(|msg| format!("{}: {msg}", path.display()))
}

fn run_scene(path: &Path, svg: Option<&Path>) -> ExitCode {
    let scene = match load_scene(path) {
        Ok(scene) => scene,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    let report = scene::execute(&scene);
    if let Some(svg_path) = svg {
        let doc = match render::render_svg(&scene, &report) {
            Ok(doc) => doc,
            Err(err) => {
                eprintln!("error: {}: {err}", path.display());
                return ExitCode::from(3);
            }
        };
        if let Err(err) = std::fs::write(svg_path, doc) {
            eprintln!("error: cannot write {}: {err}", svg_path.display());
            return ExitCode::from(3);
        }
    }
    print!("{}", report.to_text());
    if report.has_errors() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn verify_laws(law: &str, field: &str, trials: u64, seed: u64, height: u32) -> ExitCode {
    let domain = match Domain::parse(field, height) {
        Ok(domain) => domain,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(3);
        }
    };
    let laws: Vec<LawId> = if law == "all" {
        LawId::ALL.to_vec()
    } else {
        match LawId::parse(law) {
            Ok(id) => vec![id],
            Err(err) => {
                eprintln!("error: {err}; known laws: {}", law_catalog());
                return ExitCode::from(3);
            }
        }
    };
    let mut failed = false;
    let mut reports = Vec::with_capacity(laws.len());
    for id in laws {
        let report = verify(id, &domain, trials, seed);
        failed |= !report.passed();
        reports.push(report.to_json());
    }
    let array = Json::Array(reports);
    println!(
        "{}",
        serde_json::to_string_pretty(&array).expect("reports are plain JSON")
    );
    if failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
