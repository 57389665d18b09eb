//! Command-line front end, file formats and the bundled catalog.
//!
//! Exit codes: 0 on success (for `verify`, the set is KS), 1 when `verify`
//! finds a coloring, 2 on usage, I/O or parse errors.

pub mod catalog;
pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::coloring::{check_colorable, verify_assignment, DefinitionMode, Verdict};
use crate::error::Error;
use crate::inequality::{
    build_inequality, compute_weights, gap_report, operator_sum_check, quantum_value, StateSpec,
};
use crate::rayset::{ProblemInstance, RaySet};

pub use format::{emit_inequality, emit_rayset, parse_inequality, parse_rayset};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COLORABLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ks-certify", version, about = "Certify Kochen-Specker sets and build their noncontextuality inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Original,
    Extended,
}

impl From<ModeArg> for DefinitionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Original => DefinitionMode::Original,
            ModeArg::Extended => DefinitionMode::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StateArg {
    Mixed,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a ray set is a KS set; prints KS or a witness coloring.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "original")]
        mode: ModeArg,
    },
    /// Build the noncontextuality inequality of a pruned ray set.
    Inequality {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the inequality on quantum states.
    Evaluate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "random")]
        state: StateArg,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, env = "KS_CERTIFY_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Print graph and basis statistics.
    Info { file: PathBuf },
    /// Drop rays that lie in no complete basis.
    Prune {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bundled historical ray sets.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    List,
    /// Print an entry in ksset format.
    Get { id: String },
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Verify { file, mode } => verify(&file, mode.into(), out),
        Command::Inequality { file, out: path } => inequality(&file, path.as_deref(), out),
        Command::Evaluate {
            file,
            state,
            trials,
            seed,
        } => evaluate(&file, state, trials, seed, out),
        Command::Info { file } => info(&file, out),
        Command::Prune { file, out: path } => prune(&file, path.as_deref(), out),
        Command::Catalog { command } => catalog_cmd(command, out),
    }
}

fn load(path: &Path) -> std::result::Result<RaySet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    parse_rayset(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> std::result::Result<ProblemInstance, Failure> {
    Ok(ProblemInstance::from_rayset(load(path)?)?)
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))
}

fn ray_label(inst: &ProblemInstance, v: usize) -> String {
    inst.rayset()
        .map(|rs| format!("{v} ({})", rs.rays()[v]))
        .unwrap_or_else(|| v.to_string())
}

fn verify(file: &Path, mode: DefinitionMode, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(file)?;
    let result = check_colorable(&inst, mode)?;
    let code = match &result.verdict {
        Verdict::Uncolorable => {
            writeln!(out, "KS")?;
            EXIT_OK
        }
        Verdict::Colorable(_) => {
            writeln!(out, "COLORABLE")?;
            EXIT_COLORABLE
        }
    };
    let rs = inst.rayset().expect("loaded from file");
    writeln!(out, "name {}", rs.name())?;
    writeln!(out, "mode {mode}")?;
    writeln!(out, "rays {}", inst.vertex_count())?;
    writeln!(out, "edges {}", inst.graph().edge_count())?;
    writeln!(out, "bases {}", inst.basis_count())?;
    writeln!(out, "nodes_explored {}", result.nodes_explored)?;
    if let Verdict::Colorable(witness) = &result.verdict {
        let ok = verify_assignment(&inst, witness, mode)?;
        writeln!(out, "witness {witness}")?;
        writeln!(out, "witness_verified {}", yes_no(ok))?;
        for v in witness.ones() {
            writeln!(out, "one {}", ray_label(&inst, v))?;
        }
    }
    Ok(code)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn require_pruned(inst: &ProblemInstance, file: &Path) -> std::result::Result<(), Failure> {
    if let Some(v) = (0..inst.vertex_count()).find(|&v| inst.bases_of(v).is_empty()) {
        return Err(Failure(format!(
            "{}: ray {} lies in no complete basis; run `ks-certify prune` first",
            file.display(),
            ray_label(inst, v)
        )));
    }
    Ok(())
}

fn inequality(file: &Path, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(file)?;
    require_pruned(&inst, file)?;
    let ineq = build_inequality(&inst)?;
    let text = emit_inequality(&ineq);
    match path {
        Some(p) => {
            write_file(p, &text)?;
            let report = gap_report(&inst)?;
            writeln!(out, "name {}", inst.rayset().expect("loaded").name())?;
            writeln!(out, "quantum_value {}", report.basis_count)?;
            writeln!(out, "classical_bound {}", report.alpha)?;
            writeln!(out, "gap {}", report.gap)?;
            writeln!(out, "original_ks {}", yes_no(report.is_original_ks))?;
            writeln!(out, "wrote {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn evaluate(file: &Path, state: StateArg, trials: u64, seed: u64, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(file)?;
    require_pruned(&inst, file)?;
    let ineq = build_inequality(&inst)?;
    let n = ineq.quantum_value() as f64;
    writeln!(out, "name {}", inst.rayset().expect("loaded").name())?;
    writeln!(out, "quantum_value {}", ineq.quantum_value())?;
    writeln!(out, "classical_bound {}", ineq.classical_bound())?;
    let mut max_dev: f64 = 0.0;
    match state {
        StateArg::Mixed => {
            writeln!(out, "state mixed")?;
            let w = quantum_value(&inst, &ineq, &StateSpec::MaximallyMixed)?;
            max_dev = (w - n).abs();
            writeln!(out, "value {w}")?;
        }
        StateArg::Random => {
            writeln!(out, "state random")?;
            writeln!(out, "seed {seed}")?;
            writeln!(out, "trials {trials}")?;
            for k in 0..trials {
                let s = seed.wrapping_add(k);
                let w = quantum_value(&inst, &ineq, &StateSpec::RandomPure(s))?;
                max_dev = max_dev.max((w - n).abs());
                writeln!(out, "trial {k} seed {s} value {w}")?;
            }
        }
    }
    writeln!(out, "max_deviation {max_dev:e}")?;
    let identity = operator_sum_check(&inst, &compute_weights(&inst))?;
    writeln!(out, "operator_sum {}", yes_no(identity))?;
    Ok(EXIT_OK)
}

fn info(file: &Path, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(file)?;
    let rs = inst.rayset().expect("loaded");
    writeln!(out, "name {}", rs.name())?;
    writeln!(out, "dim {}", rs.dimension())?;
    writeln!(out, "rays {}", inst.vertex_count())?;
    writeln!(out, "edges {}", inst.graph().edge_count())?;
    writeln!(out, "bases {}", inst.basis_count())?;
    let unbased: Vec<String> = (0..inst.vertex_count())
        .filter(|&v| inst.bases_of(v).is_empty())
        .map(|v| v.to_string())
        .collect();
    writeln!(out, "unbased {}", unbased.len())?;
    if !unbased.is_empty() {
        writeln!(out, "unbased_rays {}", unbased.join(" "))?;
    }
    for b in inst.bases() {
        let vs: Vec<String> = b.vertices().iter().map(|v| v.to_string()).collect();
        writeln!(out, "basis {}", vs.join(" "))?;
    }
    Ok(EXIT_OK)
}

fn prune(file: &Path, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(file)?;
    let kept = inst.covered_vertices();
    let pruned = inst.prune_unbased()?;
    let text = emit_rayset(pruned.rayset().expect("loaded"));
    match path {
        Some(p) => {
            write_file(p, &text)?;
            let removed: Vec<String> = (0..inst.vertex_count())
                .filter(|v| kept.binary_search(v).is_err())
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "kept {}", kept.len())?;
            writeln!(out, "removed {}", removed.len())?;
            if !removed.is_empty() {
                writeln!(out, "removed_rays {}", removed.join(" "))?;
            }
            writeln!(out, "wrote {}", p.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn catalog_cmd(command: CatalogCommand, out: &mut dyn Write) -> CmdResult {
    match command {
        CatalogCommand::List => {
            for e in catalog::entries() {
                let rs = e.rayset();
                writeln!(
                    out,
                    "{}\tdim {}\trays {}\toriginal_ks {}\textended_ks {}\t{}",
                    e.id,
                    rs.dimension(),
                    rs.len(),
                    yes_no(e.expected_original_ks),
                    yes_no(e.expected_extended_ks),
                    e.provenance
                )?;
            }
            Ok(EXIT_OK)
        }
        CatalogCommand::Get { id } => match catalog::get(&id) {
            Some(e) => {
                out.write_all(e.source.as_bytes())?;
                Ok(EXIT_OK)
            }
            None => Err(Failure(format!("no catalog entry '{id}'"))),
        },
    }
}
