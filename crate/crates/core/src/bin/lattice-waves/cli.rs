//! The `lattice-waves` command line.
//!
//! Exit codes: 0 on success, 2 for bad input, 3 when a request exceeds the
//! cell budget, 1 for anything else (usually I/O).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use lattice_waves::aggregation::{custom_pattern, Scenario};
use lattice_waves::astroid::{paper_tables_report, table_report};
use lattice_waves::chaincode::{
    first_octant_code, full_circle_code, line_segments, validate_octant_code, OctantCode, OctantEnd,
};
use lattice_waves::composition::{compose_many, compose_naive, BroadcastSequence, CompositionResult};
use lattice_waves::error::Error;
use lattice_waves::lattice::{distinct_radii, nearest_representable, Point, SquaredRadius, Window};
use lattice_waves::pgm::GreyImage;
use lattice_waves::sim::{propagate_sequence, run_async, run_sync, AsyncWave, SyncWave, WaveState};

/// Environment variable overriding [`DEFAULT_CELL_BUDGET`].
pub const CELL_BUDGET_VAR: &str = "LATTICE_WAVES_CELL_BUDGET";

/// Largest number of cells (summed over all frames) one command may touch.
pub const DEFAULT_CELL_BUDGET: u64 = 20_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-waves",
    version,
    about = "Discrete discs, their chain codes and the waves they make"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the representable squared radii up to a limit.
    Radii { limit: u64 },
    /// Print the first-octant chain code of a discrete circle.
    Chaincode {
        /// Squared radius.
        r2: u64,
        /// Print the closed eight-octant code instead.
        #[arg(long)]
        full_circle: bool,
        /// Also list the line segments and their gradients.
        #[arg(long)]
        segments: bool,
    },
    /// Compose discs (or octant codes) by Minkowski addition.
    Compose {
        /// Squared radii, or octant codes with `--codes`.
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<String>,
        /// Read inputs as octant codes; a trailing `+` marks an end that
        /// straddles the diagonal.
        #[arg(long)]
        codes: bool,
        /// Use the quadratic row-profile algorithm.
        #[arg(long)]
        naive: bool,
        /// Print the segment provenance as CSV after the code.
        #[arg(long)]
        provenance: bool,
    },
    /// Run a broadcasting automaton and write its frames.
    Simulate {
        /// Broadcasting sequence of squared radii, e.g. `16,26`.
        seq: String,
        /// Number of global steps.
        k: u32,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Modulus of the labels in the CSV.
        #[arg(long, default_value_t = 4)]
        modulus: u32,
        /// Output directory.
        #[arg(long, default_value = "simulate-out")]
        out: PathBuf,
    },
    /// Aggregate two labelled sources as described by a scenario file.
    Aggregate {
        scenario: PathBuf,
        /// PGM output; written to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the symbol field as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare moiré level sets with astroids.
    Astroid {
        /// Squared radius of the second source.
        #[arg(required_unless_present = "paper_tables")]
        b: Option<u64>,
        /// Rows are produced for k = 1..=kmax.
        #[arg(required_unless_present = "paper_tables")]
        kmax: Option<u64>,
        /// Recompute every row of the published tables.
        #[arg(long, conflicts_with_all = ["b", "kmax"])]
        paper_tables: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// `sync` for a single radius, `async` otherwise.
    Auto,
    Sync,
    Async,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

fn exit_code(err: &anyhow::Error) -> i32 {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        };
    }
    if err.downcast_ref::<Error>().is_some() {
        return 2;
    }
    1
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    match command {
        Command::Radii { limit } => {
            let radii: Vec<String> = distinct_radii(limit).iter().map(|r| r.get().to_string()).collect();
            writeln!(out, "{}", radii.join(" "))?;
        }
        Command::Chaincode {
            r2,
            full_circle,
            segments,
        } => {
            let r2 = radius(r2)?;
            let code = first_octant_code(r2);
            if full_circle {
                writeln!(out, "{}", full_circle_code(r2))?;
            } else if segments {
                writeln!(out, "{code}  {}", segment_list(&code)?)?;
            } else {
                writeln!(out, "{code}")?;
            }
            if full_circle && segments {
                writeln!(out, "{}", segment_list(&code)?)?;
            }
        }
        Command::Compose {
            inputs,
            codes,
            naive,
            provenance,
        } => {
            let parsed = inputs
                .iter()
                .map(|s| {
                    if codes {
                        octant_code(s)
                    } else {
                        radius_arg(s).map(first_octant_code)
                    }
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let result = if naive {
                let mut acc = compose_naive(&parsed[0], &parsed[1])?;
                for next in &parsed[2..] {
                    acc = compose_naive(&acc.code, next)?;
                }
                acc
            } else {
                let refs: Vec<&OctantCode> = parsed.iter().collect();
                compose_many(&refs)?
            };
            write_composition(out, &result, provenance)?;
        }
        Command::Simulate {
            seq,
            k,
            mode,
            modulus,
            out: dir,
        } => simulate(&seq, k, mode, modulus, &dir, out)?,
        Command::Aggregate {
            scenario,
            out: pgm,
            csv,
        } => {
            let text = fs::read_to_string(&scenario).with_context(|| format!("reading {}", scenario.display()))?;
            let scenario: Scenario = text.parse()?;
            check_budget(u64::from(scenario.array_size).pow(2))?;
            let field = custom_pattern(&scenario)?;
            let image = field.to_image().encode();
            match pgm {
                Some(path) => fs::write(&path, image).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(&image)?,
            }
            if let Some(path) = csv {
                fs::write(&path, field.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Astroid { b, kmax, paper_tables } => {
            if paper_tables {
                let (csv, comparison) = paper_tables_report()?;
                out.write_all(csv.as_bytes())?;
                writeln!(err, "{}", comparison.summary())?;
            } else {
                let b = radius(b.expect("required by clap"))?;
                let pairs: Vec<_> = (1..=kmax.expect("required by clap")).map(|k| (b, k)).collect();
                out.write_all(table_report(&pairs)?.as_bytes())?;
            }
        }
    }
    Ok(())
}

fn radius(r2: u64) -> anyhow::Result<SquaredRadius> {
    SquaredRadius::new(r2).map_err(|_| {
        let (below, above) = nearest_representable(r2);
        let nearest = match below {
            Some(b) if b.get() > 0 => format!("{} or {}", b.get(), above.get()),
            _ => above.get().to_string(),
        };
        Failure::Input(format!(
            "{r2} is not a sum of two squares; nearest representable: {nearest}"
        ))
        .into()
    })
}

fn radius_arg(s: &str) -> anyhow::Result<SquaredRadius> {
    let n = s
        .parse()
        .map_err(|_| Failure::Input(format!("`{s}` is not a squared radius")))?;
    radius(n)
}

fn octant_code(s: &str) -> anyhow::Result<OctantCode> {
    let (word, end) = match s.strip_suffix('+') {
        Some(w) => (w, OctantEnd::Straddle),
        None => (s, OctantEnd::OnDiagonal),
    };
    let code = OctantCode::new(word.parse()?, end)?;
    let report = validate_octant_code(code.code());
    if !report.is_valid() {
        let problems: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(Failure::Input(format!("`{s}` is not an octant code: {}", problems.join("; "))).into());
    }
    Ok(code)
}

fn segment_list(code: &OctantCode) -> anyhow::Result<String> {
    let segs = line_segments(code)?;
    Ok(segs.iter().map(|s| format!("[{s}]")).collect::<Vec<_>>().join(" "))
}

fn write_composition(out: &mut dyn Write, result: &CompositionResult, provenance: bool) -> anyhow::Result<()> {
    writeln!(out, "{}", result.code)?;
    if provenance {
        out.write_all(result.provenance_csv().as_bytes())?;
    }
    Ok(())
}

fn cell_budget() -> anyhow::Result<u64> {
    match std::env::var(CELL_BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{CELL_BUDGET_VAR} must be a cell count, got `{v}`")).into()),
        Err(_) => Ok(DEFAULT_CELL_BUDGET),
    }
}

fn check_budget(cells: u64) -> anyhow::Result<()> {
    let budget = cell_budget()?;
    if cells > budget {
        return Err(Failure::Budget(format!(
            "request needs {cells} cells, budget is {budget} (set {CELL_BUDGET_VAR} to raise it)"
        ))
        .into());
    }
    Ok(())
}

fn simulate(seq: &str, k: u32, mode: Mode, modulus: u32, dir: &Path, out: &mut dyn Write) -> anyhow::Result<()> {
    let seq: BroadcastSequence = seq.parse().map_err(|e: Error| match e {
        Error::NotRepresentable(n) => radius(n).unwrap_err(),
        e => e.into(),
    })?;
    if modulus == 0 {
        return Err(Error::ZeroModulus.into());
    }
    let mode = match mode {
        Mode::Auto if seq.period() == 1 => Mode::Sync,
        Mode::Auto => Mode::Async,
        m => m,
    };
    if mode == Mode::Sync && seq.period() > 1 {
        return Err(Failure::Input(format!(
            "sync mode broadcasts a single radius; `{seq}` has period {} (use --mode async)",
            seq.period()
        ))
        .into());
    }
    let half = seq.reach(k as usize) + 1;
    let side = 2 * half + 1;
    check_budget(side.saturating_mul(side).saturating_mul(u64::from(k) + 1))?;
    let window = Window::centred(Point::ORIGIN, half);

    let (trace, label) = match mode {
        Mode::Sync => (
            run_sync(&SyncWave { radius: seq.radius(1) }, window, Point::ORIGIN, k)?,
            "sync",
        ),
        _ => {
            let alphabet = u8::try_from(seq.period()).map_err(|_| anyhow!("sequence period too long"))?;
            let machine = AsyncWave::new(seq.clone(), alphabet)?;
            (run_async(&machine, window, Point::ORIGIN, k)?, "async")
        }
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let width = (k + 1).to_string().len().max(3);
    for frame in &trace.frames {
        let path = dir.join(format!("frame_{:0width$}.pgm", frame.time));
        fs::write(&path, frame_image(frame.states(), window).encode())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let labeling = propagate_sequence(&seq, Point::ORIGIN, k.max(1) as usize, modulus, window)?;
    let csv = dir.join("labeling.csv");
    fs::write(&csv, labeling.to_csv()).with_context(|| format!("writing {}", csv.display()))?;
    let final_frame = trace.frames.last().unwrap();
    let active = final_frame
        .states()
        .iter()
        .filter(|s| **s != WaveState::Quiescent)
        .count();
    writeln!(
        out,
        "{label}: {} frames of {}x{} cells, {active} activated, written to {}",
        trace.frames.len(),
        window.width,
        window.height,
        dir.display()
    )?;
    if let Some(h) = trace.halted {
        writeln!(out, "halted at t={} on {}", h.time, h.point)?;
    }
    Ok(())
}

/// Quiescent cells are black, excited cells white and relaxed cells grey.
/// The top image row is the largest `y`.
fn frame_image(states: &[WaveState], window: Window) -> GreyImage {
    let mut pixels = Vec::with_capacity(states.len());
    for row in (0..window.height).rev() {
        for col in 0..window.width {
            let s = states[(row * window.width + col) as usize];
            pixels.push(match s {
                WaveState::Quiescent => 0,
                WaveState::Excited(_) => 255,
                WaveState::Relaxed => 128,
            });
        }
    }
    GreyImage::new(window.width, window.height, 255, pixels)
}
