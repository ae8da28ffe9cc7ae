use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use halfdisk::disks::{self, RadiusKind};
use halfdisk::generators::EXAMPLE_IDS;
use halfdisk::localization::{self, LocalizationReport, LocalizeOptions, Violation};
use serde::Serialize;

use crate::check::{self, CheckParams};
use crate::error::{exit, CliError, CliResult};
use crate::input::{self, MatrixFile};
use crate::plot;

#[derive(Debug, Parser)]
#[command(name = "halfdisk", version, about = "Gershgorin-type disks for multiple eigenvalues")]
pub struct Cli {
    /// Print the builtin example ids and exit.
    #[arg(long)]
    pub list_examples: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Row disks of the requested kinds as a JSON array.
    Disks {
        /// Matrix file (.json or .csv) or builtin example id.
        input: String,
        #[command(flatten)]
        kinds: KindFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate every eigenvalue of geometric multiplicity >= 2 against each disk kind.
    Localize {
        input: String,
        /// Relative tolerance for boundary bands and witness residuals.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized check of the rearrangement bounds.
    CheckInequalities {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw disks and eigenvalues; `.json` output writes the plot document instead of SVG.
    Plot {
        input: String,
        #[command(flatten)]
        kinds: KindFlags,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a builtin example as a matrix file.
    Example {
        id: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Args)]
pub struct KindFlags {
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub half: bool,
    /// Sum of the M largest off-diagonal magnitudes.
    #[arg(long, value_name = "M")]
    pub fraction: Option<usize>,
    /// Median-shifted radius; non-negative real matrices only.
    #[arg(long)]
    pub median: bool,
    #[arg(long)]
    pub corollary2: bool,
    #[arg(long)]
    pub third: bool,
}

impl KindFlags {
    /// Requested kinds in a fixed order; full and half when none are given.
    pub fn kinds(&self) -> Vec<RadiusKind> {
        let mut kinds = Vec::new();
        if self.full {
            kinds.push(RadiusKind::Full);
        }
        if self.half {
            kinds.push(RadiusKind::Half);
        }
        if let Some(m) = self.fraction {
            kinds.push(RadiusKind::Fraction(m));
        }
        if self.median {
            kinds.push(RadiusKind::Median);
        }
        if self.corollary2 {
            kinds.push(RadiusKind::Corollary2);
        }
        if self.third {
            kinds.push(RadiusKind::Third);
        }
        if kinds.is_empty() {
            kinds = vec![RadiusKind::Full, RadiusKind::Half];
        }
        kinds
    }
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stderr().is_terminal()
}

fn warn(msg: &str) {
    if color_enabled() {
        eprintln!("\x1b[1;33mwarning:\x1b[0m {msg}");
    } else {
        eprintln!("warning: {msg}");
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(format!("stdout: {e}")))
        }
    }
}

fn require_square(loaded: &input::Loaded) -> CliResult<()> {
    let m = &loaded.matrix;
    if !m.is_square() {
        return Err(CliError::input(format!(
            "{}: need a square matrix, got {}x{}",
            loaded.id,
            m.n_rows(),
            m.n_cols()
        )));
    }
    Ok(())
}

fn cmd_disks(input: &str, kinds: &KindFlags, out: Option<&Path>) -> CliResult<i32> {
    let loaded = input::load(input)?;
    require_square(&loaded)?;
    let mut all = Vec::new();
    for kind in kinds.kinds() {
        all.extend(disks::disk_set(&loaded.matrix, kind)?);
    }
    emit(out, &to_json(&all))?;
    Ok(exit::OK)
}

/// Explains a failed guarantee: a small overshoot points at tolerances, a
/// large one at a defect.
fn describe_violation(report: &LocalizationReport<f64>, v: &Violation<f64>, scale: f64) -> String {
    let overshoot = report
        .multiple
        .iter()
        .find(|m| m.value == v.value)
        .and_then(|m| m.kind(v.kind))
        .map(|k| {
            k.disks
                .iter()
                .map(|d| (v.value - d.center).norm() - d.radius)
                .fold(f64::INFINITY, f64::min)
        })
        .unwrap_or(f64::NAN);
    let cause = if overshoot <= 1e-6 * scale {
        "tolerance failure (eigenvalue just outside; try a larger --tol)"
    } else {
        "likely a bug (eigenvalue well outside every disk)"
    };
    format!(
        "{} outside every {} disk by {overshoot:e}: {cause}",
        v.value, v.kind
    )
}

fn cmd_localize(input: &str, tol: f64, out: Option<&Path>) -> CliResult<i32> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::input(format!("--tol must be positive, got {tol}")));
    }
    let loaded = input::load(input)?;
    require_square(&loaded)?;
    let m = &loaded.matrix;
    if let Some((i, j)) = m.first_non_nonneg() {
        warn(&format!(
            "entry ({i}, {j}) = {} is not a non-negative real; no containment is guaranteed, reporting as a counterexample check",
            m[(i, j)]
        ));
    }
    let opts = LocalizeOptions {
        matrix_id: loaded.id.clone(),
        exact_values: loaded.exact_values.clone(),
        ..LocalizeOptions::with_tol(tol)
    };
    let report = localization::localize(m, &opts)?;
    emit(out, &to_json(&report))?;
    if report.theorem_holds() {
        return Ok(exit::OK);
    }
    for v in &report.violations {
        eprintln!("violation: {}", describe_violation(&report, v, m.scale()));
    }
    Ok(exit::VIOLATION)
}

fn cmd_check(params: CheckParams, out: Option<&Path>) -> CliResult<i32> {
    let summary = check::check_inequalities(params)?;
    emit(out, &to_json(&summary))?;
    if summary.violations() == 0 {
        return Ok(exit::OK);
    }
    for b in &summary.bounds {
        if b.violations > 0 {
            eprintln!("violation: {:?} bound exceeded in {} trials (max ratio {})", b.bound, b.violations, b.max_ratio);
        }
    }
    if summary.zonotope_violations > 0 {
        eprintln!(
            "violation: zonotope radius exceeded half the total length in {} trials",
            summary.zonotope_violations
        );
    }
    Ok(exit::VIOLATION)
}

fn cmd_plot(input: &str, kinds: &KindFlags, out: Option<&Path>) -> CliResult<i32> {
    let loaded = input::load(input)?;
    require_square(&loaded)?;
    let doc = plot::plot_document(&loaded.matrix, &kinds.kinds(), &loaded.exact_values)?;
    let as_json = out.is_some_and(|p| p.extension().is_some_and(|x| x.eq_ignore_ascii_case("json")));
    let content = if as_json { to_json(&doc) } else { plot::render_svg(&doc) };
    emit(out, &content)?;
    Ok(exit::OK)
}

fn cmd_example(id: &str, format: Format, out: Option<&Path>) -> CliResult<i32> {
    let named = halfdisk::generators::named::<f64>(id).map_err(|e| CliError::input(e.to_string()))?;
    let m = &named.matrix;
    let content = match format {
        Format::Json => to_json(&MatrixFile::from_matrix(m)),
        Format::Csv => {
            if m.entries().iter().any(|z| z.im != 0.0) {
                return Err(CliError::input(format!("`{id}` has complex entries; CSV holds reals only, use --format json")));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            for i in 0..m.n_rows() {
                w.write_record(m.row(i).iter().map(|z| format!("{}", z.re)))
                    .map_err(|e| CliError::io(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::io(e.to_string()))?).expect("csv output is utf-8")
        }
    };
    emit(out, &content)?;
    Ok(exit::OK)
}

/// Dispatches a parsed command line and returns the exit code.
pub fn execute(cli: Cli) -> CliResult<i32> {
    if cli.list_examples {
        emit(None, &(EXAMPLE_IDS.join("\n") + "\n"))?;
        return Ok(exit::OK);
    }
    match cli.command {
        None => Err(CliError::input("no command given; see --help")),
        Some(Command::Disks { input, kinds, out }) => cmd_disks(&input, &kinds, out.as_deref()),
        Some(Command::Localize { input, tol, out }) => cmd_localize(&input, tol, out.as_deref()),
        Some(Command::CheckInequalities {
            trials,
            n_max,
            d,
            seed,
            out,
        }) => cmd_check(CheckParams { trials, n_max, d, seed }, out.as_deref()),
        Some(Command::Plot { input, kinds, out }) => cmd_plot(&input, &kinds, out.as_deref()),
        Some(Command::Example { id, format, out }) => cmd_example(&id, format, out.as_deref()),
    }
}

/// Parses `args`, runs the command, reports errors on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INPUT } else { exit::OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code
        }
    }
}
