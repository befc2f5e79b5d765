//! Command-line driver for profile recognition and the obstruction family.
//!
//! [`run`] is the testable entry point: it takes the raw argument list and
//! two output sinks and returns the process exit code. Code 0 means success
//! (and, for checks, that the property holds), 1 means a check failed or an
//! obstruction was found, 2 means bad usage or unreadable input. Results go
//! to `out`, errors to `err`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::axes::{enumerate_axes, find_sp_obstruction, SpWitness, DEFAULT_AXIS_CAP};
use crate::crossing::{find_sc_obstruction, find_sc_order, ScWitness};
use crate::euclid::{
    recognize_euclidean, verify_embedding, ConstraintMode, Embedding, EuclideanStatus,
};
use crate::family::{distance_row, gen_embedding, gen_profile, minimality_check};
use crate::profile::Profile;

macro_rules! outln {
    ($dst:expr) => {{
        let _ = writeln!($dst);
    }};
    ($dst:expr, $($arg:tt)*) => {{
        let _ = writeln!($dst, $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "prefdom",
    version,
    about = "Recognize one-dimensional structure in preference profiles"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report whether a profile is single-peaked, single-crossing, and Euclidean
    Recognize {
        /// Profile file: a header "m n" and one ranking per line
        file: PathBuf,
        /// Stop enumerating single-peaked axes beyond this many
        #[arg(long, default_value_t = DEFAULT_AXIS_CAP)]
        axis_cap: usize,
    },
    /// Search a profile for a forbidden substructure
    Witness {
        /// Profile file to search
        file: PathBuf,
        /// Which property to refute
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Print family member k: single-peaked, single-crossing, not Euclidean
    Generate {
        /// Family index; the member has 4k alternatives and 2k voters
        #[arg(long)]
        k: usize,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the closed-form embedding of member k with voter s deleted
    Embed {
        /// Family index
        #[arg(long)]
        k: usize,
        /// Voter to delete, between 1 and 2k
        #[arg(long)]
        s: usize,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an embedding file against a profile file
    Verify {
        /// Profile file
        profile: PathBuf,
        /// Embedding file
        embedding: PathBuf,
        /// Which pairs to check: all of them, or consecutive ones only
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Check that member k is minimally non-Euclidean
    Minimality {
        /// Family index
        #[arg(long)]
        k: usize,
    },
    /// Print the alternative spacings of the closed-form embeddings of member k
    Table {
        /// Family index
        #[arg(long)]
        k: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Aligned)]
        format: Format,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Property {
    /// Single-peakedness
    Sp,
    /// Single-crossingness
    Sc,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Every pair of alternatives, per voter
    Full,
    /// Consecutive pairs in each ranking only
    Reduced,
}

impl From<Mode> for ConstraintMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Full => ConstraintMode::Full,
            Mode::Reduced => ConstraintMode::Reduced,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Right-aligned columns with spacing labels
    Aligned,
    /// Bare tab-separated rows
    Tsv,
}

/// Parses `args` (including the program name) and executes the command,
/// writing results to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            // --help and --version go to standard output and succeed.
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match cli.cmd {
        Cmd::Recognize { file, axis_cap } => cmd_recognize(&file, axis_cap, out, err),
        Cmd::Witness { file, property } => cmd_witness(&file, property, out, err),
        Cmd::Generate { k, output } => cmd_generate(k, output.as_deref(), out, err),
        Cmd::Embed { k, s, output } => cmd_embed(k, s, output.as_deref(), out, err),
        Cmd::Verify {
            profile,
            embedding,
            mode,
        } => cmd_verify(&profile, &embedding, mode.into(), out, err),
        Cmd::Minimality { k } => cmd_minimality(k, out, err),
        Cmd::Table { k, format } => cmd_table(k, format, out, err),
    }
}

fn cmd_recognize(path: &Path, axis_cap: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if axis_cap == 0 {
        outln!(err, "error: --axis-cap must be at least 1");
        return 2;
    }
    let Some(p) = load_profile(path, err) else {
        return 2;
    };
    outln!(out, "profile: m={} n={}", p.m(), p.n());
    let axes = enumerate_axes(&p, axis_cap);
    if axes.axes().is_empty() {
        outln!(out, "single-peaked: no");
    } else {
        outln!(out, "single-peaked: yes");
        outln!(
            out,
            "axes: {}{}",
            axes.axes().len(),
            if axes.truncated() {
                " (cap reached)"
            } else {
                ""
            }
        );
        for axis in axes.axes().iter().take(5) {
            outln!(out, "axis: {}", join(axis, " "));
        }
    }
    match find_sc_order(&p) {
        Some(order) => {
            outln!(out, "single-crossing: yes");
            outln!(out, "order: {}", join(&order, " "));
        }
        None => outln!(out, "single-crossing: no"),
    }
    let result = recognize_euclidean(&p, axis_cap);
    match result.status() {
        EuclideanStatus::Euclidean { axis, embedding } => {
            outln!(out, "euclidean: YES");
            outln!(out, "axis: {}", join(axis, " "));
            outln!(out, "embedding:");
            let _ = write!(out, "{}", embedding.to_text());
        }
        EuclideanStatus::NotEuclidean { refutations } => {
            outln!(out, "euclidean: NO");
            outln!(out, "axes refuted: {}", refutations.len());
        }
        EuclideanStatus::Unknown => {
            outln!(out, "euclidean: UNKNOWN");
            outln!(out, "axes tried: {} (cap reached)", result.axes_tried());
        }
    }
    0
}

fn cmd_witness(path: &Path, property: Property, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let Some(p) = load_profile(path, err) else {
        return 2;
    };
    match property {
        Property::Sp => match find_sp_obstruction(&p) {
            None => {
                outln!(out, "single-peaked: no obstruction");
                0
            }
            Some(SpWitness::Triple { voters, alts }) => {
                outln!(
                    out,
                    "obstruction: worst-triple voters={} alts={}",
                    join(&voters, ","),
                    join(&alts, ",")
                );
                1
            }
            Some(SpWitness::Interval4 { voters, alts }) => {
                outln!(
                    out,
                    "obstruction: interval voters={} alts={}",
                    join(&voters, ","),
                    join(&alts, ",")
                );
                1
            }
        },
        Property::Sc => match find_sc_obstruction(&p) {
            None => {
                outln!(out, "single-crossing: no obstruction");
                0
            }
            Some(ScWitness::Gamma { voters, pairs }) => {
                let pairs: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}>{b}")).collect();
                outln!(
                    out,
                    "obstruction: flip-triple voters={} pairs={}",
                    join(&voters, ","),
                    pairs.join(",")
                );
                1
            }
            Some(ScWitness::Delta { voters, pairs }) => {
                let pairs: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}:{b}")).collect();
                outln!(
                    out,
                    "obstruction: four-orientations voters={} pairs={}",
                    join(&voters, ","),
                    pairs.join(",")
                );
                1
            }
        },
    }
}

fn cmd_generate(k: usize, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if k < 2 {
        outln!(err, "error: --k must be at least 2");
        return 2;
    }
    emit(&gen_profile(k).to_text(), output, out, err)
}

fn cmd_embed(
    k: usize,
    s: usize,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    if k < 2 {
        outln!(err, "error: --k must be at least 2");
        return 2;
    }
    if s < 1 || s > 2 * k {
        outln!(err, "error: --s must be between 1 and {}", 2 * k);
        return 2;
    }
    emit(&gen_embedding(k, s).to_text(), output, out, err)
}

fn cmd_verify(
    profile: &Path,
    embedding: &Path,
    mode: ConstraintMode,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(p) = load_profile(profile, err) else {
        return 2;
    };
    let Some(e) = load_embedding(embedding, err) else {
        return 2;
    };
    match verify_embedding(&p, &e, mode) {
        Err(e) => {
            outln!(err, "error: {e}");
            2
        }
        Ok(report) if report.ok() => {
            outln!(out, "verification: ok");
            0
        }
        Ok(report) => {
            for v in report.violations() {
                outln!(
                    out,
                    "violation: voter {} prefers {} over {}",
                    v.voter,
                    v.preferred,
                    v.other
                );
            }
            outln!(
                out,
                "verification: FAILED ({} violations)",
                report.violations().len()
            );
            1
        }
    }
}

fn cmd_minimality(k: usize, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if k < 2 {
        outln!(err, "error: --k must be at least 2");
        return 2;
    }
    let report = minimality_check(k);
    outln!(
        out,
        "not-euclidean: {}",
        if report.family_not_euclidean() {
            "yes"
        } else {
            "no"
        }
    );
    for d in report.deletions() {
        match d.lp_euclidean {
            Some(solved) => outln!(
                out,
                "delete {}: closed-form violations={} solver={}",
                d.s,
                d.closed_form_violations,
                if solved { "euclidean" } else { "not-euclidean" }
            ),
            None => outln!(
                out,
                "delete {}: closed-form violations={}",
                d.s,
                d.closed_form_violations
            ),
        }
    }
    if report.passes() {
        outln!(out, "minimality: PASS");
        0
    } else {
        outln!(out, "minimality: FAIL");
        1
    }
}

fn cmd_table(k: usize, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if k < 2 {
        outln!(err, "error: --k must be at least 2");
        return 2;
    }
    let rows: Vec<Vec<BigInt>> = (1..=2 * k).map(|s| distance_row(k, s)).collect();
    match format {
        Format::Tsv => {
            for row in &rows {
                outln!(out, "{}", join(row, "\t"));
            }
        }
        Format::Aligned => {
            let labels: Vec<String> = (2..=4 * k).map(|j| format!("d{j}")).collect();
            let row_labels: Vec<String> = (1..=2 * k).map(|s| format!("E_{s}")).collect();
            let head = row_labels.iter().map(String::len).max().unwrap();
            let mut widths: Vec<usize> = labels.iter().map(String::len).collect();
            for row in &rows {
                for (j, cell) in row.iter().enumerate() {
                    widths[j] = widths[j].max(cell.to_string().len());
                }
            }
            let mut line = format!("{:head$}", "");
            for (j, label) in labels.iter().enumerate() {
                line.push_str(&format!("  {label:>width$}", width = widths[j]));
            }
            outln!(out, "{line}");
            for (i, row) in rows.iter().enumerate() {
                let mut line = format!("{:<head$}", row_labels[i]);
                for (j, cell) in row.iter().enumerate() {
                    line.push_str(&format!("  {cell:>width$}", width = widths[j]));
                }
                outln!(out, "{line}");
            }
        }
    }
    0
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                outln!(err, "error: {}: {e}", path.display());
                return 2;
            }
            0
        }
        None => {
            let _ = write!(out, "{text}");
            0
        }
    }
}

fn load_profile(path: &Path, err: &mut dyn Write) -> Option<Profile> {
    let text = read(path, err)?;
    match Profile::parse(&text) {
        Ok(p) => Some(p),
        Err(e) => {
            outln!(err, "error: {}: {e}", path.display());
            None
        }
    }
}

fn load_embedding(path: &Path, err: &mut dyn Write) -> Option<Embedding> {
    let text = read(path, err)?;
    match Embedding::parse(&text) {
        Ok(e) => Some(e),
        Err(e) => {
            outln!(err, "error: {}: {e}", path.display());
            None
        }
    }
}

fn read(path: &Path, err: &mut dyn Write) -> Option<String> {
    match std::fs::read_to_string(path) {
        Ok(text) => Some(text),
        Err(e) => {
            outln!(err, "error: {}: {e}", path.display());
            None
        }
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}
