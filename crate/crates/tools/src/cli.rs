//! The `ccc` command line.
//!
//! Exit status: 0 on success, 1 when the mathematics says no (axiom
//! violation, non-orientable, duality mismatch), 2 on unreadable input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use ccc_core::chains::ChainComplex;
use ccc_core::duality::{dual_orientations, intersection_matrix, stokes_check, verify_duality};
use ccc_core::flags::{orient, orient_all_cells};
use ccc_core::subdivision::{barycentric, barycentric_via_stellar, stellar};
use ccc_core::{Ccc, CellId, Error};

use crate::fixtures::fixture;
use crate::format::{parse_complex, write_complex};
use crate::report;

#[derive(Parser, Debug)]
#[command(name = "ccc", version, about = "Combinatorial cell complexes: orientation, homology, subdivision, duality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a built-in complex. `simplex` takes a dimension; any name may
    /// carry the suffix `_x_edge` for its product with an edge.
    Example {
        name: String,
        dimension: Option<usize>,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// Check the cell complex axioms.
    Validate { file: PathBuf },
    /// Counts and shape.
    Info { file: PathBuf },
    /// Print an orientation of the whole complex, or an odd flag cycle.
    Orient { file: PathBuf },
    Homology {
        file: PathBuf,
        /// `key=value` lines instead of the table.
        #[arg(long)]
        kv: bool,
    },
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        kv: bool,
    },
    Subdivide(SubdivideArgs),
    /// Write the dual complex.
    Dual {
        file: PathBuf,
        #[arg(short, long, default_value = "-")]
        output: PathBuf,
    },
    /// Check the duality hypotheses and compare homology with complementary
    /// cohomology.
    Duality { file: PathBuf },
    /// Check the pairing identities and print the homology pairing
    /// matrices.
    Stokes {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["at", "barycentric", "bary_via_stellar"])))]
pub struct SubdivideArgs {
    pub file: PathBuf,
    /// Stellar subdivision at the given cell id.
    #[arg(long)]
    pub at: Option<String>,
    #[arg(long)]
    pub barycentric: bool,
    /// Barycentric subdivision as a tower of stellar moves, relabelled by
    /// chains.
    #[arg(long)]
    pub bary_via_stellar: bool,
    /// With `--bary-via-stellar`, also write every stage and a manifest
    /// into this directory.
    #[arg(long, requires = "bary_via_stellar")]
    pub stages: Option<PathBuf>,
    #[arg(short, long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: exit 2.
    #[error("{0}")]
    Input(String),
    /// A mathematical check failed: exit 1. The text is the certificate.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::OddFlagCycle(cycle) => CliError::Failed(report::odd_cycle(&cycle)),
            Error::InvalidName(_) | Error::UnknownCell(_) | Error::DuplicateCell(_) | Error::CoverRankOrder { .. } | Error::CoverCycle(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Failed(format!("{other}\n")),
        }
    }
}

pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<Ccc, CliError> {
        let text = if path == Path::new("-") {
            let mut buf = String::new();
            self.stdin
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            buf
        } else {
            fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        };
        parse_complex(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<(), CliError> {
        if path == Path::new("-") {
            self.stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        } else {
            fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
    }

    fn print(&mut self, text: &str) -> Result<(), CliError> {
        self.write(Path::new("-"), text)
    }
}

/// Runs one command; on failure the error carries the message for stderr.
pub fn execute(cli: Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    match cli.command {
        Command::Example { name, dimension, output } => {
            let s = fixture(&name, dimension).ok_or_else(|| CliError::Input(format!("unknown example `{name}`")))?;
            io.write(&output, &write_complex(&s))
        }
        Command::Validate { file } => {
            let s = io.read(&file)?;
            let r = s.validate_axioms();
            if r.passed() {
                io.print(&report::validation(&r))
            } else {
                Err(CliError::Failed(report::validation(&r)))
            }
        }
        Command::Info { file } => {
            let s = io.read(&file)?;
            io.print(&report::info(&s))
        }
        Command::Orient { file } => {
            let s = io.read(&file)?;
            let w = orient(&s)?;
            io.print(&w.to_string())
        }
        Command::Homology { file, kv } => groups(io, &file, kv, false),
        Command::Cohomology { file, kv } => groups(io, &file, kv, true),
        Command::Subdivide(args) => subdivide(io, args),
        Command::Dual { file, output } => {
            let s = io.read(&file)?;
            io.write(&output, &write_complex(&s.dual()?))
        }
        Command::Duality { file } => {
            let s = io.read(&file)?;
            let r = verify_duality(&s)?;
            let text = report::duality(&r);
            if r.confirmed() {
                io.print(&text)
            } else {
                Err(CliError::Failed(text))
            }
        }
        Command::Stokes { file, samples, seed } => {
            let s = io.read(&file)?;
            let set = dual_orientations(&s, &orient(&s)?)?;
            let r = stokes_check(&s, &set, samples, seed)?;
            let n = s.dimension().unwrap_or(0);
            let matrices = (0..=n)
                .map(|d| Ok((d, intersection_matrix(&s, &set, d)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            let text = report::stokes(&r, &matrices);
            let unimodular = matrices
                .iter()
                .all(|(_, m)| m.rows() == m.cols() && m.determinant().is_some_and(|d| d.abs() == 1));
            if r.passed() && unimodular {
                io.print(&text)
            } else {
                Err(CliError::Failed(text))
            }
        }
    }
}

fn groups(io: &mut Io<'_>, file: &Path, kv: bool, upper: bool) -> Result<(), CliError> {
    let s = io.read(file)?;
    let cc = ChainComplex::new(&s, &orient_all_cells(&s)?)?;
    let h = if upper { cc.cohomology() } else { cc.homology() };
    let text = if kv { report::homology_kv(&h, upper) } else { report::homology(&h, upper) };
    io.print(&text)
}

fn subdivide(io: &mut Io<'_>, args: SubdivideArgs) -> Result<(), CliError> {
    let s = io.read(&args.file)?;
    let out = if let Some(at) = &args.at {
        let x: CellId = at.parse().map_err(|_| CliError::Input(format!("bad cell id `{at}`")))?;
        if !s.contains(&x) {
            return Err(CliError::Input(format!("unknown cell `{x}`")));
        }
        stellar(&s, &x, &orient_all_cells(&s)?)?.complex
    } else if args.barycentric {
        barycentric(&s)?.0
    } else {
        let tower = barycentric_via_stellar(&s, &orient_all_cells(&s)?)?;
        if let Some(dir) = &args.stages {
            fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
            for (k, st) in tower.stages.iter().enumerate() {
                io.write(&dir.join(format!("stage-{:03}.ccc", k + 1)), &write_complex(&st.complex))?;
            }
            io.write(&dir.join("manifest.txt"), &report::manifest(&tower))?;
        }
        tower.relabelled()?.0
    };
    io.write(&args.output, &write_complex(&out))
}

/// Parses `args` and runs; returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let mut io = Io { stdin, stdout };
    match execute(cli, &mut io) {
        Ok(()) => 0,
        Err(e) => {
            let text = e.to_string();
            let _ = write!(stderr, "{text}");
            if !text.ends_with('\n') {
                let _ = writeln!(stderr);
            }
            e.code()
        }
    }
}
