//! Command-line front end for isotropic pair classification.
//!
//! Exit status: 0 on success or "equivalent", 1 for "not equivalent" or a
//! failed check, 2 for any input error (unreadable file, malformed or
//! invalid document, bad arguments).

pub mod document;
pub mod report;
pub mod selfcheck;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use isopair::classify::{
    conjugated_model, elementary_decompose, invariants, multiplicities, normal_form, random_pair,
    verify_decomposition, MultiplicityVector, NUM_TYPES,
};
use isopair::poisson::{poisson_isomorphism, CoisotropicPair};

pub use document::{Instance, InstanceDocument, InputError, Mode};
pub use report::{ClassificationReport, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "isopair", version, about = "Classify pairs of isotropic subspaces of presymplectic spaces")]
pub struct Cli {
    /// Output format; `structured` prints one JSON document per instance.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Expected document mode; `gen` emits documents in this mode.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    /// Seed for `gen` and `selfcheck`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include the normal-form map in `classify` output.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Include every intermediate subspace in `decompose` output.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Number of input files processed concurrently.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the ten dimension invariants k.
    Invariants {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print k, the multiplicities n and the elementary summand dimensions.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the ten elementary summands and a verification report.
    Decompose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Exit 0 if the two instances are equivalent, 1 otherwise.
    Equivalent { first: PathBuf, second: PathBuf },
    /// Emit a pseudo-random instance.
    Gen {
        #[arg(long)]
        dim: Option<usize>,
        /// Rank of the form; defaults to the largest even number <= dim.
        #[arg(long)]
        rank: Option<usize>,
        /// Ground-truth multiplicities: ten comma-separated counts, or a
        /// sum of unit vectors such as `e2+e9` or `2e3+e5`.
        #[arg(long)]
        multiplicities: Option<String>,
    },
    /// Run the built-in audit.
    Selfcheck,
}

/// How a command ended, short of writing its output.
#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Check(_) => EXIT_FAILED,
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

pub fn load(path: &Path, expected: Option<Mode>) -> Result<Instance, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::Parse(format!("{}: {e}", path.display())))?;
    let doc = InstanceDocument::parse(&text)?;
    if let Some(mode) = expected {
        if mode != doc.mode {
            return Err(InputError::Validation(format!(
                "document mode {} does not match --mode {mode}",
                doc.mode
            )));
        }
    }
    doc.validate()
}

/// Parses `--multiplicities`.
pub fn parse_multiplicities(s: &str) -> Result<MultiplicityVector, String> {
    let s = s.trim();
    if s.contains(',') {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != NUM_TYPES {
            return Err(format!("expected {NUM_TYPES} comma-separated counts, found {}", parts.len()));
        }
        let mut n = [0; NUM_TYPES];
        for (x, p) in n.iter_mut().zip(parts) {
            *x = p.parse().map_err(|_| format!("{p:?} is not a non-negative integer"))?;
        }
        return Ok(MultiplicityVector(n));
    }
    let mut n = MultiplicityVector::zero();
    for term in s.split('+').map(str::trim) {
        let (count, index) = term.split_once('e').ok_or_else(|| format!("bad term {term:?}"))?;
        let count: usize = if count.is_empty() {
            1
        } else {
            count.parse().map_err(|_| format!("bad coefficient in {term:?}"))?
        };
        let index: usize = index.parse().map_err(|_| format!("bad index in {term:?}"))?;
        if !(1..=NUM_TYPES).contains(&index) {
            return Err(format!("type index {index} out of range 1..={NUM_TYPES}"));
        }
        n.0[index - 1] += count;
    }
    Ok(n)
}

fn classify_report(cli: &Cli, instance: &Instance, decompose: bool) -> Result<ClassificationReport, Failure> {
    let internal = |e: isopair::Error| Failure::Check(e.to_string());
    let pair = instance.isotropic();
    let mut report = ClassificationReport {
        k: invariants(&pair).map_err(internal)?,
        n: Some(multiplicities(&pair).map_err(internal)?),
        ..Default::default()
    };
    let d = elementary_decompose(&pair).map_err(internal)?;
    report.summand_dims = Some(d.summand_dims());
    if decompose {
        report.summands = Some(
            d.summands.iter().map(|s| (format!("V{}", s.type_index), s.space.clone())).collect(),
        );
        if cli.trace {
            report.trace = Some(d.trace.entries().iter().map(|(l, s)| (l.to_string(), s.clone())).collect());
        }
        report.verification = verify_decomposition(&pair, &d).checks;
    } else if cli.witness {
        let w = normal_form(&pair).map_err(internal)?;
        if let Instance::Coisotropic(_) = instance {
            report.poisson_map = Some(poisson_isomorphism(&w).map_err(internal)?);
        }
        report.witness = Some(w.phi);
    }
    Ok(report)
}

fn process_file(cli: &Cli, path: &Path, labelled: bool) -> Result<String, (String, Failure)> {
    let fail = |f: Failure| (String::new(), f);
    let instance = load(path, cli.mode).map_err(|e| fail(e.into()))?;
    let mut report = match &cli.command {
        Command::Invariants { .. } => {
            let k = invariants(&instance.isotropic()).map_err(|e| fail(Failure::Check(e.to_string())))?;
            ClassificationReport { k, ..Default::default() }
        }
        Command::Classify { .. } => classify_report(cli, &instance, false).map_err(fail)?,
        _ => classify_report(cli, &instance, true).map_err(fail)?,
    };
    if labelled {
        report.input = Some(path.display().to_string());
    }
    let text = report.render(cli.format).map_err(|e| fail(Failure::Check(e)))?;
    if !report.verification_passed() {
        return Err((text, Failure::Check(format!("{}: decomposition verification failed", path.display()))));
    }
    Ok(text)
}

fn run_files(cli: &Cli, files: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let labelled = files.len() > 1;
    let results: Vec<Result<String, (String, Failure)>> = if cli.jobs > 1 && files.len() > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs as usize).build();
        match pool {
            Ok(pool) => pool.install(|| files.par_iter().map(|f| process_file(cli, f, labelled)).collect()),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAILED;
            }
        }
    } else {
        files.iter().map(|f| process_file(cli, f, labelled)).collect()
    };
    let mut code = EXIT_OK;
    for (path, r) in files.iter().zip(results) {
        match r {
            Ok(text) => {
                let _ = out.write_all(text.as_bytes());
            }
            Err((text, f)) => {
                let _ = out.write_all(text.as_bytes());
                let msg = match &f {
                    Failure::Input(m) | Failure::Check(m) => m,
                };
                let _ = writeln!(err, "error: {}: {msg}", path.display());
                code = code.max(f.code());
            }
        }
    }
    code
}

fn run_equivalent(cli: &Cli, first: &Path, second: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let a = load(first, cli.mode)?;
    let b = load(second, cli.mode)?;
    let mode_of = |i: &Instance| matches!(i, Instance::Coisotropic(_));
    if mode_of(&a) != mode_of(&b) {
        return Err(Failure::Input("instances are in different modes".into()));
    }
    let internal = |e: isopair::Error| Failure::Check(e.to_string());
    let na = multiplicities(&a.isotropic()).map_err(internal)?;
    let nb = multiplicities(&b.isotropic()).map_err(internal)?;
    let equal = na == nb;
    match cli.format {
        Format::Text => {
            if equal {
                let _ = writeln!(out, "equivalent");
            } else {
                let _ = writeln!(out, "not equivalent\nn1 = {na}\nn2 = {nb}");
            }
        }
        Format::Structured => {
            let v = serde_json::json!({ "equivalent": equal, "n1": na.0, "n2": nb.0 });
            let _ = writeln!(out, "{v}");
        }
    }
    Ok(if equal { EXIT_OK } else { EXIT_FAILED })
}

fn run_gen(
    cli: &Cli,
    dim: Option<usize>,
    rank: Option<usize>,
    requested: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let seed = cli.seed.unwrap_or(0);
    let generated = match requested {
        Some(s) => {
            let n = parse_multiplicities(s).map_err(|e| Failure::Input(format!("--multiplicities: {e}")))?;
            if let Some(d) = dim.filter(|&d| d != n.total_dim()) {
                return Err(Failure::Input(format!(
                    "--dim {d} does not match the multiplicities (total dimension {})",
                    n.total_dim()
                )));
            }
            if let Some(r) = rank.filter(|&r| r != n.rank()) {
                return Err(Failure::Input(format!(
                    "--rank {r} does not match the multiplicities (rank {})",
                    n.rank()
                )));
            }
            conjugated_model(&n, seed)
        }
        None => {
            let dim = dim.ok_or_else(|| Failure::Input("gen needs --dim or --multiplicities".into()))?;
            let rank = rank.unwrap_or(dim - dim % 2);
            random_pair(dim, rank, seed).map_err(|e| Failure::Input(e.to_string()))?
        }
    };
    let doc = match cli.mode.unwrap_or(Mode::Presymplectic) {
        Mode::Presymplectic => InstanceDocument::from_isotropic(&generated.pair),
        Mode::Poisson => InstanceDocument::from_coisotropic(&CoisotropicPair::from_isotropic_pair(&generated.pair)),
    };
    let _ = out.write_all(doc.emit().as_bytes());
    Ok(EXIT_OK)
}

fn run_selfcheck(cli: &Cli, out: &mut dyn Write) -> i32 {
    let report = selfcheck::selfcheck(cli.seed.unwrap_or(selfcheck::DEFAULT_SEED));
    for (name, r) in &report.checks {
        let _ = match r {
            Ok(()) => writeln!(out, "pass {name}"),
            Err(e) => writeln!(out, "FAIL {name}: {e}"),
        };
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Invariants { files } | Command::Classify { files } | Command::Decompose { files } => {
            return run_files(&cli, files, out, err);
        }
        Command::Equivalent { first, second } => run_equivalent(&cli, first, second, out),
        Command::Gen { dim, rank, multiplicities } => run_gen(&cli, *dim, *rank, multiplicities.as_deref(), out),
        Command::Selfcheck => Ok(run_selfcheck(&cli, out)),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Check(m) => m,
            };
            let _ = writeln!(err, "error: {msg}");
            f.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_syntax() {
        assert_eq!(parse_multiplicities("e5").unwrap(), MultiplicityVector::unit(5));
        assert_eq!(
            parse_multiplicities("e2+e9").unwrap(),
            MultiplicityVector::unit(2) + MultiplicityVector::unit(9)
        );
        assert_eq!(parse_multiplicities("2e3").unwrap().0[2], 2);
        assert_eq!(parse_multiplicities("1,0,0,0,0,0,0,0,0,3").unwrap().0, [1, 0, 0, 0, 0, 0, 0, 0, 0, 3]);
        assert!(parse_multiplicities("e11").is_err());
        assert!(parse_multiplicities("1,2").is_err());
        assert!(parse_multiplicities("x").is_err());
    }
}
