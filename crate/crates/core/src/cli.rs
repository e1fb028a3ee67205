//! The `pfdkit` command line.
//!
//! Every subcommand is a function from parsed arguments to an [`Outcome`]
//! holding stdout, stderr and the exit code, so the binary stays a thin
//! shell and the commands are testable in-process.
//!
//! Exit codes: 0 success, 1 mathematical negative (no decomposition, check
//! false, invalid document), 2 input error, 3 resource guard.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig, Suite};
use crate::decomp::{
    at_infinity, exponent_census, exists_pfd_via_flats, minimal_decomposition, primary_decomposition,
    render_report, verify_decomposition, PrimaryComponent, Violation, DEFAULT_COMPONENT_CAP,
};
use crate::error::{Error, Result};
use crate::ideal::{express_bounded_degree, BoundedOptions, GeneratorSpec, IdealWithBasis, Restriction};
use crate::matroid::{
    braid_arrangement, braid_flat_type, census, partition_flat_size, Arrangement, FlatSet, Mode, Partition,
};
use crate::parse::{parse_problem, ProblemFile};
use crate::pfd::{
    check_pfd, parse_document, reduce_and_pfd, reduced_exp, render_document, render_json, Method, PfdOptions,
    RationalFunction,
};
use crate::poly::Degree;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "pfdkit", version, about = "Exact partial fractions over hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Remove forms dividing the numerator.
    Reduce { file: PathBuf },
    /// Partial fraction decomposition of maximal (or requested) degree.
    Pfd(PfdArgs),
    /// Primary decomposition of the ideal generated by d-fold products.
    Decompose {
        file: PathBuf,
        #[arg(long, short = 'd')]
        d: usize,
        /// Greedily drop redundant components.
        #[arg(long)]
        minimal: bool,
        /// Check that the components intersect to the ideal.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        csv: bool,
        /// Largest number of components --verify will intersect.
        #[arg(long, default_value_t = DEFAULT_COMPONENT_CAP)]
        cap: usize,
    },
    /// Proper flats of the arrangement matroid.
    Flats {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        /// Also list the flat of all forms.
        #[arg(long)]
        with_top: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Braid arrangement x_i - x_j: flat types and the decomposition at degree d.
    Braid {
        #[arg(long, short = 'r')]
        r: usize,
        #[arg(long, short = 'd')]
        d: Option<usize>,
    },
    /// Decide whether a decomposition of the given degree exists.
    Check {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = CheckMethod::Flats)]
        method: CheckMethod,
    },
    /// Recombine a decomposition document against its problem.
    Verify { document: PathBuf, problem: PathBuf },
    /// Timed runs on seeded synthetic numerators.
    Bench {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = bench::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        samples: usize,
        /// Generator degree of the synthetic numerators.
        #[arg(long)]
        d: Option<usize>,
        /// Degree of the random coefficients.
        #[arg(long)]
        coefficient_degree: Option<u32>,
    },
}

#[derive(clap::Args, Debug)]
pub struct PfdArgs {
    pub file: PathBuf,
    /// Decompose at exactly this degree.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Stop the degree search here.
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// File of 1-based generator subsets, or a `forms:` line.
    #[arg(long)]
    pub restrict_generators: Option<PathBuf>,
    /// Decompose every term again until nothing changes.
    #[arg(long)]
    pub iterative: bool,
    /// Print JSON instead of the text document.
    #[arg(long)]
    pub json: bool,
    /// Also write the document to this file.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Gb,
    Linear,
    Recursive,
    Generic,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Gb => Method::Gb,
            MethodArg::Linear => Method::Linear,
            MethodArg::Recursive => Method::Recursive,
            MethodArg::Generic => Method::Generic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckMethod {
    Flats,
    Gb,
    Linear,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn negative(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: EXIT_NEGATIVE }
    }

    fn error(e: &Error) -> Self {
        let code = match e {
            Error::ResourceGuard(_) => EXIT_GUARD,
            _ => EXIT_INPUT,
        };
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code }
    }
}

/// Caps the rayon pool at `PFDKIT_THREADS` workers, if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("PFDKIT_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // a second call finds the pool already built, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: EXIT_INPUT }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(cmd: &Command) -> Outcome {
    let res = match cmd {
        Command::Reduce { file } => cmd_reduce(file),
        Command::Pfd(args) => cmd_pfd(args),
        Command::Decompose { file, d, minimal, verify, csv, cap } => {
            cmd_decompose(file, *d, *minimal, *verify, *csv, *cap)
        }
        Command::Flats { file, min_size, with_top, csv } => cmd_flats(file, *min_size, *with_top, *csv),
        Command::Braid { r, d } => cmd_braid(*r, *d),
        Command::Check { file, degree, method } => cmd_check(file, *degree, *method),
        Command::Verify { document, problem } => cmd_verify(document, problem),
        Command::Bench { suite, seed, samples, d, coefficient_degree } => cmd_bench(&BenchConfig {
            suite: *suite,
            seed: *seed,
            samples: *samples,
            d: *d,
            coefficient_degree: *coefficient_degree,
        }),
    };
    res.unwrap_or_else(|e| Outcome::error(&e))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Problem(format!("{}: {e}", path.display())))
}

fn load_problem(path: &Path) -> Result<ProblemFile> {
    parse_problem(&read(path)?)
}

fn load_function(path: &Path) -> Result<RationalFunction> {
    RationalFunction::from_problem(&load_problem(path)?)
}

fn one_based(idx: &[usize]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn cmd_reduce(file: &Path) -> Result<Outcome> {
    let rf = load_function(file)?;
    let red = reduced_exp(&rf)?;
    let mut s = String::new();
    if red.removed.is_empty() {
        s.push_str("no factors removed\n");
    } else {
        let forms: Vec<String> = red.removed.iter().map(|&i| format!("({})", rf.forms()[i])).collect();
        let _ = writeln!(s, "removed: {}", one_based(&red.removed));
        let _ = writeln!(s, "removed forms: {}", forms.join(" "));
        let _ = writeln!(s, "kept: {}", one_based(&red.kept));
    }
    s.push('\n');
    s.push_str(&red.function.to_problem().render());
    Ok(Outcome::ok(s))
}

/// Reads a generator restriction: one subset of 1-based indices per line,
/// or a single `forms: i j k` line limiting the pool of forms.
pub fn parse_restriction(text: &str, n: usize) -> Result<Restriction> {
    let mut pool: Option<Vec<usize>> = None;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (is_pool, body) = match line.strip_prefix("forms:") {
            Some(rest) => (true, rest),
            None => (false, line),
        };
        let mut idx = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| Error::Problem(format!("restriction line {}: bad index `{tok}`", ln + 1)))?;
            if i == 0 || i > n {
                return Err(Error::Problem(format!("restriction line {}: index {i} outside 1..={n}", ln + 1)));
            }
            idx.push(i - 1);
        }
        idx.sort_unstable();
        idx.dedup();
        if is_pool {
            if pool.is_some() {
                return Err(Error::Problem("restriction has more than one `forms:` line".into()));
            }
            pool = Some(idx);
        } else {
            subsets.push(idx);
        }
    }
    match (pool, subsets.is_empty()) {
        (Some(_), false) => Err(Error::Problem("restriction mixes a `forms:` line with subsets".into())),
        (Some(p), true) => Ok(Restriction::Forms(p)),
        (None, true) => Err(Error::Problem("restriction file lists no generators".into())),
        (None, false) => {
            let d = subsets[0].len();
            if subsets.iter().any(|t| t.len() != d) {
                return Err(Error::Problem("restriction subsets must all have the same size".into()));
            }
            subsets.sort();
            subsets.dedup();
            Ok(Restriction::Subsets(subsets))
        }
    }
}

pub fn cmd_pfd(args: &PfdArgs) -> Result<Outcome> {
    let rf = load_function(&args.file)?;
    let restriction = match &args.restrict_generators {
        Some(p) => parse_restriction(&read(p)?, rf.len())?,
        None => Restriction::All,
    };
    let restricted = restriction != Restriction::All;
    let opts = PfdOptions {
        degree: args.degree,
        max_degree: args.max_degree,
        method: args.method.into(),
        restriction,
        iterative: args.iterative,
        ..Default::default()
    };
    let Some(result) = reduce_and_pfd(&rf, &opts)? else {
        let msg = if restricted {
            "no decomposition found with the restricted generators\n"
        } else if args.degree.is_some() {
            "no decomposition of the requested degree\n"
        } else {
            "no decomposition of positive degree\n"
        };
        return Ok(Outcome::negative(msg.to_string()));
    };
    let doc = if args.json { render_json(&result, &rf) } else { render_document(&result, &rf) };
    if let Some(out) = &args.output {
        std::fs::write(out, &doc).map_err(|e| Error::Problem(format!("{}: {e}", out.display())))?;
    }
    Ok(Outcome::ok(doc))
}

fn component_csv(comps: &[PrimaryComponent]) -> String {
    let mut s = String::from("flat,size,exponent\n");
    for c in comps {
        let idx: Vec<String> = c.flat.indices().iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(s, "{},{},{}", idx.join(";"), c.flat.len(), c.exponent);
    }
    s
}

fn census_line(comps: &[PrimaryComponent]) -> String {
    let parts: Vec<String> = exponent_census(comps).iter().map(|(e, k)| format!("{k} x exp {e}")).collect();
    if parts.is_empty() {
        "census: none".into()
    } else {
        format!("census: {}", parts.join(", "))
    }
}

pub fn cmd_decompose(file: &Path, d: usize, minimal: bool, verify: bool, csv: bool, cap: usize) -> Result<Outcome> {
    let a = load_problem(file)?.arrangement()?;
    let mut comps = primary_decomposition(&a, d)?;
    if minimal {
        comps = minimal_decomposition(&a, d, &comps)?;
    }
    let verified = if verify { Some(verify_decomposition(&a, d, &comps, cap)?) } else { None };
    let mut s = String::new();
    if csv {
        s.push_str(&component_csv(&comps));
    } else {
        let _ = writeln!(s, "mode: {}", a.mode());
        let _ = writeln!(s, "forms: {}", a.len());
        let _ = writeln!(s, "d: {d}");
        let _ = writeln!(s, "components: {}", comps.len());
        if comps.is_empty() {
            s.push_str("the ideal is the whole ring\n");
        }
        s.push_str(&render_report(&a, &comps));
        let _ = writeln!(s, "{}", census_line(&comps));
    }
    match verified {
        Some(true) => {
            if !csv {
                s.push_str("verified: the components intersect to the ideal\n");
            }
            Ok(Outcome::ok(s))
        }
        Some(false) => {
            s.push_str("not verified: the intersection differs from the ideal\n");
            Ok(Outcome::negative(s))
        }
        None => Ok(Outcome::ok(s)),
    }
}

pub fn cmd_flats(file: &Path, min_size: usize, with_top: bool, csv: bool) -> Result<Outcome> {
    let a = load_problem(file)?.arrangement()?;
    let mut flats = a.flats_min_size(min_size);
    if !with_top {
        flats.retain(|f| f.len() < a.len());
    }
    let mut s = String::new();
    if csv {
        s.push_str("flat,size,rank\n");
        for f in &flats {
            let idx: Vec<String> = f.indices().iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(s, "{},{},{}", idx.join(";"), f.len(), a.rank_of_subset(f.indices())?);
        }
        return Ok(Outcome::ok(s));
    }
    let _ = writeln!(s, "flats: {}", flats.len());
    for (size, count) in census(&flats) {
        let _ = writeln!(s, "size {size}: {count}");
    }
    for f in &flats {
        let mark = if a.mode() == Mode::Affine && at_infinity(&a, f) { " at infinity" } else { "" };
        let _ = writeln!(s, "{} rank {}{mark}", f.display_one_based(), a.rank_of_subset(f.indices())?);
    }
    Ok(Outcome::ok(s))
}

pub fn cmd_braid(r: usize, d: Option<usize>) -> Result<Outcome> {
    let a = braid_arrangement(r)?;
    let n = a.len();
    let flats = a.flats_min_size(1);
    let mut s = String::new();
    let _ = writeln!(s, "braid arrangement: r = {r}, {n} forms");
    s.push_str("flat types:\n");
    for lambda in Partition::all(r as u32) {
        let count = flats.iter().filter(|f| braid_flat_type(r, f) == lambda).count();
        if partition_flat_size(&lambda) == 0 {
            continue;
        }
        let _ = writeln!(s, "  {lambda}: {count} flats of size {}", partition_flat_size(&lambda));
    }
    if let Some(d) = d {
        let comps = primary_decomposition(&a, d)?;
        let _ = writeln!(s, "d: {d}");
        let _ = writeln!(s, "components: {}", comps.len());
        for c in &comps {
            let _ = writeln!(s, "  {} type {} exp {}", c.flat.display_one_based(), braid_flat_type(r, &c.flat), c.exponent);
        }
        let _ = writeln!(s, "{}", census_line(&comps));
    }
    Ok(Outcome::ok(s))
}

fn witness_line(a: &Arrangement, v: &Violation) -> String {
    let forms: Vec<String> = v.flat.indices().iter().map(|&i| format!("({})", a.form(i))).collect();
    format!(
        "witness: flat {} needs vanishing order {} but has {}\nwitness forms: {}\n",
        v.flat.display_one_based(),
        v.required,
        v.actual,
        forms.join(" ")
    )
}

pub fn cmd_check(file: &Path, degree: usize, method: CheckMethod) -> Result<Outcome> {
    let p = load_problem(file)?;
    let a = p.arrangement()?;
    let f = p.numerator()?;
    let n = a.len();
    if degree == 0 || degree > n {
        return Err(Error::Invalid(format!("degree {degree} must lie in 1..={n}")));
    }
    let (holds, witness) = match method {
        CheckMethod::Flats => {
            let c = exists_pfd_via_flats(f, &a, degree)?;
            (c.holds, c.witness)
        }
        CheckMethod::Gb => (IdealWithBasis::dfold(&a, &GeneratorSpec::all(degree))?.member(f)?, None),
        CheckMethod::Linear => {
            let bound = match f.total_degree() {
                Degree::Finite(k) => k as i64 - degree as i64,
                Degree::NegInfinity => 0,
            };
            let rep = express_bounded_degree(f, &a, &GeneratorSpec::all(degree), bound, &BoundedOptions::default())?;
            (rep.is_some(), None)
        }
    };
    let mut s = String::from(if holds { "yes\n" } else { "no\n" });
    if let Some(v) = &witness {
        s.push_str(&witness_line(&a, v));
    }
    Ok(if holds { Outcome::ok(s) } else { Outcome::negative(s) })
}

pub fn cmd_verify(document: &Path, problem: &Path) -> Result<Outcome> {
    let rf = load_function(problem)?;
    let doc = parse_document(&read(document)?)?;
    let result = doc.to_result(&rf)?;
    Ok(match check_pfd(&result, &rf) {
        Ok(()) => Outcome::ok("valid\n".into()),
        Err(reason) => Outcome::negative(format!("invalid: {reason}\n")),
    })
}

pub fn cmd_bench(cfg: &BenchConfig) -> Result<Outcome> {
    let reports = bench::run(cfg)?;
    let s = bench::render(cfg, &reports);
    Ok(if reports.iter().all(|r| r.passed()) { Outcome::ok(s) } else { Outcome::negative(s) })
}

/// Flat types of a braid arrangement as `(partition, count, size)`, all flats included.
pub fn braid_flat_table(r: usize) -> Result<Vec<(Partition, usize, u64)>> {
    let a = braid_arrangement(r)?;
    let flats: Vec<FlatSet> = a.flats_min_size(1);
    Ok(Partition::all(r as u32)
        .into_iter()
        .map(|l| {
            let count = flats.iter().filter(|f| braid_flat_type(r, f) == l).count();
            let size = partition_flat_size(&l);
            (l, count, size)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn restriction_files() {
        assert_eq!(parse_restriction("# pool\nforms: 1 3 4\n", 4).unwrap(), Restriction::Forms(vec![0, 2, 3]));
        assert_eq!(
            parse_restriction("2 1\n3,4\n1 2\n", 4).unwrap(),
            Restriction::Subsets(vec![vec![0, 1], vec![2, 3]])
        );
        assert!(parse_restriction("1 2\n3\n", 4).is_err());
        assert!(parse_restriction("1 5\n", 4).is_err());
        assert!(parse_restriction("forms: 1\n2 3\n", 4).is_err());
        assert!(parse_restriction("# nothing\n", 4).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run(["pfdkit", "pfd"]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stdout.is_empty());
        let out = run(["pfdkit", "check", "missing.problem", "--degree", "1"]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("missing.problem"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let out = run(["pfdkit", "--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("decompose"));
    }

    #[test]
    fn braid_table_for_four_strands() {
        let t = braid_flat_table(4).unwrap();
        let rendered: Vec<(String, usize)> = t.iter().map(|(l, c, _)| (l.to_string(), *c)).collect();
        assert_eq!(
            rendered,
            vec![
                ("(4)".to_string(), 1),
                ("(3,1)".to_string(), 4),
                ("(2,2)".to_string(), 3),
                ("(2,1,1)".to_string(), 6),
                ("(1,1,1,1)".to_string(), 0),
            ]
        );
    }
}
