//! The `fmlattice` command line tool.
//!
//! Exit codes: 0 ok, 1 other errors, 2 malformed input, 3 degenerate
//! lattice, 4 rank or definiteness violation, 5 failed precondition of the
//! chosen counting path, 6 verification mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::counting::{
    count_fm, count_fm_fixed_complement, count_fm_general, describe_obstruction, CountOptions, FmCountReport,
    HodgeIsometrySpec,
};
use crate::definite::{genus_representatives, genus_symbol, h_obstruction, HFilterRule};
use crate::error::{Error, Result};
use crate::fqm::{
    isometry_group_bounded, isotropic_subgroups, signature_mod8, FiniteQuadraticModule, LatticeDiscriminant,
    DEFAULT_ENUMERATION_BOUND,
};
use crate::gluing::{check_gluing_identity, gluing_data_of};
use crate::json::{parse_fqm, parse_hodge, parse_lattice, report_to_json, FqmJson};
use crate::lattice::Lattice;
use crate::random::{random_even_lattice, random_primitive_sublattice, rng, DEFAULT_SEED};
use crate::registry::{verify_registry, Status};

pub const EXIT_VERIFICATION: i32 = 6;

#[derive(Parser, Debug)]
#[command(name = "fmlattice", version, about = "Exact lattice computations and Fourier-Mukai partner counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// JSON file with a lattice
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// inline lattice JSON, e.g. '[[24,-3],[-3,10]]'
    #[arg(long)]
    pub gram: Option<String>,
}

impl Input {
    fn lattice(&self) -> Result<Lattice> {
        match (&self.input, &self.gram) {
            (Some(p), _) => parse_lattice(&read(p)?),
            (None, Some(g)) => parse_lattice(g),
            (None, None) => Err(Error::Parse("no input".into())),
        }
    }
}

fn read(p: &PathBuf) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, signature, discriminant, parity and discriminant form.
    LatticeInfo {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
    },
    /// Representatives of the genus of a positive definite lattice.
    Genus {
        #[command(flatten)]
        input: Input,
        /// keep only lattices without square-2 vectors or square-6 vectors of divisibility 3
        #[arg(long)]
        h_filter: bool,
        /// only exclude square-2 vectors
        #[arg(long)]
        roots_only: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Orthogonal group, signature and isotropic subgroups of a finite quadratic module.
    Fqm {
        /// JSON file with the module
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
    },
    /// Count Fourier-Mukai partners from the lattice N of primitive algebraic classes.
    CountFm {
        #[command(flatten)]
        input: Input,
        /// count only partners whose lattice is isometric to the one in FILE
        #[arg(long, value_name = "FILE")]
        fixed_complement: Option<PathBuf>,
        /// pm_id, full, or a JSON file with explicit generators
        #[arg(long, default_value = "pm_id")]
        hodge: String,
        /// enumerate embeddings directly (needed when 3 divides disc T)
        #[arg(long)]
        general_path: bool,
        /// sum over the whole genus instead of the filtered lattices
        #[arg(long = "virtual")]
        include_virtual: bool,
        #[arg(long)]
        roots_only: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
    },
    /// Recompute the registry of worked examples.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// run with an empty registry
        #[arg(long)]
        dry_run: bool,
    },
    /// Randomized check of disc(T) disc(N) = |G|^2 disc(L).
    SelfCheck {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

/// Output text and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn err(e: &Error) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cmd: &Command) -> Outcome {
    let res = match cmd {
        Command::LatticeInfo { input, format, bound } => input.lattice().and_then(|l| cmd_lattice_info(&l, *format, *bound)),
        Command::Genus { input, h_filter, roots_only, format } => {
            input.lattice().and_then(|l| cmd_genus(&l, h_filter.then_some(rule(*roots_only)), *format))
        }
        Command::Fqm { input, format, bound } => read(input).and_then(|s| parse_fqm(&s)).and_then(|a| cmd_fqm(&a, *format, *bound)),
        Command::CountFm { input, fixed_complement, hodge, general_path, include_virtual, roots_only, format, bound } => {
            (|| {
                let n = input.lattice()?;
                let hodge = match hodge.as_str() {
                    "pm_id" => HodgeIsometrySpec::PmId,
                    "full" => HodgeIsometrySpec::Full,
                    path => parse_hodge(&read(&PathBuf::from(path))?)?,
                };
                let opts = CountOptions { hodge, rule: rule(*roots_only), include_virtual: *include_virtual, bound: *bound };
                let fixed = match fixed_complement {
                    Some(p) => Some(parse_lattice(&read(p)?)?),
                    None => None,
                };
                let report = cmd_count_fm(&n, fixed.as_ref(), *general_path, &opts)?;
                Ok(render_report(&report, *format))
            })()
        }
        Command::VerifyPaper { format, dry_run } => return cmd_verify_paper(*format, *dry_run),
        Command::SelfCheck { seed, cases } => return cmd_self_check(*seed, *cases),
    };
    match res {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::err(&e),
    }
}

fn rule(roots_only: bool) -> HFilterRule {
    if roots_only {
        HFilterRule::RootsOnly
    } else {
        HFilterRule::RootsAndDivisibility
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct LatticeInfo {
    rank: usize,
    signature: (usize, usize),
    det: String,
    discriminant: String,
    even: bool,
    discriminant_form: FqmJson,
    milgram_signature: Option<u8>,
    genus_symbol: String,
}

pub fn cmd_lattice_info(l: &Lattice, format: Format, bound: u64) -> Result<String> {
    let disc = LatticeDiscriminant::new(l)?.module;
    let milgram = if l.is_even() && disc.order_u64().is_some_and(|o| o <= bound) { Some(signature_mod8(&disc)?) } else { None };
    let info = LatticeInfo {
        rank: l.rank(),
        signature: l.signature(),
        det: l.det().to_string(),
        discriminant: l.discriminant().to_string(),
        even: l.is_even(),
        discriminant_form: FqmJson::of(&disc),
        milgram_signature: milgram,
        genus_symbol: genus_symbol(l).to_string(),
    };
    if format == Format::Json {
        return Ok(to_json(&info));
    }
    let mut s = String::new();
    writeln!(s, "rank          {}", info.rank).unwrap();
    writeln!(s, "signature     ({}, {})", info.signature.0, info.signature.1).unwrap();
    writeln!(s, "determinant   {}", info.det).unwrap();
    writeln!(s, "discriminant  {}", info.discriminant).unwrap();
    writeln!(s, "parity        {}", if info.even { "even" } else { "odd" }).unwrap();
    writeln!(s, "disc form     {disc}").unwrap();
    if let Some(m) = milgram {
        writeln!(s, "milgram       {m} (mod 8)").unwrap();
    }
    writeln!(s, "genus         {}", info.genus_symbol).unwrap();
    Ok(s)
}

#[derive(Serialize)]
struct GenusRow {
    gram: Vec<Vec<i64>>,
    obstruction: Option<String>,
}

#[derive(Serialize)]
struct GenusReport {
    input: Vec<Vec<i64>>,
    filtered: bool,
    representatives: Vec<GenusRow>,
    count: usize,
}

pub fn cmd_genus(l: &Lattice, filter: Option<HFilterRule>, format: Format) -> Result<String> {
    let mut rows = Vec::new();
    for m in genus_representatives(l)? {
        let ob = h_obstruction(&m, filter.unwrap_or_default())?;
        if filter.is_some() && ob.is_some() {
            continue;
        }
        rows.push(GenusRow { gram: m.gram_i64()?, obstruction: ob.as_ref().map(describe_obstruction) });
    }
    let report = GenusReport { input: l.gram_i64()?, filtered: filter.is_some(), count: rows.len(), representatives: rows };
    if format == Format::Json {
        return Ok(to_json(&report));
    }
    let mut s = String::new();
    for r in &report.representatives {
        writeln!(s, "{:?}  {}", r.gram, r.obstruction.as_deref().unwrap_or("passes the filter")).unwrap();
    }
    writeln!(s, "{} representative(s)", report.count).unwrap();
    Ok(s)
}

#[derive(Serialize)]
struct FqmReport {
    module: FqmJson,
    order: String,
    milgram_signature: Option<u8>,
    orthogonal_group_order: usize,
    isotropic_subgroups: usize,
}

pub fn cmd_fqm(a: &FiniteQuadraticModule, format: Format, bound: u64) -> Result<String> {
    let report = FqmReport {
        module: FqmJson::of(a),
        order: a.order().to_string(),
        milgram_signature: if a.is_quadratic() && a.is_nondegenerate() { Some(signature_mod8(a)?) } else { None },
        orthogonal_group_order: isometry_group_bounded(a, bound)?.len(),
        isotropic_subgroups: isotropic_subgroups(a, bound)?.len(),
    };
    if format == Format::Json {
        return Ok(to_json(&report));
    }
    let mut s = String::new();
    writeln!(s, "module               {a}").unwrap();
    writeln!(s, "order                {}", report.order).unwrap();
    if let Some(m) = report.milgram_signature {
        writeln!(s, "milgram              {m} (mod 8)").unwrap();
    }
    writeln!(s, "|O(A)|               {}", report.orthogonal_group_order).unwrap();
    writeln!(s, "isotropic subgroups  {}", report.isotropic_subgroups).unwrap();
    Ok(s)
}

/// Dispatches to the requested counting path.
pub fn cmd_count_fm(
    n: &Lattice,
    fixed: Option<&Lattice>,
    general: bool,
    opts: &CountOptions,
) -> Result<FmCountReport> {
    match (fixed, general) {
        (Some(_), true) => Err(Error::InvalidParameters("--fixed-complement and --general-path are exclusive".into())),
        (Some(m), false) => count_fm_fixed_complement(n, m, opts),
        (None, true) => count_fm_general(n, opts),
        (None, false) => count_fm(n, opts),
    }
}

pub fn render_report(r: &FmCountReport, format: Format) -> String {
    if format == Format::Json {
        let mut s = report_to_json(r);
        s.push('\n');
        return s;
    }
    let mut s = String::new();
    writeln!(s, "input       {:?}", r.input).unwrap();
    writeln!(s, "A_T         {}", r.transcendental_form).unwrap();
    writeln!(s, "assumption  {}", r.assumption).unwrap();
    for row in &r.representatives {
        writeln!(s, "  {:?}  {}", row.gram, row.count).unwrap();
    }
    writeln!(s, "total       {}", r.total).unwrap();
    for w in &r.warnings {
        writeln!(s, "warning     {w}").unwrap();
    }
    s
}

pub fn cmd_verify_paper(format: Format, dry_run: bool) -> Outcome {
    let rows = if dry_run {
        vec![]
    } else {
        match verify_registry() {
            Ok(r) => r,
            Err(e) => return Outcome::err(&e),
        }
    };
    let failed = rows.iter().any(|r| r.status == Status::Fail);
    let stdout = if format == Format::Json {
        to_json(&rows)
    } else {
        let mut s = String::new();
        for r in &rows {
            writeln!(s, "{:<4}  {:<55}  expected {:<28} computed {}", r.status, r.label, r.expected, r.computed).unwrap();
        }
        writeln!(s, "{}", if failed { "FAIL" } else { "PASS" }).unwrap();
        s
    };
    Outcome { stdout, stderr: String::new(), code: if failed { EXIT_VERIFICATION } else { 0 } }
}

pub fn cmd_self_check(seed: u64, cases: usize) -> Outcome {
    let mut r = rng(seed);
    let mut s = format!("seed {seed}\n");
    let mut bad = 0;
    for i in 0..cases {
        let rank = 2 + i % 3;
        let l = random_even_lattice(&mut r, rank, 3, i % 2 == 0);
        let sub = random_primitive_sublattice(&mut r, &l, 1 + i % 2.min(rank - 1));
        match gluing_data_of(&l, &sub) {
            Ok((g, n, t)) => {
                if !check_gluing_identity(&t.discriminant(), &n.discriminant(), &l.discriminant(), &g.order().into()) {
                    bad += 1;
                    writeln!(s, "mismatch for {:?}", l.gram_i64().unwrap_or_default()).unwrap();
                }
            }
            Err(e) => return Outcome::err(&e),
        }
    }
    writeln!(s, "{} of {cases} cases satisfy the gluing identity", cases - bad).unwrap();
    Outcome { stdout: s, stderr: String::new(), code: if bad == 0 { 0 } else { EXIT_VERIFICATION } }
}
