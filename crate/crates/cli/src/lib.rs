//! `berger-rank` command-line front-end.
//!
//! Every subcommand produces an [`Output`]: a JSON payload plus a
//! rendered table built from the same values. `--json` prints the payload
//! wrapped in an [`OutputEnvelope`]; otherwise the table is printed.
//!
//! Exit codes: 0 success, 1 invalid input (including usage errors),
//! 2 internal consistency failure.

mod examples;
mod table;

use std::io::Write;

use berger_rank::exact_poly::{factorize, parse_poly, rat_squarefree_part, IntError};
use berger_rank::galois_cert::certify_galois;
use berger_rank::jacobian_invariants::{
    berger_genus, decomposition_table, dim_new_part, dim_superelliptic, prime_power,
};
use berger_rank::morse_scan::{disjointness_filter, is_morse, scan_a_h};
use berger_rank::rank_engine::{rank_table, rank_verdict, RankError, RankVerdict};
use berger_rank::{ExactRat, GaloisError, InvariantError, ParseError, PolyError, UniPoly};
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use table::{pairs, Table};

pub const SCHEMA_VERSION: &str = "1";
const MAX_PRIME_BOUND: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "berger-rank",
    version,
    about = "Certified Mordell-Weil rank verdicts for Jacobians of Berger curves"
)]
pub struct Cli {
    /// Print a JSON envelope instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Largest prime sampled for Frobenius cycle types.
    #[arg(long, global = true, default_value_t = 200)]
    prime_bound: u64,
    /// Worker threads for scans and tables (BERGER_RANK_JOBS if unset).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Discriminant of a polynomial and its squarefree part.
    PolyDisc { poly: String },
    /// Certify the Galois group of a polynomial over Q.
    Galois { poly: String },
    /// Genus of the Berger curve for degrees m, n.
    Genus {
        #[arg(short)]
        m: u64,
        #[arg(short)]
        n: u64,
    },
    /// Dimension of J_{f,q} and of its new part.
    Dims {
        #[arg(short)]
        m: u64,
        #[arg(short)]
        q: u64,
    },
    /// New-part decomposition of J_{f,p^r}.
    Decomp {
        #[arg(short)]
        m: u64,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        r: u32,
    },
    /// Rank verdict at one layer of the tower.
    Rank {
        #[arg(short)]
        f: String,
        #[arg(short)]
        g: String,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        r: u32,
    },
    /// Rank verdicts for r = 0..=max-r.
    RankTable {
        #[arg(short)]
        f: String,
        #[arg(short)]
        g: String,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        max_r: u32,
    },
    /// Morse test for h.
    Morse { poly: String },
    /// Classify h - c for integers c in a range.
    Scan {
        poly: String,
        /// Inclusive range "a..b".
        #[arg(long, allow_hyphen_values = true)]
        c_range: String,
    },
    /// Regression run over the reference example set.
    #[command(hide = true)]
    ReferenceExamples,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::PolyDisc { .. } => "poly-disc",
            Command::Galois { .. } => "galois",
            Command::Genus { .. } => "genus",
            Command::Dims { .. } => "dims",
            Command::Decomp { .. } => "decomp",
            Command::Rank { .. } => "rank",
            Command::RankTable { .. } => "rank-table",
            Command::Morse { .. } => "morse",
            Command::Scan { .. } => "scan",
            Command::ReferenceExamples => "reference-examples",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEnvelope {
    pub schema_version: String,
    pub command: String,
    pub arguments: Vec<String>,
    pub result: Value,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<GaloisError> for CliError {
    fn from(e: GaloisError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<RankError> for CliError {
    fn from(e: RankError) -> Self {
        match e {
            RankError::InvalidInput(m) => CliError::Invalid(m),
            RankError::Internal(m) => CliError::Internal(m),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payload serializes")
}

/// A command's result in both renderings.
pub struct Output {
    pub payload: Value,
    pub table: String,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
    /// Exit code on success; the regression run reports failures with 2.
    pub code: i32,
}

impl Output {
    fn new(payload: Value, table: String) -> Self {
        Output {
            payload,
            table,
            warnings: Vec::new(),
            notes: Vec::new(),
            code: 0,
        }
    }
}

fn poly(text: &str) -> Result<UniPoly, CliError> {
    Ok(parse_poly(text)?)
}

fn parse_range(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Invalid(format!("--c-range must look like a..b, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::Invalid(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

fn poly_disc(text: &str) -> Result<Output, CliError> {
    let f = poly(text)?;
    let disc = f.discriminant()?;
    let mut warnings = Vec::new();
    let (sf, factors) = if disc == ExactRat::from_integer(0.into()) {
        (None, None)
    } else {
        let sf = rat_squarefree_part(&disc);
        let num = disc.numer() * disc.denom();
        let factors = factorize(&num).map(|fz| fz.primes());
        if let Err(IntError::FactorizationIncomplete { cofactor, .. }) = &factors {
            warnings.push(format!("cofactor {cofactor} could not be split"));
        }
        (sf.ok(), factors.ok())
    };
    let fmt_opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "unknown".into());
    let sf_s = sf.as_ref().map(|s| s.to_string());
    let factors_s: Option<Vec<String>> = factors.map(|v| v.iter().map(|p| p.to_string()).collect());
    let payload = json!({
        "polynomial": f.to_string(),
        "discriminant": disc.to_string(),
        "squarefree_part": sf_s,
        "prime_factors": factors_s,
    });
    let table = pairs(&[
        ("polynomial", f.to_string()),
        ("discriminant", disc.to_string()),
        ("squarefree part", fmt_opt(&sf_s)),
        (
            "prime factors",
            factors_s.map_or("unknown".into(), |v| v.join(" ")),
        ),
    ]);
    let mut out = Output::new(payload, table);
    out.warnings = warnings;
    Ok(out)
}

fn galois(text: &str, bound: u64) -> Result<Output, CliError> {
    let f = poly(text)?;
    let cert = certify_galois(&f, bound)?;
    let mut obs = Table::new(&["p", "pattern"]);
    for o in &cert.observations {
        obs.row(vec![o.p.to_string(), o.pattern.to_string()]);
    }
    let mut rules = Table::new(&["rule", "primes", "conclusion"]);
    for r in &cert.rules_fired {
        let primes: Vec<String> = r.primes.iter().map(|p| p.to_string()).collect();
        rules.row(vec![
            r.rule.to_string(),
            primes.join(","),
            r.conclusion.to_string(),
        ]);
    }
    let table = format!(
        "{}\nobservations:\n{}\nrules fired:\n{}",
        pairs(&[
            ("polynomial", f.to_string()),
            ("discriminant", cert.disc.to_string()),
            ("disc is square", cert.disc_is_square.to_string()),
            ("prime bound", bound.to_string()),
            ("verdict", cert.verdict.to_string()),
        ]),
        obs.render(),
        rules.render()
    );
    Ok(Output::new(to_value(&cert), table))
}

fn genus(m: u64, n: u64) -> Result<Output, CliError> {
    let g = berger_genus(m, n)?;
    Ok(Output::new(
        json!({ "m": m, "n": n, "genus": g }),
        pairs(&[
            ("m", m.to_string()),
            ("n", n.to_string()),
            ("genus", g.to_string()),
        ]),
    ))
}

fn dims(m: u64, q: u64) -> Result<Output, CliError> {
    let total = dim_superelliptic(m, q)?;
    let new_part = if prime_power(q).is_some() {
        Some(dim_new_part(m, q)?)
    } else {
        None
    };
    let mut out = Output::new(
        json!({ "m": m, "q": q, "dim_superelliptic": total, "dim_new_part": new_part }),
        pairs(&[
            ("m", m.to_string()),
            ("q", q.to_string()),
            ("dim J_{f,q}", total.to_string()),
            (
                "dim new part",
                new_part.map_or("n/a".into(), |d| d.to_string()),
            ),
        ]),
    );
    if new_part.is_none() {
        out.notes.push(format!(
            "{q} is not a prime power > 1; new part not defined"
        ));
    }
    Ok(out)
}

fn decomp(m: u64, p: u64, r: u32) -> Result<Output, CliError> {
    let t = decomposition_table(m, p, r)?;
    let mut tab = Table::new(&["i", "q", "dim"]);
    for row in &t.rows {
        tab.row(vec![
            row.i.to_string(),
            row.q.to_string(),
            row.dim.to_string(),
        ]);
    }
    let table = format!("{}total {}\n", tab.render(), t.total);
    Ok(Output::new(to_value(&t), table))
}

fn verdict_table(v: &RankVerdict) -> String {
    let mut hyp = Table::new(&["hypothesis", "status", "required"]);
    for h in &v.hypotheses {
        hyp.row(vec![
            h.name.clone(),
            h.status.to_string(),
            if h.required { "yes" } else { "no" }.into(),
        ]);
    }
    let mut s = pairs(&[
        ("f", v.f.to_string()),
        ("g", v.g.to_string()),
        (
            "layer",
            format!("p = {}, r = {}, q = {}", v.layer.p, v.layer.r, v.layer.q),
        ),
        ("genus", v.genus.to_string()),
        ("kind", v.kind.to_string()),
        ("rank", v.rank.map_or("-".into(), |r| r.to_string())),
        ("bound", v.bound.clone().unwrap_or_else(|| "-".into())),
        ("c2", v.c2_value.to_string()),
        ("trace Kd zero", v.trace_kd_zero.to_string()),
        ("geometric trace zero", v.trace_geometric_zero.to_string()),
    ]);
    s.push('\n');
    s.push_str(&hyp.render());
    for n in &v.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s
}

fn rank(f: &str, g: &str, p: u64, r: u32, bound: u64) -> Result<Output, CliError> {
    let v = rank_verdict(&poly(f)?, &poly(g)?, p, r, bound)?;
    let mut out = Output::new(to_value(&v), verdict_table(&v));
    out.notes = v.notes.clone();
    Ok(out)
}

fn rank_rows(f: &str, g: &str, p: u64, max_r: u32, bound: u64) -> Result<Output, CliError> {
    let rows = rank_table(&poly(f)?, &poly(g)?, p, max_r, bound)?;
    let mut tab = Table::new(&["r", "q", "kind", "rank", "c2", "bound"]);
    for v in &rows {
        tab.row(vec![
            v.layer.r.to_string(),
            v.layer.q.to_string(),
            v.kind.to_string(),
            v.rank.map_or("-".into(), |r| r.to_string()),
            v.c2_value.to_string(),
            v.bound.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut out = Output::new(to_value(&rows), tab.render());
    if let Some(first) = rows.first() {
        out.notes = first.notes.clone();
        for n in &out.notes {
            out.table.push_str(&format!("note: {n}\n"));
        }
    }
    Ok(out)
}

fn morse(text: &str) -> Result<Output, CliError> {
    let h = poly(text)?;
    if h.degree().unwrap_or(0) < 2 {
        return Err(CliError::Invalid(
            "Morse test needs degree at least 2".into(),
        ));
    }
    let rep = is_morse(&h);
    let table = pairs(&[
        ("h", h.to_string()),
        ("critical value poly", rep.critical_value_poly.to_string()),
        ("h' squarefree", rep.derivative_squarefree.to_string()),
        (
            "critical values distinct",
            rep.critical_value_disc_squarefree.to_string(),
        ),
        ("Morse", rep.is_morse.to_string()),
    ]);
    Ok(Output::new(to_value(&rep), table))
}

fn scan(text: &str, range: &str, bound: u64) -> Result<Output, CliError> {
    let h = poly(text)?;
    if h.degree().unwrap_or(0) < 2 {
        return Err(CliError::Invalid("scan needs degree at least 2".into()));
    }
    let (a, b) = parse_range(range)?;
    let rows = scan_a_h(&h, a, b, bound);
    let report = disjointness_filter(&rows);
    let mut tab = Table::new(&["c", "in_A_h", "membership", "quad_tag", "reason"]);
    for r in &rows {
        tab.row(vec![
            r.c.to_string(),
            r.in_a_h.to_string(),
            format!("{:?}", r.membership),
            r.quad_tag
                .as_ref()
                .map_or("unknown".into(), |t| t.to_string()),
            r.reason.clone(),
        ]);
    }
    let pair_text: Vec<String> = report
        .pairs
        .iter()
        .map(|(c, d)| format!("({c}, {d})"))
        .collect();
    let table = format!(
        "{}\ndisjoint pairs: {}\n",
        tab.render(),
        if pair_text.is_empty() {
            "none".into()
        } else {
            pair_text.join(" ")
        }
    );
    let mut out = Output::new(
        json!({ "h": h.to_string(), "rows": to_value(&rows), "pairs": report.pairs }),
        table,
    );
    out.warnings = report.warnings;
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let bound = cli.prime_bound;
    if !(2..=MAX_PRIME_BOUND).contains(&bound) {
        return Err(CliError::Invalid(format!(
            "--prime-bound must be between 2 and {MAX_PRIME_BOUND}"
        )));
    }
    match &cli.command {
        Command::PolyDisc { poly } => poly_disc(poly),
        Command::Galois { poly } => galois(poly, bound),
        Command::Genus { m, n } => genus(*m, *n),
        Command::Dims { m, q } => dims(*m, *q),
        Command::Decomp { m, p, r } => decomp(*m, *p, *r),
        Command::Rank { f, g, p, r } => rank(f, g, *p, *r, bound),
        Command::RankTable { f, g, p, max_r } => rank_rows(f, g, *p, *max_r, bound),
        Command::Morse { poly } => morse(poly),
        Command::Scan { poly, c_range } => scan(poly, c_range, bound),
        Command::ReferenceExamples => Ok(examples::run_all(bound)),
    }
}

fn jobs(cli: &Cli) -> Result<Option<usize>, CliError> {
    let from_env = std::env::var("BERGER_RANK_JOBS").ok();
    let n = match (cli.jobs, from_env) {
        (Some(n), _) => n,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("BERGER_RANK_JOBS={s:?} is not a count")))?,
        (None, None) => return Ok(None),
    };
    if n == 0 {
        return Err(CliError::Invalid("--jobs must be at least 1".into()));
    }
    Ok(Some(n))
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match jobs(cli)? {
        None => dispatch(cli),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?
            .install(|| dispatch(cli)),
    }
}

/// Parses `argv` (including the program name), runs the command and
/// writes the result to `out` and diagnostics to `err`. Returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let result = execute(&cli);
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return e.exit_code();
        }
    };
    for w in &output.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    if cli.json {
        let envelope = OutputEnvelope {
            schema_version: SCHEMA_VERSION.into(),
            command: cli.command.name().into(),
            arguments: argv
                .iter()
                .skip(1)
                .map(|a| a.to_string_lossy().into_owned())
                .collect(),
            result: output.payload,
            warnings: output.warnings,
            notes: output.notes,
        };
        let text = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
        let _ = writeln!(out, "{text}");
    } else {
        let _ = write!(out, "{}", output.table);
    }
    output.code
}
