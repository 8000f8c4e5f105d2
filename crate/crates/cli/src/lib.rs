//! Command-line front end for `syzkit`.

pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use syzkit::rational::{fmt_q, parse_q};
use syzkit::symgroup::{multiplicity, projection_matrix, standard_tableaux, test_conjecture, Partition};
use syzkit::syzygy::{closed_form_table, reconstruct, vartheta_table, verify_table, LatticePoint, SyzygyTable};
use syzkit::wigner::{ninej_operator, ninej_triple_sum, sixj, threej, HalfInt, NineJArray, Projection};
use syzkit::{transvect, BinaryForm, Convention, VarPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "syzkit", version, about = "Exact transvectants, syzygies, Wigner symbols and Specht modules")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Also write the JSON result to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ConventionArg {
    Monomial,
    Binomial,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Monomial => Convention::Monomial,
            ConventionArg::Binomial => Convention::Binomial,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Operator,
    Triplesum,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The r-th transvectant of two binary forms
    Transvect {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// JSON form or comma-separated coefficients
        #[arg(long = "a", visible_alias = "A", allow_hyphen_values = true)]
        form_a: String,
        #[arg(long = "b", visible_alias = "B", allow_hyphen_values = true)]
        form_b: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Monomial)]
        convention: ConventionArg,
    },
    /// Print a quadratic syzygy table, or verify it with `syzygy verify`
    #[command(args_conflicts_with_subcommands = true)]
    Syzygy {
        #[command(flatten)]
        table: TableArgs,
        #[command(subcommand)]
        action: Option<SyzygyAction>,
    },
    /// Recover every transvectant from the first two
    Reconstruct {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        u0: String,
        #[arg(long)]
        u1: String,
    },
    /// Wigner 9-j symbol of "j1 j2 j12; j3 j4 j34; j13 j24 J"
    Ninej {
        #[arg(long)]
        array: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Wigner 3-j symbol
    Threej {
        #[arg(long)]
        j1: HalfInt,
        #[arg(long)]
        j2: HalfInt,
        #[arg(long)]
        j: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        m1: Projection,
        #[arg(long, allow_hyphen_values = true)]
        m2: Projection,
        #[arg(long, allow_hyphen_values = true)]
        m: Projection,
    },
    /// Wigner 6-j symbol of "j1 j2 j12; j3 J j23"
    Sixj {
        #[arg(long)]
        array: String,
    },
    /// Specht modules of the symmetric group
    Sym {
        #[command(subcommand)]
        action: SymAction,
    },
    /// Run an acceptance suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
}

#[derive(Args, Debug, Default)]
struct TableArgs {
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// Lattice point of the basis syzygy
    #[arg(long, requires = "b", conflicts_with = "closed")]
    a: Option<u32>,
    #[arg(long, requires = "a", conflicts_with = "closed")]
    b: Option<u32>,
    /// The closed-form syzygy instead of a basis one
    #[arg(long)]
    closed: bool,
}

#[derive(Subcommand, Debug)]
enum SyzygyAction {
    /// Check a table on random pairs of forms
    Verify {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, default_value_t = 5)]
        trials: u64,
    },
}

#[derive(Subcommand, Debug)]
enum SymAction {
    /// Standard tableaux of a shape, in basis order
    Tableaux {
        #[arg(long)]
        shape: Partition,
    },
    /// Multiplicity of V(n) in V(l) (x) V(m)
    Mult {
        #[arg(long)]
        l: Partition,
        #[arg(long)]
        m: Partition,
        #[arg(long)]
        n: Partition,
    },
    /// Integral projection matrix V(l) (x) V(m) -> V(n)
    Projmat {
        #[arg(long)]
        l: Partition,
        #[arg(long)]
        m: Partition,
        #[arg(long)]
        n: Partition,
    },
    /// The syzygy checks in degree d (5, 6 or 7)
    Verify {
        #[arg(long)]
        d: u32,
    },
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<syzkit::Error> for Failure {
    fn from(e: syzkit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

struct Output {
    json: Value,
    pretty: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, pretty: String) -> Self {
        Output { json, pretty, ok: true }
    }
}

/// Parses `args` (program name first) and runs one command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli).and_then(|o| emit(&cli, &o, out).map(|_| o.ok)) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn emit(cli: &Cli, o: &Output, out: &mut dyn Write) -> Result<(), Failure> {
    let json_text = serde_json::to_string_pretty(&o.json).expect("values serialize");
    match cli.format {
        Format::Json => writeln!(out, "{json_text}")?,
        Format::Pretty => write!(out, "{}", o.pretty)?,
    }
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{json_text}\n"))?;
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Transvect { m, n, r, form_a, form_b, convention } => {
            let conv = Convention::from(*convention);
            let a = parse_form(form_a, *m, conv)?;
            let b = parse_form(form_b, *n, conv)?;
            let c = transvect(&a, &b, *r)?;
            let json = c.to_json(conv);
            Ok(Output::ok(json, format!("{}\n", c.form())))
        }
        Command::Syzygy { table, action: None } => {
            let t = build_table(table)?;
            Ok(Output::ok(t.to_json(), format!("{t}\n")))
        }
        Command::Syzygy { action: Some(SyzygyAction::Verify { table, trials }), .. } => {
            let t = build_table(table)?;
            let v = verify_table(&t, *trials, cli.seed)?;
            let pretty = if v.passed {
                format!("verified: residual zero in all {trials} trials\n")
            } else {
                format!("FAILED: nonzero residual in {} of {trials} trials\n", v.failures.len())
            };
            Ok(Output { json: json!({ "table": t.to_json(), "verdict": v.to_json() }), pretty, ok: v.passed })
        }
        Command::Reconstruct { m, n, u0, u1 } => {
            let u0 = parse_form(u0, m + n, Convention::Monomial)?;
            let u1 = parse_form(u1, (m + n).saturating_sub(2), Convention::Monomial)?;
            let us = reconstruct(&u0, &u1, *m, *n)?;
            let json = json!(us
                .iter()
                .enumerate()
                .map(|(k, u)| json!({ "r": k + 2, "form": u.to_json(Convention::Monomial) }))
                .collect::<Vec<_>>());
            let pretty = us.iter().enumerate().map(|(k, u)| format!("u{} = {}\n", k + 2, u.form())).collect();
            Ok(Output::ok(json, pretty))
        }
        Command::Ninej { array, method } => {
            let arr: NineJArray = array.parse()?;
            let op = matches!(method, Method::Operator | Method::Both).then(|| ninej_operator(&arr)).transpose()?;
            let ts = matches!(method, Method::Triplesum | Method::Both).then(|| ninej_triple_sum(&arr)).transpose()?;
            let agree = match (&op, &ts) {
                (Some(x), Some(y)) => Some(x == y),
                _ => None,
            };
            let value = op.as_ref().or(ts.as_ref()).expect("some method ran");
            let mut json = json!({ "array": arr, "value": value });
            if let Some(x) = &op {
                json["operator"] = json!(x);
            }
            if let Some(y) = &ts {
                json["triple_sum"] = json!(y);
            }
            let mut pretty = format!("{value}\n");
            if agree == Some(false) {
                pretty = format!("operator:   {}\ntriple sum: {}\nMISMATCH\n", op.unwrap(), ts.unwrap());
            }
            if let Some(a) = agree {
                json["agree"] = json!(a);
            }
            Ok(Output { json, pretty, ok: agree != Some(false) })
        }
        Command::Threej { j1, j2, j, m1, m2, m } => {
            let v = threej(*j1, *j2, *j, *m1, *m2, *m)?;
            Ok(Output::ok(json!({ "value": v, "approx": v.to_f64() }), format!("{v}\n")))
        }
        Command::Sixj { array } => {
            let js = parse_spins::<6>(array)?;
            let v = sixj(js)?;
            Ok(Output::ok(json!({ "value": v, "approx": v.to_f64() }), format!("{v}\n")))
        }
        Command::Sym { action } => sym(action),
        Command::Verify { suite, trials } => {
            let report = suite::run_suite(suite, cli.seed, *trials)?;
            Ok(Output { json: report.to_json(), pretty: report.to_table(), ok: report.passed() })
        }
    }
}

fn sym(action: &SymAction) -> Result<Output, Failure> {
    match action {
        SymAction::Tableaux { shape } => {
            let ts = standard_tableaux(shape);
            let json = json!(ts.iter().map(|t| t.to_string()).collect::<Vec<_>>());
            let pretty = ts.iter().enumerate().map(|(k, t)| format!("{k}: {t}\n")).collect();
            Ok(Output::ok(json, pretty))
        }
        SymAction::Mult { l, m, n } => {
            let k = multiplicity(l, m, n)?;
            Ok(Output::ok(json!(k), format!("{k}\n")))
        }
        SymAction::Projmat { l, m, n } => {
            let p = projection_matrix(l, m, n)?;
            let json = p.to_json();
            let pretty = (0..p.rows())
                .map(|i| p.row(i).iter().map(fmt_q).collect::<Vec<_>>().join(" ") + "\n")
                .collect();
            Ok(Output::ok(json, pretty))
        }
        SymAction::Verify { d } => {
            let r = test_conjecture(*d)?;
            let json = serde_json::to_value(&r).expect("reports serialize");
            let pretty = format!(
                "d = {d}: multiplicities {} and {}, relation space dimension {}, c4 nonzero {}: {}\n",
                r.multiplicity_eta2,
                r.multiplicity_syzygy,
                r.relation_dimension,
                r.c4_nonzero,
                if r.passed { "passed" } else { "FAILED" }
            );
            Ok(Output { json, pretty, ok: r.passed })
        }
    }
}

fn build_table(t: &TableArgs) -> Result<SyzygyTable, Failure> {
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| Failure::Usage(format!("--{name} is required")));
    let (m, n, r) = (need(t.m, "m")?, need(t.n, "n")?, need(t.r, "r")?);
    if t.closed {
        return Ok(closed_form_table(m, n, r)?);
    }
    let p = LatticePoint::new(t.a.unwrap_or(0), t.b.unwrap_or(0));
    Ok(vartheta_table(m, n, r, p)?)
}

/// A form from JSON, or from comma-separated coefficients of the given order.
fn parse_form(s: &str, order: u32, conv: Convention) -> Result<BinaryForm, Failure> {
    let f = if s.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| Failure::Usage(e.to_string()))?;
        BinaryForm::from_json(&v)?
    } else {
        let coeffs = s.split(',').map(|c| parse_q(c.trim())).collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != order as usize + 1 {
            return Err(Failure::Usage(format!(
                "order {order} needs {} coefficients, got {}",
                order + 1,
                coeffs.len()
            )));
        }
        BinaryForm::from_coeffs(VarPair::X, &coeffs, conv)
    };
    if f.order() != order {
        return Err(Failure::Usage(format!("expected a form of order {order}, got {}", f.order())));
    }
    Ok(f.on_pair(VarPair::X))
}

fn parse_spins<const K: usize>(s: &str) -> Result<[HalfInt; K], Failure> {
    let spins = s
        .split(|c: char| c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<HalfInt>, _>>()?;
    spins
        .try_into()
        .map_err(|v: Vec<HalfInt>| Failure::Usage(format!("expected {K} spins, got {}", v.len())))
}

#[cfg(test)]
mod tests;
