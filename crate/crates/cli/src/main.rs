//! `cpn`: enumerate contraction semigroups, decide regularity and Green's
//! relations, run verification suites, export egg-box diagrams.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cpn_core::enumeration::stratify_by_height;
use cpn_core::green::{egg_box, CpCharacterization};
use cpn_core::regularity::is_regular_bruteforce;
use cpn_core::variants::{ocp_green, orcp_green, variant_regular};
use cpn_core::verify::{run_all, run_suite};
use cpn_core::{enumerate, Error, GreenOracle, Relation, SemigroupEnumeration, Suite, Variant};

#[derive(Parser)]
#[command(name = "cpn", version, about = "Partial contractions of a finite chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the elements of a semigroup in canonical order
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the number of elements
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        /// One `height count` line per height instead of the total
        #[arg(long)]
        by_height: bool,
    },
    /// Per-element regularity verdicts
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Classes of one of Green's relations
    Green {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_parser = parse_relation)]
        relation: Relation,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Run verification suites and print a JSON report
    Verify {
        /// Chain size; each suite has its own default
        #[arg(long)]
        n: Option<usize>,
        /// Suite key, or `all`
        #[arg(long, default_value = "all", value_parser = parse_suites)]
        suite: SuiteChoice,
    },
    /// Egg-box diagram of a semigroup
    Eggbox {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_variant)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Char,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy)]
enum SuiteChoice {
    All,
    One(Suite),
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_relation(s: &str) -> Result<Relation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suites(s: &str) -> Result<SuiteChoice, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(SuiteChoice::All);
    }
    s.parse().map(SuiteChoice::One).map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json(value: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit(&text, None)
}

fn regular(n: usize, variant: Variant, mode: Mode) -> Result<bool, Failure> {
    if mode != Mode::Oracle && matches!(variant, Variant::P | Variant::Ct) {
        return Err(Failure::Usage(format!(
            "no characterized regularity test for variant {variant}; use --mode oracle"
        )));
    }
    let s = enumerate(n, variant)?;
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for alpha in s.elements() {
        let c = match mode {
            Mode::Oracle => None,
            _ => Some(variant_regular(alpha, variant)?),
        };
        let o = match mode {
            Mode::Char => None,
            _ => Some(is_regular_bruteforce(alpha, &s)?.regular),
        };
        if let (Some(c), Some(o)) = (c, o) {
            if c != o {
                mismatches.push(json!({"elements": [alpha.to_text()], "characterized": c, "oracle": o}));
            }
        }
        let mut row = json!({"element": alpha.to_text()});
        if let Some(c) = c {
            row["characterized"] = json!(c);
        }
        if let Some(o) = o {
            row["oracle"] = json!(o);
        }
        rows.push(row);
    }
    let passed = mismatches.is_empty();
    print_json(&json!({
        "schema": 1,
        "n": n,
        "variant": variant.name(),
        "mode": mode_name(mode),
        "elements": rows,
        "mismatches": mismatches,
    }))?;
    Ok(passed)
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Char => "char",
        Mode::Oracle => "oracle",
        Mode::Both => "both",
    }
}

enum Characterized<'a> {
    Cp(CpCharacterization<'a>),
    Monotone(&'a SemigroupEnumeration, Variant),
}

impl Characterized<'_> {
    fn related(&self, rel: Relation, a: usize, b: usize) -> Result<bool, Failure> {
        Ok(match self {
            Characterized::Cp(c) => c.related(rel, a, b),
            Characterized::Monotone(s, Variant::Ocp) => ocp_green(s.get(a), s.get(b), rel)?,
            Characterized::Monotone(s, _) => orcp_green(s.get(a), s.get(b), rel)?,
        })
    }
}

/// Groups indices by the first earlier representative they relate to.
fn classes(len: usize, mut related: impl FnMut(usize, usize) -> Result<bool, Failure>) -> Result<Vec<Vec<usize>>, Failure> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    'next: for a in 0..len {
        for class in out.iter_mut() {
            if related(class[0], a)? {
                class.push(a);
                continue 'next;
            }
        }
        out.push(vec![a]);
    }
    Ok(out)
}

fn green(n: usize, variant: Variant, rel: Relation, mode: Mode) -> Result<bool, Failure> {
    if mode != Mode::Oracle && matches!(variant, Variant::P | Variant::Ct) {
        return Err(Failure::Usage(format!(
            "no characterized Green's relations for variant {variant}; use --mode oracle"
        )));
    }
    let s = enumerate(n, variant)?;
    let text = |ids: &[usize]| -> Vec<String> { ids.iter().map(|&i| s.get(i).to_text()).collect() };
    let mut report = json!({
        "schema": 1,
        "n": n,
        "variant": variant.name(),
        "relation": rel.to_string(),
        "mode": mode_name(mode),
    });
    let oracle = (mode != Mode::Char).then(|| GreenOracle::new(&s));
    let ch = (mode != Mode::Oracle).then(|| match variant {
        Variant::Cp => Characterized::Cp(CpCharacterization::new(&s)),
        _ => Characterized::Monotone(&s, variant),
    });
    if let Some(o) = &oracle {
        let cls: Vec<Vec<String>> = o.classes(rel).iter().map(|c| text(c)).collect();
        report["oracle_classes"] = json!(cls);
    }
    if let Some(c) = &ch {
        let cls = classes(s.len(), |a, b| c.related(rel, a, b))?;
        report["characterized_classes"] = json!(cls.iter().map(|c| text(c)).collect::<Vec<_>>());
    }
    let mut passed = true;
    if let (Some(o), Some(c)) = (&oracle, &ch) {
        let mut mismatches = Vec::new();
        for a in 0..s.len() {
            for b in 0..s.len() {
                let (cv, ov) = (c.related(rel, a, b)?, o.related(rel, a, b));
                if cv != ov {
                    mismatches.push(json!({"elements": text(&[a, b]), "characterized": cv, "oracle": ov}));
                }
            }
        }
        passed = mismatches.is_empty();
        report["mismatches"] = json!(mismatches);
    }
    print_json(&report)?;
    Ok(passed)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Enumerate { n, variant, out } => {
            emit(&enumerate(n, variant)?.to_text(), out.as_ref())?;
            Ok(true)
        }
        Command::Count { n, variant, by_height } => {
            let s = enumerate(n, variant)?;
            let text = if by_height {
                stratify_by_height(&s).iter().map(|(h, v)| format!("{h} {}\n", v.len())).collect()
            } else {
                format!("{}\n", s.len())
            };
            emit(&text, None)?;
            Ok(true)
        }
        Command::Regular { n, variant, mode } => regular(n, variant, mode),
        Command::Green { n, variant, relation, mode } => green(n, variant, relation, mode),
        Command::Verify { n, suite } => {
            let reports = match suite {
                SuiteChoice::All => run_all(n)?,
                SuiteChoice::One(s) => vec![run_suite(s, n)?],
            };
            let passed = reports.iter().all(|r| r.passed);
            print_json(&json!({"schema": 1, "passed": passed, "reports": reports}))?;
            Ok(passed)
        }
        Command::Eggbox { n, variant, format, out } => {
            let s = enumerate(n, variant)?;
            let eb = egg_box(&GreenOracle::new(&s));
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&eb.to_json()).expect("serializable") + "\n",
                Format::Dot => eb.to_dot(),
            };
            emit(&text, out.as_ref())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
