//! The `ncat` command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage,
//! I/O or parse errors. JSON reports carry `"schema": 1`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::axioms::{check_axioms, check_globularity_on, AxiomOptions, AxiomReport};
use crate::category::Category;
use crate::functors::{check_functor_laws, functor_f, functor_g, FunctorTarget, IndEnv};
use crate::morse::cell::{
    x_cells, x_closure, x_composable_pairs, XCategory, XCell, DEFAULT_CLOSURE_CAP,
};
use crate::morse::flow::FlowData;
use crate::morse::validate::validate_flow_data;
use crate::torus::{class_of, torus_expected, torus_flow_data};
use crate::v::{VCategory, VCell};
use crate::w::{self, WCategory};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "ncat",
    version,
    about = "Build and check almost strict n-categories from Morse flow data"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CategoryArg {
    W,
    V,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    G,
    F,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check flow data for combinatorial consistency.
    Validate { file: PathBuf },
    /// List the generated cells of X level by level.
    Build {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: usize,
        /// Also list identities and composites.
        #[arg(long)]
        closure: bool,
    },
    /// Check globularity and the n-category axioms on a sample of cells.
    Axioms {
        /// Flow data, required for `--category x`.
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        category: CategoryArg,
        #[arg(long, default_value_t = 2)]
        level: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cells kept per level when the full set is larger.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Largest index used when enumerating W and V.
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Apply G or F to every cell and check the functor laws.
    Functor {
        file: PathBuf,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Run the torus example against its expected results.
    Torus {
        /// Print the fixture as flow-data JSON instead.
        #[arg(long)]
        emit: bool,
    },
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => {
            let text = match cli.format {
                _ if output.raw => output.text,
                Format::Text => output.text,
                Format::Json => {
                    let mut v = output.json;
                    v["schema"] = json!(SCHEMA_VERSION);
                    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if output.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
    /// Printed verbatim in every format.
    raw: bool,
}

fn load(path: &PathBuf) -> Result<FlowData, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    FlowData::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// `G(w)` for objects, `G(a, M(..))` otherwise.
fn applied(name: &str, cell: &XCell) -> String {
    if cell.level() == 0 {
        format!("{name}({cell})")
    } else {
        format!("{name}{cell}")
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn execute(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Validate { file } => {
            let fd = load(file)?;
            let report = validate_flow_data(&fd);
            Ok(Output {
                text: format!("{report}\n"),
                json: json!({
                    "command": "validate",
                    "name": fd.name(),
                    "passed": report.passed(),
                    "checks": report.checks,
                }),
                passed: report.passed(),
                raw: false,
            })
        }
        Command::Build {
            file,
            level,
            closure,
        } => {
            let fd = load(file)?;
            Ok(build(&fd, *level, *closure))
        }
        Command::Axioms {
            file,
            category,
            level,
            seed,
            samples,
            bound,
        } => axioms(file.as_ref(), *category, *level, *seed, *samples, *bound),
        Command::Functor {
            file,
            target,
            level,
        } => {
            let fd = load(file)?;
            let target = match target {
                TargetArg::G => FunctorTarget::G,
                TargetArg::F => FunctorTarget::F,
            };
            Ok(functor(&fd, target, *level))
        }
        Command::Torus { emit: true } => Ok(Output {
            text: torus_flow_data().to_json(),
            json: Value::Null,
            passed: true,
            raw: true,
        }),
        Command::Torus { emit: false } => Ok(torus()),
    }
}

fn build(fd: &FlowData, level: usize, closure: bool) -> Output {
    let top = level.min(fd.max_level());
    let (levels, complete) = if closure {
        let c = x_closure(fd, top, DEFAULT_CLOSURE_CAP);
        (c.levels, c.complete)
    } else {
        ((0..=top).map(|l| x_cells(fd, l)).collect(), true)
    };
    let mut text = String::new();
    if level > fd.max_level() {
        text.push_str(&format!(
            "warning: levels above {} are empty for {}\n",
            fd.max_level(),
            fd.name()
        ));
    }
    let mut json_levels = Vec::new();
    for (l, cells) in levels.iter().enumerate() {
        text.push_str(&format!("X({l}): {} cells\n", cells.len()));
        for c in cells {
            text.push_str(&format!("  {c}\n"));
        }
        json_levels.push(json!({ "level": l, "count": cells.len(), "cells": cells }));
    }
    if !complete {
        text.push_str(&format!(
            "warning: closure stopped after {DEFAULT_CLOSURE_CAP} cells\n"
        ));
    }
    Output {
        text,
        json: json!({
            "command": "build",
            "name": fd.name(),
            "closure": closure,
            "complete": complete,
            "levels": json_levels,
        }),
        passed: true,
        raw: false,
    }
}

/// Keeps at most `n` cells per level, chosen by a seeded draw, in their
/// original order.
fn subsample<T: Clone>(levels: Vec<Vec<T>>, n: usize, seed: u64) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for cells in levels {
        if cells.len() <= n {
            out.extend(cells);
        } else {
            let mut picked = index::sample(&mut rng, cells.len(), n).into_vec();
            picked.sort_unstable();
            out.extend(picked.into_iter().map(|i| cells[i].clone()));
        }
    }
    out
}

fn run_axioms<C: Category>(cat: &C, sample: &[C::Cell], seed: u64) -> AxiomReport {
    let mut report = check_globularity_on(cat, sample);
    report.merge(check_axioms(cat, sample, AxiomOptions::with_seed(seed)));
    report
}

fn axioms(
    file: Option<&PathBuf>,
    category: CategoryArg,
    level: usize,
    seed: u64,
    samples: usize,
    bound: u32,
) -> Result<Output, String> {
    let (name, count, report) = match category {
        CategoryArg::W | CategoryArg::V => {
            if file.is_some() {
                return Err("--category w and v take no input file".into());
            }
            let enumerated = (0..=level).map(|l| w::enumerate(l, bound)).collect();
            let sample = subsample(enumerated, samples, seed);
            if category == CategoryArg::W {
                (
                    "W",
                    sample.len(),
                    run_axioms(&WCategory::new(level, bound), &sample, seed),
                )
            } else {
                let sample: Vec<VCell> = sample.into_iter().map(VCell::from_w).collect();
                (
                    "V",
                    sample.len(),
                    run_axioms(&VCategory::new(level, bound), &sample, seed),
                )
            }
        }
        CategoryArg::X => {
            let file = file.ok_or("--category x needs a flow-data file")?;
            let fd = load(file)?;
            let closure = x_closure(&fd, level, DEFAULT_CLOSURE_CAP);
            let sample = subsample(closure.levels, samples, seed);
            let cat = XCategory::new(fd);
            ("X", sample.len(), run_axioms(&cat, &sample, seed))
        }
    };
    let text = format!(
        "category {name}, levels 0..={level}, {count} sample cells, seed {seed}\n{report}\n"
    );
    let mut json = report.to_json();
    json["command"] = json!("axioms");
    json["category"] = json!(name);
    json["level"] = json!(level);
    json["seed"] = json!(seed);
    json["samples"] = json!(count);
    Ok(Output {
        text,
        json,
        passed: report.passed(),
        raw: false,
    })
}

fn functor(fd: &FlowData, target: FunctorTarget, level: usize) -> Output {
    let env = IndEnv::from_flow_data(fd);
    let top = level.min(fd.max_level());
    let mut text = String::new();
    let mut images = Vec::new();
    for l in 0..=top {
        for cell in x_cells(fd, l) {
            let image = match target {
                FunctorTarget::G => functor_g(&cell, &env).map(|w| w.to_string()),
                FunctorTarget::F => functor_f(&cell, &env).map(|v| v.to_string()),
            };
            let shown = image.unwrap_or_else(|e| format!("error: {e}"));
            text.push_str(&format!(
                "{} = {shown}\n",
                applied(&target.to_string(), &cell)
            ));
            images.push(json!({ "cell": cell, "image": shown }));
        }
    }
    let report = check_functor_laws(fd, &env, top, target);
    text.push_str(&format!("{report}\n"));
    let mut json = report.to_json();
    json["command"] = json!("functor");
    json["target"] = json!(target);
    json["images"] = json!(images);
    Output {
        text,
        json,
        passed: report.passed(),
        raw: false,
    }
}

fn torus() -> Output {
    let fd = torus_flow_data();
    let oracle = torus_expected();
    let env = IndEnv::from_flow_data(&fd);
    let mut text = String::new();
    let mut passed = validate_flow_data(&fd).passed();
    text.push_str(&format!(
        "flow data {}: validation {}\n",
        fd.name(),
        verdict(passed)
    ));

    let sizes: Vec<usize> = (0..=2).map(|l| x_cells(&fd, l).len()).collect();
    let sizes_ok = sizes == oracle.sizes;
    passed &= sizes_ok;
    text.push_str(&format!(
        "|X(0..2)| = {}  {}\n",
        sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        verdict(sizes_ok)
    ));

    let mut table = Vec::new();
    for l in 0..=2 {
        for cell in x_cells(&fd, l) {
            let g = functor_g(&cell, &env);
            let want = class_of(&cell).and_then(|c| oracle.g_of(c));
            let ok = matches!((&g, want), (Ok(g), Some(w)) if g == w);
            passed &= ok;
            let shown = match &g {
                Ok(g) => g.to_string(),
                Err(e) => format!("error: {e}"),
            };
            text.push_str(&format!(
                "{} = {shown}  {}\n",
                applied("G", &cell),
                verdict(ok)
            ));
            table.push(json!({ "cell": cell, "g": shown, "passed": ok }));
        }
    }

    let p10 = x_composable_pairs(&fd, 1, 0).len();
    let p21 = x_composable_pairs(&fd, 2, 1).len();
    let all20 = x_composable_pairs(&fd, 2, 0);
    let listed = oracle
        .listed_pairs_2_0
        .iter()
        .filter(|p| all20.contains(p))
        .count();
    let pairs_ok = p10 == oracle.pairs_1_0
        && p21 == oracle.pairs_2_1
        && listed == oracle.listed_pairs_2_0.len();
    passed &= pairs_ok;
    text.push_str(&format!(
        "|X(1) x_0 X(1)| = {p10}, |X(2) x_1 X(2)| = {p21}, |X(2) x_0 X(2)| = {} (contains {listed} of {} listed)  {}\n",
        all20.len(),
        oracle.listed_pairs_2_0.len(),
        verdict(pairs_ok)
    ));
    text.push_str(&format!("torus {}\n", verdict(passed)));

    Output {
        text,
        json: json!({
            "command": "torus",
            "passed": passed,
            "sizes": sizes,
            "g": table,
            "pairs": {
                "x1_p0": p10,
                "x2_p1": p21,
                "x2_p0": all20.len(),
                "x2_p0_listed_found": listed,
            },
        }),
        passed,
        raw: false,
    }
}
