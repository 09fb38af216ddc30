use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pbw_core::io::{
    algebra_json, constraints_json, deformation_json, oracle_json, parse_input, reduction_json, shortcuts_json,
    verdict_json,
};
use pbw_core::survey::{survey, SurveyRow, MAX_SURVEY_N};
use pbw_core::{
    check_pruned, nontrivial_deformation, oracle_verdict, reduce_by_i, shortcut_report, Algebra, ConstraintSystem,
    InputError, ParameterTable,
};

#[derive(Parser)]
#[command(name = "pbw", version, about = "PBW deformations of quadratic monomial algebras")]
struct Cli {
    /// Algebra JSON file (`-` for stdin).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Parameter JSON file.
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Relation graph, overlaps and components.
    Graph,
    /// The symbolic constraint system.
    Constraints {
        /// Eliminate condition I and print the residual system.
        #[arg(long)]
        reduce: bool,
        /// Mark constraints that a graph shortcut makes implied.
        #[arg(long)]
        annotate: bool,
    },
    /// Decide whether numeric parameters give a PBW deformation.
    Check {
        /// Skip constraints that shortcuts prove implied.
        #[arg(long)]
        prune: bool,
    },
    /// Eliminate condition I: rules, classes, free parameters, residual.
    Reduce,
    /// Which overlaps match a shortcut pattern.
    Shortcuts,
    /// Build an explicit nontrivial deformation.
    Deform,
    /// Decide PBW-ness by resolving overlaps in the free algebra.
    Oracle,
    /// Statistics for every relation set on n generators.
    Survey {
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Json(msg) => Failure::Validation(format!("malformed JSON: {msg}")),
            InputError::Invalid(issues) => Failure::Validation(
                issues
                    .iter()
                    .map(|i| format!("{}: {}", i.path, i.message))
                    .collect::<Vec<_>>()
                    .join("\n"),
            ),
        }
    }
}

struct Outcome {
    body: String,
    /// `Some(false)` for a negative PBW verdict.
    pbw: Option<bool>,
}

impl Outcome {
    fn plain(body: String) -> Self {
        Outcome { body, pbw: None }
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Validation(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load(cli: &Cli, need_params: bool) -> Result<(Algebra, Option<ParameterTable>), Failure> {
    let input = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::Validation("--input is required".into()))?;
    let alg_text = read_source(input)?;
    let params_text = match (&cli.params, need_params) {
        (Some(p), true) => Some(read_source(p)?),
        (None, true) => return Err(Failure::Validation("--params is required".into())),
        _ => None,
    };
    Ok(parse_input(&alg_text, params_text.as_deref())?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, format: Format, allowed: &str) -> Failure {
    let name = format.to_possible_value().expect("no skipped variants").get_name().to_string();
    Failure::Validation(format!("`{cmd}` does not support --format {name} (use {allowed})"))
}

fn symbolic_system(alg: &Algebra) -> ConstraintSystem {
    ConstraintSystem::generate(alg, &ParameterTable::symbolic(alg))
}

fn graph(cli: &Cli) -> Result<Outcome, Failure> {
    let (alg, _) = load(cli, false)?;
    let body = match cli.format {
        Format::Dot => alg.to_dot(),
        Format::Text => {
            let mut s = format!("{alg}\n");
            for t in alg.overlap_basis().iter() {
                writeln!(s, "overlap {t}").unwrap();
            }
            s
        }
        Format::Json => {
            let mut v = algebra_json(&alg);
            let obj = v.as_object_mut().unwrap();
            let overlaps: Vec<[usize; 3]> = alg.overlap_basis().iter().map(|t| t.as_array()).collect();
            let components: Vec<Vec<[usize; 2]>> = alg
                .components()
                .iter()
                .map(|c| c.iter().map(|a| [a.from, a.to]).collect())
                .collect();
            let degrees: Vec<Value> = alg
                .generators()
                .map(|u| json!({ "vertex": u, "in": alg.in_degree(u), "out": alg.out_degree(u) }))
                .collect();
            obj.insert("overlaps".into(), json!(overlaps));
            obj.insert("components".into(), json!(components));
            obj.insert("degrees".into(), json!(degrees));
            pretty(&v)
        }
        f => return Err(unsupported("graph", f, "json, dot or text")),
    };
    Ok(Outcome::plain(body))
}

fn constraints(cli: &Cli, reduce: bool, annotate: bool) -> Result<Outcome, Failure> {
    let (alg, _) = load(cli, false)?;
    let mut sys = symbolic_system(&alg);
    if reduce {
        sys = reduce_by_i(&sys).residual;
    }
    let report = annotate.then(|| shortcut_report(&alg));
    let body = match cli.format {
        Format::Json => pretty(&constraints_json(&sys, report.as_ref())),
        Format::Text => sys
            .iter()
            .map(|c| match report.as_ref().and_then(|r| r.skippable(c)) {
                Some(req) => format!("{c}  (implied given {})\n", req.as_str()),
                None => format!("{c}\n"),
            })
            .collect(),
        f => return Err(unsupported("constraints", f, "json or text")),
    };
    Ok(Outcome::plain(body))
}

fn check(cli: &Cli, prune: bool) -> Result<Outcome, Failure> {
    let (alg, table) = load(cli, true)?;
    let table = table.expect("parameters were required");
    let sys = symbolic_system(&alg);
    let (verdict, skipped) = if prune {
        let p = check_pruned(&sys, &shortcut_report(&alg), &table);
        (p.verdict, Some(p.skipped))
    } else {
        (sys.check(&table), None)
    };
    let body = match cli.format {
        Format::Json => {
            let mut v = verdict_json(&verdict);
            if let Some(n) = skipped {
                v.as_object_mut().unwrap().insert("skipped".into(), json!(n));
            }
            pretty(&v)
        }
        Format::Text => {
            let mut s = format!("pbw: {}\n", if verdict.pbw { "yes" } else { "no" });
            for f in &verdict.failures {
                writeln!(s, "{}  (value {})", f.constraint, f.value).unwrap();
            }
            if let Some(n) = skipped {
                writeln!(s, "skipped: {n}").unwrap();
            }
            s
        }
        f => return Err(unsupported("check", f, "json or text")),
    };
    Ok(Outcome {
        body,
        pbw: Some(verdict.pbw),
    })
}

fn reduce(cli: &Cli) -> Result<Outcome, Failure> {
    let (alg, _) = load(cli, false)?;
    let red = reduce_by_i(&symbolic_system(&alg));
    let body = match cli.format {
        Format::Json => pretty(&reduction_json(&red)),
        Format::Text => {
            let mut s = String::new();
            for (p, rhs) in &red.rules {
                writeln!(s, "{p} := {rhs}").unwrap();
            }
            for (p, e) in &red.b_pivots {
                writeln!(s, "{p} = {e}").unwrap();
            }
            let free: Vec<String> = red.free_a.iter().map(|p| p.to_string()).collect();
            writeln!(s, "free: {}", free.join(", ")).unwrap();
            for c in red.residual.iter() {
                writeln!(s, "{c}").unwrap();
            }
            s
        }
        f => return Err(unsupported("reduce", f, "json or text")),
    };
    Ok(Outcome::plain(body))
}

fn shortcuts(cli: &Cli) -> Result<Outcome, Failure> {
    let (alg, _) = load(cli, false)?;
    let report = shortcut_report(&alg);
    let body = match cli.format {
        Format::Json => pretty(&shortcuts_json(&report)),
        Format::Text => {
            let mut s = String::new();
            for e in &report.entries {
                let clauses: Vec<String> = e.clauses.iter().map(u8::to_string).collect();
                let skip: Vec<String> = e.skip_ii.iter().map(usize::to_string).collect();
                writeln!(
                    s,
                    "{} {}: clauses [{}], II skipped for r in {{{}}}, III {}",
                    e.triple,
                    e.shape,
                    clauses.join(","),
                    skip.join(","),
                    e.skip_iii.map(|r| format!("implied given {}", r.as_str())).unwrap_or_else(|| "checked".into())
                )
                .unwrap();
            }
            s
        }
        f => return Err(unsupported("shortcuts", f, "json or text")),
    };
    Ok(Outcome::plain(body))
}

fn deform(cli: &Cli) -> Result<Outcome, Failure> {
    let (alg, _) = load(cli, false)?;
    let d = nontrivial_deformation(&alg).map_err(|e| Failure::Validation(e.to_string()))?;
    let v = deformation_json(&alg, &d);
    let body = match cli.format {
        Format::Json => pretty(&v),
        Format::Text => {
            let mut s = format!("case {}\n", d.witness.case());
            for r in v["relations"].as_array().into_iter().flatten() {
                writeln!(s, "{}", r.as_str().unwrap_or_default()).unwrap();
            }
            s
        }
        f => return Err(unsupported("deform", f, "json or text")),
    };
    Ok(Outcome::plain(body))
}

fn oracle(cli: &Cli) -> Result<Outcome, Failure> {
    let (alg, table) = load(cli, true)?;
    let verdict = oracle_verdict(&alg, &table.expect("parameters were required"));
    let body = match cli.format {
        Format::Json => pretty(&oracle_json(&verdict)),
        Format::Text => {
            let mut s = format!("pbw: {}\n", if verdict.pbw { "yes" } else { "no" });
            for f in &verdict.failures {
                writeln!(s, "{}: {} != {}", f.triple, f.left, f.right).unwrap();
            }
            s
        }
        f => return Err(unsupported("oracle", f, "json or text")),
    };
    Ok(Outcome {
        body,
        pbw: Some(verdict.pbw),
    })
}

fn survey_cmd(cli: &Cli, n: usize) -> Result<Outcome, Failure> {
    let rows: Vec<SurveyRow> =
        survey(n).ok_or_else(|| Failure::Validation(format!("--n must be between 1 and {MAX_SURVEY_N}, got {n}")))?;
    let body = match cli.format {
        Format::Csv => {
            let mut s = format!("{}\n", SurveyRow::CSV_HEADER);
            for r in &rows {
                writeln!(s, "{}", r.csv()).unwrap();
            }
            s
        }
        Format::Json => pretty(&json!({ "schema_version": 1, "n": n, "rows": rows })),
        f => return Err(unsupported("survey", f, "json or csv")),
    };
    Ok(Outcome::plain(body))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Graph => graph(cli),
        Command::Constraints { reduce, annotate } => constraints(cli, *reduce, *annotate),
        Command::Check { prune } => check(cli, *prune),
        Command::Reduce => reduce(cli),
        Command::Shortcuts => shortcuts(cli),
        Command::Deform => deform(cli),
        Command::Oracle => oracle(cli),
        Command::Survey { n } => survey_cmd(cli, *n),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Internal(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Internal(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&cli, &out.body).map(|()| out.pbw));
    match result {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
