//! `abelcap` command-line front end.
//!
//! Exit codes are shared by every command: 0 affirmative or verified,
//! 1 negative or falsified, 2 usage, parse, or bound error.
//!
//! Family files list one subgroup per line as generators separated by `;`,
//! each generator a `,`-separated coordinate vector. `#` starts a comment;
//! blank lines are skipped. The JSON form is an array of subgroups, each an
//! array of generator vectors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{
    abelian_types, enumerate_subgroups, format_factors, AbelianGroup, Subgroup,
    DEFAULT_ENUMERATION_BOUND,
};
use crate::capability::{self, incapability_reason, is_capable, verify_family, FamilyReport};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "abelcap",
    version,
    about = "Capability of finite abelian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    C,
    D,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide capability of C_{m_1} x ... x C_{m_r}.
    Capable {
        #[arg(required = true, allow_negative_numbers = true)]
        orders: Vec<i64>,
    },
    /// Print a witness family of subgroups for a capable group.
    Witness {
        #[arg(required = true, allow_negative_numbers = true)]
        orders: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a family file against condition (c) or (d).
    Verify {
        /// Family file (text or JSON).
        family: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        orders: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Mode::D)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every subgroup with its order and invariants.
    Subgroups {
        #[arg(required = true, allow_negative_numbers = true)]
        orders: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the criterion with the exhaustive oracles for all types up to an order.
    Survey {
        max_order: Option<i64>,
        #[arg(long = "max-order", conflicts_with = "max_order")]
        max_order_flag: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: i64,
    },
}

#[derive(Debug, Error)]
pub enum FamilyParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
    #[error("subgroup {index}: {msg}")]
    Subgroup { index: usize, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A parsed family file: generator vectors per subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyFile {
    pub subgroups: Vec<Vec<Vec<i64>>>,
}

impl FamilyFile {
    /// Accepts either the text format or JSON (detected by a leading `[`).
    pub fn parse(input: &str, group: &AbelianGroup) -> Result<Self, FamilyParseError> {
        if input.trim_start().starts_with('[') {
            Self::parse_json(input, group)
        } else {
            Self::parse_text(input, group)
        }
    }

    pub fn parse_text(input: &str, group: &AbelianGroup) -> Result<Self, FamilyParseError> {
        let mut subgroups = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let gens = content
                .split(';')
                .map(|g| parse_vector(g.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|msg| FamilyParseError::Line { line, msg })?;
            for v in &gens {
                check_vector(v, group).map_err(|msg| FamilyParseError::Line { line, msg })?;
            }
            subgroups.push(gens);
        }
        Ok(Self { subgroups })
    }

    pub fn parse_json(input: &str, group: &AbelianGroup) -> Result<Self, FamilyParseError> {
        let subgroups: Vec<Vec<Vec<i64>>> =
            serde_json::from_str(input).map_err(|e| FamilyParseError::Json(e.to_string()))?;
        for (index, gens) in subgroups.iter().enumerate() {
            if gens.is_empty() {
                return Err(FamilyParseError::Subgroup {
                    index,
                    msg: "no generators".into(),
                });
            }
            for v in gens {
                check_vector(v, group).map_err(|msg| FamilyParseError::Subgroup { index, msg })?;
            }
        }
        Ok(Self { subgroups })
    }

    pub fn read(path: &Path, group: &AbelianGroup) -> Result<Self, FamilyParseError> {
        let text = std::fs::read_to_string(path).map_err(|source| FamilyParseError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, group)
    }

    pub fn to_subgroups(&self, group: &AbelianGroup) -> Result<Vec<Subgroup>, crate::GroupError> {
        self.subgroups
            .iter()
            .map(|gens| group.subgroup_from_vectors(gens))
            .collect()
    }
}

fn parse_vector(s: &str) -> Result<Vec<i64>, String> {
    if s.is_empty() {
        return Err("empty generator".into());
    }
    s.split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<i64>()
                .map_err(|_| format!("invalid coordinate {c:?}"))
        })
        .collect()
}

fn check_vector(v: &[i64], group: &AbelianGroup) -> Result<(), String> {
    if v.len() != group.rank() {
        return Err(format!(
            "generator {} has {} coordinates, expected {}",
            format_factors(v),
            v.len(),
            group.rank()
        ));
    }
    for (i, (&c, &n)) in v.iter().zip(group.factors()).enumerate() {
        if !(0..n).contains(&c) {
            return Err(format!("coordinate {} = {c} outside [0, {n})", i + 1));
        }
    }
    Ok(())
}

/// Text form of a family: one subgroup per line.
pub fn family_to_text(family: &[Subgroup]) -> String {
    let mut out = String::new();
    for h in family {
        let gens: Vec<String> = h
            .generators()
            .iter()
            .map(|g| g.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        out.push_str(&gens.join(";"));
        out.push('\n');
    }
    out
}

pub fn family_to_json(family: &[Subgroup]) -> String {
    let gens: Vec<Vec<Vec<i64>>> = family.iter().map(Subgroup::generators).collect();
    serde_json::to_string(&gens).expect("integer arrays serialize")
}

#[derive(Serialize)]
struct JsonReport<'a> {
    factors: &'a [i64],
    #[serde(flatten)]
    report: &'a FamilyReport,
}

fn render_report(group: &AbelianGroup, report: &FamilyReport) -> String {
    let lists = |ls: &[Vec<i64>]| {
        ls.iter()
            .map(|l| format_factors(l))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    let _ = writeln!(s, "group: {group}");
    let _ = writeln!(s, "members: {}", report.quotient_exponents.len());
    let _ = writeln!(s, "intersection_trivial={}", report.intersection_trivial);
    let _ = writeln!(s, "generates={}", report.generates);
    let _ = writeln!(s, "covers={}", report.covers);
    let _ = writeln!(
        s,
        "subgroup_invariants: {}",
        lists(&report.subgroup_invariant_lists)
    );
    let _ = writeln!(
        s,
        "quotient_invariants: {}",
        lists(&report.quotient_invariant_lists)
    );
    let exps: Vec<String> = report
        .quotient_exponents
        .iter()
        .map(i64::to_string)
        .collect();
    let _ = writeln!(s, "quotient_exponents: {}", exps.join(" "));
    let _ = writeln!(s, "verdict_c={}", report.verdict_c);
    let _ = writeln!(s, "verdict_d={}", report.verdict_d);
    s
}

/// One row of the survey table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub factors: Vec<i64>,
    pub capable: bool,
    pub family_c: bool,
    pub family_d: bool,
}

impl SurveyRow {
    pub fn agrees(&self) -> bool {
        self.capable == self.family_c && self.capable == self.family_d
    }
}

/// Criterion and both oracles for every type of order at most `max_order`,
/// in type order.
pub fn survey(max_order: i64, bound: i64) -> Result<Vec<SurveyRow>, crate::CapabilityError> {
    abelian_types(max_order)
        .into_par_iter()
        .map(|g| {
            Ok(SurveyRow {
                factors: g.factors().to_vec(),
                capable: is_capable(&g),
                family_c: capability::exists_family_c(&g, bound)?,
                family_d: capability::exists_family_d(&g, bound)?,
            })
        })
        .collect()
}

/// Parses `args` and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn group_from(orders: &[i64]) -> Result<AbelianGroup, String> {
    AbelianGroup::from_orders(orders).map_err(|e| e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Capable { orders } => {
            let g = group_from(&orders)?;
            match incapability_reason(&g) {
                None => {
                    writeln!(out, "capable {g}").map_err(io)?;
                    Ok(EXIT_YES)
                }
                Some(reason) => {
                    writeln!(out, "not capable ({reason}) {g}").map_err(io)?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Witness { orders, format } => {
            let g = group_from(&orders)?;
            match capability::witness_family(&g) {
                Ok(family) => {
                    let body = match format {
                        Format::Text => family_to_text(&family),
                        Format::Json => family_to_json(&family) + "\n",
                    };
                    out.write_all(body.as_bytes()).map_err(io)?;
                    Ok(EXIT_YES)
                }
                Err(e) => {
                    writeln!(out, "{e}").map_err(io)?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Verify {
            family,
            orders,
            mode,
            format,
        } => {
            let g = group_from(&orders)?;
            let parsed = FamilyFile::read(&family, &g).map_err(|e| e.to_string())?;
            let subgroups = parsed.to_subgroups(&g).map_err(|e| e.to_string())?;
            let report = verify_family(&g, &subgroups).map_err(|e| e.to_string())?;
            let body = match format {
                Format::Text => render_report(&g, &report),
                Format::Json => {
                    let j = JsonReport {
                        factors: g.factors(),
                        report: &report,
                    };
                    serde_json::to_string_pretty(&j).map_err(|e| e.to_string())? + "\n"
                }
            };
            out.write_all(body.as_bytes()).map_err(io)?;
            let verdict = match mode {
                Mode::C => report.verdict_c,
                Mode::D => report.verdict_d,
            };
            Ok(if verdict { EXIT_YES } else { EXIT_NO })
        }
        Command::Subgroups {
            orders,
            bound,
            format,
        } => {
            let g = group_from(&orders)?;
            let subs = enumerate_subgroups(&g, bound).map_err(|e| e.to_string())?;
            match format {
                Format::Text => {
                    for h in &subs {
                        writeln!(
                            out,
                            "basis={} order={} invariants={} quotient={}",
                            h.basis(),
                            h.order(),
                            format_factors(&h.subgroup_invariants()),
                            format_factors(&h.quotient_invariants())
                        )
                        .map_err(io)?;
                    }
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        basis: Vec<Vec<i64>>,
                        order: i64,
                        invariants: Vec<i64>,
                        quotient: Vec<i64>,
                    }
                    let rows: Vec<Row> = subs
                        .iter()
                        .map(|h| Row {
                            basis: h.basis().to_rows(),
                            order: h.order(),
                            invariants: h.subgroup_invariants(),
                            quotient: h.quotient_invariants(),
                        })
                        .collect();
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&rows).map_err(|e| e.to_string())?
                    )
                    .map_err(io)?;
                }
            }
            Ok(EXIT_YES)
        }
        Command::Survey {
            max_order,
            max_order_flag,
            bound,
        } => {
            let max = max_order
                .or(max_order_flag)
                .ok_or("survey needs a maximum order")?;
            if max < 1 {
                return Err(format!("maximum order must be positive, got {max}"));
            }
            if max > bound {
                return Err(format!(
                    "maximum order {max} exceeds the enumeration bound {bound}"
                ));
            }
            let rows = survey(max, bound).map_err(|e| e.to_string())?;
            writeln!(
                out,
                "{:<20} {:>8} {:>9} {:>9}",
                "factors", "capable", "family_c", "family_d"
            )
            .map_err(io)?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<20} {:>8} {:>9} {:>9}",
                    format_factors(&r.factors),
                    r.capable,
                    r.family_c,
                    r.family_d
                )
                .map_err(io)?;
            }
            match rows.iter().find(|r| !r.agrees()) {
                None => {
                    writeln!(out, "EQUIVALENCE HOLDS ({} types)", rows.len()).map_err(io)?;
                    Ok(EXIT_YES)
                }
                Some(r) => {
                    writeln!(out, "COUNTEREXAMPLE {}", format_factors(&r.factors)).map_err(io)?;
                    Ok(EXIT_NO)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["abelcap"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn capable_command() {
        let (code, out, _) = call(&["capable", "2", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("capable"));
        let (code, out, _) = call(&["capable", "6"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("not capable (cyclic)"));
        let (code, out, _) = call(&["capable", "2", "3"]);
        assert_eq!((code, out.trim()), (1, "not capable (cyclic) (6)"));
        assert_eq!(call(&["capable", "0"]).0, 2);
        assert_eq!(call(&["capable", "-3"]).0, 2);
        assert_eq!(call(&["capable", "x"]).0, 2);
        assert_eq!(call(&["capable"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn witness_command() {
        let (code, out, _) = call(&["witness", "2", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1,0\n1,1\n0,1\n");
        assert_eq!(call(&["witness", "2", "4"]).0, 1);
        let (code, out, _) = call(&["witness", "2", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let parsed: Vec<Vec<Vec<i64>>> = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.len(), 3);
        assert!(parsed.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn text_parser() {
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let f = FamilyFile::parse("# header\n\n1,0 ; 0,2\n0,1 # tail\n", &g).unwrap();
        assert_eq!(
            f.subgroups,
            vec![vec![vec![1, 0], vec![0, 2]], vec![vec![0, 1]]]
        );
        let err = FamilyFile::parse("1,0\n1,x\n", &g).unwrap_err();
        assert!(
            matches!(err, FamilyParseError::Line { line: 2, .. }),
            "{err}"
        );
        let err = FamilyFile::parse("0,4\n", &g).unwrap_err();
        assert!(matches!(err, FamilyParseError::Line { line: 1, .. }));
        assert!(FamilyFile::parse("1\n", &g).is_err());
        assert!(FamilyFile::parse("1,0;\n", &g).is_err());
    }

    #[test]
    fn json_parser() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        let f = FamilyFile::parse("[[[1,0]],[[0,1],[1,1]]]", &g).unwrap();
        assert_eq!(f.subgroups.len(), 2);
        assert!(matches!(
            FamilyFile::parse("[[[2,0]]]", &g),
            Err(FamilyParseError::Subgroup { index: 0, .. })
        ));
        assert!(matches!(
            FamilyFile::parse("[[]]", &g),
            Err(FamilyParseError::Subgroup { .. })
        ));
        assert!(matches!(
            FamilyFile::parse("[[[1,0]]", &g),
            Err(FamilyParseError::Json(_))
        ));
    }

    #[test]
    fn verify_command() {
        let dir = tempfile::tempdir().unwrap();
        let witness = dir.path().join("w.txt");
        std::fs::write(&witness, call(&["witness", "2", "2"]).1).unwrap();
        let w = witness.to_str().unwrap();
        assert_eq!(call(&["verify", w, "2", "2", "--mode", "d"]).0, 0);
        assert_eq!(call(&["verify", w, "2", "2", "--mode", "c"]).0, 0);

        let whole = dir.path().join("whole.txt");
        std::fs::write(&whole, "1,0;0,1\n").unwrap();
        let (code, out, _) = call(&["verify", whole.to_str().unwrap(), "2", "2", "--mode", "c"]);
        assert_eq!(code, 1);
        assert!(out.contains("intersection_trivial=false"));

        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "1,0\n1,x\n").unwrap();
        let (code, _, err) = call(&["verify", bad.to_str().unwrap(), "2", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("line 2"), "{err}");

        let empty = dir.path().join("empty.txt");
        std::fs::write(&empty, "# nothing\n").unwrap();
        assert_eq!(call(&["verify", empty.to_str().unwrap(), "2", "2"]).0, 2);
        assert_eq!(call(&["verify", "/nonexistent/family", "2", "2"]).0, 2);

        let (code, out, _) = call(&["verify", w, "2", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["factors"], serde_json::json!([2, 2]));
        assert_eq!(v["verdict_d"], serde_json::json!(true));
        assert_eq!(v["quotient_exponents"], serde_json::json!([2, 2, 2]));
    }

    #[test]
    fn subgroups_command() {
        let (code, out, _) = call(&["subgroups", "2", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        assert_eq!(call(&["subgroups", "64", "128"]).0, 2);
        assert_eq!(call(&["subgroups", "4", "4", "--bound", "8"]).0, 2);
        let (_, out, _) = call(&["subgroups", "2", "4", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 8);
    }

    #[test]
    fn survey_command() {
        let (code, out, _) = call(&["survey", "16"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.trim_end().ends_with("EQUIVALENCE HOLDS (25 types)"));
        let (code, out, _) = call(&["survey", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("()"));
        assert_eq!(call(&["survey", "--max-order", "4"]).0, 0);
        assert_eq!(call(&["survey"]).0, 2);
        assert_eq!(call(&["survey", "0"]).0, 2);
        assert_eq!(call(&["survey", "100", "--bound", "50"]).0, 2);
    }
}
