//! JSON artifacts for solutions and braces, and the `key: value` reports.
//!
//! Keys appear in a fixed order and rows are written one per line, so equal
//! inputs give byte-identical files.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::brace::{all_ideals, is_simple_brace, socle, BraceError, FiniteBrace, DEFAULT_BRACE_CAP};
use crate::par::Exec;
use crate::ybcore::{
    is_indecomposable, is_irretractable, is_simple_solution, make_solution_with, multipermutation_level,
    permutation_group_with_cap, PermGroupError, Solution, SolutionError,
};

#[derive(Debug, Error)]
pub enum ArtifactError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected a {expected} artifact, found {got:?}")]
    Kind { expected: &'static str, got: String },
    #[error("declared size {size} but {what} has {got} entries")]
    Shape { size: usize, what: &'static str, got: usize },
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SolutionArtifact {
    pub kind: String,
    pub size: usize,
    pub labels: Vec<String>,
    pub sigma: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BraceArtifact {
    pub kind: String,
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    Solution(SolutionArtifact),
    Brace(BraceArtifact),
}

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

fn check_rows(size: usize, rows: &[Vec<usize>], what: &'static str) -> Result<(), ArtifactError> {
    if rows.len() != size {
        return Err(ArtifactError::Shape { size, what, got: rows.len() });
    }
    if let Some(r) = rows.iter().find(|r| r.len() != size) {
        return Err(ArtifactError::Shape { size, what, got: r.len() });
    }
    Ok(())
}

pub fn parse_artifact(text: &str) -> Result<Artifact, ArtifactError> {
    let k: KindOnly = serde_json::from_str(text)?;
    match k.kind.as_str() {
        "solution" => parse_solution_artifact(text).map(Artifact::Solution),
        "brace" => parse_brace_artifact(text).map(Artifact::Brace),
        _ => Err(ArtifactError::Kind { expected: "solution or brace", got: k.kind }),
    }
}

pub fn parse_solution_artifact(text: &str) -> Result<SolutionArtifact, ArtifactError> {
    let a: SolutionArtifact = serde_json::from_str(text)?;
    if a.kind != "solution" {
        return Err(ArtifactError::Kind { expected: "solution", got: a.kind });
    }
    check_rows(a.size, &a.sigma, "sigma")?;
    if a.labels.len() != a.size {
        return Err(ArtifactError::Shape { size: a.size, what: "labels", got: a.labels.len() });
    }
    Ok(a)
}

pub fn parse_brace_artifact(text: &str) -> Result<BraceArtifact, ArtifactError> {
    let a: BraceArtifact = serde_json::from_str(text)?;
    if a.kind != "brace" {
        return Err(ArtifactError::Kind { expected: "brace", got: a.kind });
    }
    check_rows(a.size, &a.add, "add")?;
    check_rows(a.size, &a.mul, "mul")?;
    if a.labels.len() != a.size {
        return Err(ArtifactError::Shape { size: a.size, what: "labels", got: a.labels.len() });
    }
    Ok(a)
}

impl SolutionArtifact {
    pub fn from_solution(s: &Solution) -> Self {
        SolutionArtifact { kind: "solution".into(), size: s.size(), labels: s.labels().to_vec(), sigma: s.rows() }
    }

    pub fn into_solution(self, exec: Exec) -> Result<Solution, SolutionError> {
        make_solution_with(self.sigma, self.labels, exec)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"kind\": \"solution\",");
        let _ = writeln!(out, "  \"size\": {},", self.size);
        let _ = writeln!(out, "  \"labels\": {},", string_list(&self.labels));
        let _ = writeln!(out, "  \"sigma\": {}", matrix(&self.sigma));
        out.push_str("}\n");
        out
    }
}

impl BraceArtifact {
    pub fn from_brace(b: &FiniteBrace) -> Self {
        BraceArtifact {
            kind: "brace".into(),
            size: b.size(),
            add: b.add_rows(),
            mul: b.mul_rows(),
            labels: b.labels().to_vec(),
        }
    }

    pub fn into_brace(self, cap: usize, exec: Exec) -> Result<FiniteBrace, BraceError> {
        let m = self.size;
        FiniteBrace::from_tables(m, flat(self.add), flat(self.mul), self.labels, cap, exec)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"kind\": \"brace\",");
        let _ = writeln!(out, "  \"size\": {},", self.size);
        let _ = writeln!(out, "  \"add\": {},", matrix(&self.add));
        let _ = writeln!(out, "  \"mul\": {},", matrix(&self.mul));
        let _ = writeln!(out, "  \"labels\": {}", string_list(&self.labels));
        out.push_str("}\n");
        out
    }
}

fn flat(rows: Vec<Vec<usize>>) -> Vec<u32> {
    rows.into_iter().flatten().map(|v| v.min(u32::MAX as usize) as u32).collect()
}

fn string_list(items: &[String]) -> String {
    let parts: Vec<String> = items.iter().map(|s| serde_json::to_string(s).expect("string serializes")).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix(rows: &[Vec<usize>]) -> String {
    if rows.is_empty() {
        return "[]".into();
    }
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            let v: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("    [{}]", v.join(", "))
        })
        .collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

/// Verdicts of the solution pipeline. `perm_group_order` is `None` when the
/// group exceeds the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub size: usize,
    pub indecomposable: bool,
    pub irretractable: bool,
    pub mpl: String,
    pub simple: bool,
    pub perm_group_order: Option<usize>,
}

impl SolutionReport {
    pub fn run(s: &Solution, perm_cap: usize) -> Self {
        let order = match permutation_group_with_cap(s, perm_cap) {
            Ok(g) => Some(g.order()),
            Err(PermGroupError::CapExceeded { .. }) => None,
        };
        SolutionReport {
            size: s.size(),
            indecomposable: is_indecomposable(s),
            irretractable: is_irretractable(s),
            mpl: multipermutation_level(s).to_string(),
            simple: is_simple_solution(s).simple,
            perm_group_order: order,
        }
    }

    /// Validation already passed, so the three axioms print as `true`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "size: {}", self.size);
        let _ = writeln!(s, "involutive: true");
        let _ = writeln!(s, "nondegenerate: true");
        let _ = writeln!(s, "braid: true");
        let _ = writeln!(s, "indecomposable: {}", self.indecomposable);
        let _ = writeln!(s, "irretractable: {}", self.irretractable);
        let _ = writeln!(s, "mpl: {}", self.mpl);
        let _ = writeln!(s, "simple: {}", self.simple);
        match self.perm_group_order {
            Some(o) => {
                let _ = writeln!(s, "perm_group_order: {o}");
            }
            None => {
                let _ = writeln!(s, "perm_group_order: cap-exceeded");
            }
        }
        s
    }
}

/// Which axiom a validation error refutes, with its witness.
pub fn solution_failure(e: &SolutionError) -> (&'static str, String) {
    match e {
        SolutionError::NotInvolutive { x, y } => ("involutive", format!("r(r({x},{y})) != ({x},{y})")),
        SolutionError::NotPermutation { row, col, value } => {
            ("nondegenerate", format!("sigma row {row} repeats value {value} at column {col}"))
        }
        SolutionError::Degenerate { y } => ("nondegenerate", format!("gamma_{y} is not bijective")),
        SolutionError::BraidFails { x, y, z } => ("braid", format!("braid relation fails at ({x},{y},{z})")),
        other => ("shape", other.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceReport {
    pub size: usize,
    pub socle_size: usize,
    pub simple: bool,
    /// `None` when the brace is larger than the threshold or has more
    /// ideals than [`IDEAL_LIMIT`].
    pub ideal_count: Option<usize>,
}

pub const DEFAULT_IDEAL_THRESHOLD: usize = 256;
pub const IDEAL_LIMIT: usize = 100_000;

impl BraceReport {
    pub fn run(b: &FiniteBrace, ideal_threshold: usize) -> Self {
        let ideal_count =
            if b.size() <= ideal_threshold { all_ideals(b, IDEAL_LIMIT).map(|v| v.len()) } else { None };
        BraceReport { size: b.size(), socle_size: socle(b).size(), simple: is_simple_brace(b), ideal_count }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "size: {}", self.size);
        let _ = writeln!(s, "brace_ok: true");
        let _ = writeln!(s, "socle_size: {}", self.socle_size);
        let _ = writeln!(s, "simple: {}", self.simple);
        match self.ideal_count {
            Some(c) => {
                let _ = writeln!(s, "ideal_count: {c}");
            }
            None => {
                let _ = writeln!(s, "ideal_count: skipped");
            }
        }
        s
    }
}

/// Default cap for reading brace artifacts.
pub const BRACE_READ_CAP: usize = DEFAULT_BRACE_CAP;
