use thiserror::Error;

use super::{BraceError, FiniteBrace, DEFAULT_BRACE_CAP};
use crate::par::Exec;
use crate::ybcore::{distinct_rows, PermGroup, PermGroupError, Solution, DEFAULT_PERM_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceFromSolutionError {
    #[error(transparent)]
    Group(#[from] PermGroupError),
    #[error("reconstructed tables are not a brace: {0}")]
    Brace(#[from] BraceError),
    #[error("lambda_g(sigma_y) differs from sigma_g(y) for element {g}, point {y}")]
    LambdaOnGenerators { g: usize, y: usize },
}

/// The brace on `gr(σ_x)` together with the group it was built from.
#[derive(Clone, Debug)]
pub struct PermBrace {
    pub brace: FiniteBrace,
    pub group: PermGroup,
    /// `point_element[y]` is the element index of `σ_y`.
    pub point_element: Vec<usize>,
}

pub fn brace_from_solution(s: &Solution) -> Result<PermBrace, BraceFromSolutionError> {
    brace_from_solution_with_order(s, &distinct_rows(s), DEFAULT_PERM_CAP, DEFAULT_BRACE_CAP)
}

/// Builds the group from the generators `σ_y`, `y ∈ gen_points`, in that
/// order, and reconstructs the addition along the recorded words. Groups
/// above `brace_cap` are refused before any table is allocated.
///
/// From `g + σ_{g(y)} = g∘σ_y`: a word step `h = h'∘σ_y` gives
/// `h = h' + σ_{h'(y)}`, hence `g + h = (g + h') + σ_{h'(y)}`, and adding
/// `σ_z` to `k` is `k∘σ_{k⁻¹(z)}`.
pub fn brace_from_solution_with_order(
    s: &Solution,
    gen_points: &[usize],
    perm_cap: usize,
    brace_cap: usize,
) -> Result<PermBrace, BraceFromSolutionError> {
    let group = PermGroup::generate(s, gen_points, perm_cap)?;
    let n = s.size();
    let m = group.order();
    if m > brace_cap {
        return Err(BraceError::SizeCapExceeded { size: m, cap: brace_cap }.into());
    }
    let point_element: Vec<usize> = (0..n)
        .map(|y| group.index_of(s.sigma_row(y)).expect("generator present"))
        .collect();
    let inverse_perm: Vec<Vec<u32>> = (0..m)
        .map(|g| {
            let p = group.perm(g);
            let mut inv = vec![0u32; n];
            for (x, &v) in p.iter().enumerate() {
                inv[v as usize] = x as u32;
            }
            inv
        })
        .collect();
    // right[k * n + w] = k ∘ σ_w
    let right: Vec<u32> = (0..m * n)
        .map(|i| group.compose(i / n, point_element[i % n]) as u32)
        .collect();
    let words: Vec<Option<(usize, usize)>> = (0..m).map(|h| group.word(h)).collect();
    let rows: Vec<Vec<u32>> = Exec::default().map(m, |g| {
        let mut row = vec![0u32; m];
        row[0] = g as u32;
        for h in 1..m {
            let (prev, y) = words[h].expect("non-identity has a word");
            let k = row[prev] as usize;
            let z = group.apply(prev, y);
            row[h] = right[k * n + inverse_perm[k][z] as usize];
        }
        row
    });
    let add: Vec<u32> = rows.into_iter().flatten().collect();
    let mul = group.mul_table();
    let labels = (0..m).map(|g| cycle_notation(group.perm(g))).collect();
    let brace = FiniteBrace::from_tables(m, add, mul, labels, usize::MAX, Exec::default())?;
    for g in 0..m {
        for y in 0..n {
            if brace.lambda(g, point_element[y]) != point_element[group.apply(g, y)] {
                return Err(BraceFromSolutionError::LambdaOnGenerators { g, y });
            }
        }
    }
    Ok(PermBrace { brace, group, point_element })
}

/// `(0 1)(2 3)` style, omitting fixed points; `()` for the identity.
pub fn cycle_notation(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x.to_string());
            x = p[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
