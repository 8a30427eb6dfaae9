//! Involutive non-degenerate set-theoretic solutions as dense `σ` tables.
//!
//! A solution on `{0, …, N-1}` is `r(x, y) = (σ_x(y), γ_y(x))` with
//! `γ_y(x) = σ⁻¹_{σ_x(y)}(x)`. Only the `σ` table is stored by callers; `σ⁻¹`
//! and `γ` are derived.

mod congruence;
mod iso;
mod permgroup;

pub use congruence::{
    congruence_generated, is_simple_solution, is_simple_solution_with, multipermutation_level,
    quotient_solution, retract, retract_congruence, Congruence, Mpl, QuotientError, Simplicity,
    SimplicityMethod,
};
pub use iso::{find_solution_isomorphism, is_solution_homomorphism};
pub use permgroup::{permutation_group, permutation_group_with_cap, PermGroup, PermGroupError, DEFAULT_PERM_CAP};

use thiserror::Error;

use crate::par::Exec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolutionError {
    #[error("solution must have at least one point")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("{got} labels given for {expected} points")]
    LabelCount { expected: usize, got: usize },
    #[error("row {row} not a permutation: value {value} at column {col}")]
    NotPermutation { row: usize, col: usize, value: usize },
    #[error("gamma_{y} is not a permutation (degenerate)")]
    Degenerate { y: usize },
    #[error("r^2 differs from the identity at ({x},{y})")]
    NotInvolutive { x: usize, y: usize },
    #[error("braid relation fails at ({x},{y},{z})")]
    BraidFails { x: usize, y: usize, z: usize },
}

/// A validated involutive non-degenerate solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    n: usize,
    labels: Vec<String>,
    sigma: Vec<u32>,
    sigma_inv: Vec<u32>,
    gamma: Vec<u32>,
}

/// Builds and fully validates a solution. `labels` may be empty, in which
/// case points are labelled by index.
pub fn make_solution(sigma: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Solution, SolutionError> {
    make_solution_with(sigma, labels, Exec::default())
}

pub fn make_solution_with(
    sigma: Vec<Vec<usize>>,
    labels: Vec<String>,
    exec: Exec,
) -> Result<Solution, SolutionError> {
    let s = Solution::from_rows(sigma, labels)?;
    if let Some((x, y, z)) = braid_witness(s.n, &s.sigma, &s.gamma, exec) {
        return Err(SolutionError::BraidFails { x, y, z });
    }
    Ok(s)
}

/// Validates everything except the braid relation, which costs `N³`. Meant
/// for tables produced by constructions whose output is otherwise checked.
pub fn make_solution_trusting_braid(
    sigma: Vec<Vec<usize>>,
    labels: Vec<String>,
) -> Result<Solution, SolutionError> {
    Solution::from_rows(sigma, labels)
}

impl Solution {
    fn from_rows(rows: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, SolutionError> {
        let n = rows.len();
        if n == 0 {
            return Err(SolutionError::Empty);
        }
        let labels = if labels.is_empty() {
            (0..n).map(|i| i.to_string()).collect()
        } else if labels.len() != n {
            return Err(SolutionError::LabelCount { expected: n, got: labels.len() });
        } else {
            labels
        };
        let mut sigma = Vec::with_capacity(n * n);
        let mut sigma_inv = vec![u32::MAX; n * n];
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SolutionError::NotSquare { row: x, len: row.len(), expected: n });
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n || sigma_inv[x * n + v] != u32::MAX {
                    return Err(SolutionError::NotPermutation { row: x, col: y, value: v });
                }
                sigma_inv[x * n + v] = y as u32;
                sigma.push(v as u32);
            }
        }
        let mut gamma = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                let u = sigma[x * n + y] as usize;
                gamma[y * n + x] = sigma_inv[u * n + x];
            }
        }
        for y in 0..n {
            if !is_permutation(&gamma[y * n..(y + 1) * n]) {
                return Err(SolutionError::Degenerate { y });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let u = sigma[x * n + y] as usize;
                let v = gamma[y * n + x] as usize;
                let (x2, y2) = (sigma[u * n + v] as usize, gamma[v * n + u] as usize);
                if (x2, y2) != (x, y) {
                    return Err(SolutionError::NotInvolutive { x, y });
                }
            }
        }
        Ok(Solution { n, labels, sigma, sigma_inv, gamma })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `σ_x(y)`.
    #[inline]
    pub fn sigma(&self, x: usize, y: usize) -> usize {
        self.sigma[x * self.n + y] as usize
    }

    /// `σ_x⁻¹(y)`.
    #[inline]
    pub fn sigma_inv(&self, x: usize, y: usize) -> usize {
        self.sigma_inv[x * self.n + y] as usize
    }

    /// `γ_y(x)`.
    #[inline]
    pub fn gamma(&self, y: usize, x: usize) -> usize {
        self.gamma[y * self.n + x] as usize
    }

    pub fn sigma_row(&self, x: usize) -> &[u32] {
        &self.sigma[x * self.n..(x + 1) * self.n]
    }

    pub fn sigma_table(&self) -> &[u32] {
        &self.sigma
    }

    pub fn gamma_table(&self) -> &[u32] {
        &self.gamma
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| self.sigma_row(x).iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// `r(x, y)`.
    pub fn r(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma(x, y), self.gamma(y, x))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, SolutionError> {
        if labels.len() != self.n {
            return Err(SolutionError::LabelCount { expected: self.n, got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }
}

fn is_permutation(row: &[u32]) -> bool {
    let mut seen = vec![false; row.len()];
    row.iter()
        .all(|&v| (v as usize) < row.len() && !std::mem::replace(&mut seen[v as usize], true))
}

/// `γ` table for a `σ` table whose rows are permutations.
pub fn gamma_table(n: usize, sigma: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            inv[x * n + sigma[x * n + y] as usize] = y as u32;
        }
    }
    let mut gamma = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            gamma[y * n + x] = inv[sigma[x * n + y] as usize * n + x];
        }
    }
    gamma
}

/// First triple where `r₁₂r₂₃r₁₂ ≠ r₂₃r₁₂r₂₃`, scanning the first coordinate
/// with `exec`.
pub fn braid_witness(n: usize, sigma: &[u32], gamma: &[u32], exec: Exec) -> Option<(usize, usize, usize)> {
    let r = |x: usize, y: usize| (sigma[x * n + y] as usize, gamma[y * n + x] as usize);
    exec.find_map(n, |x| {
        for y in 0..n {
            for z in 0..n {
                let (a, b) = r(x, y);
                let (b, c) = r(b, z);
                let (a, b) = r(a, b);
                let lhs = (a, b, c);
                let (b2, c2) = r(y, z);
                let (a2, b2) = r(x, b2);
                let (b2, c2) = r(b2, c2);
                if lhs != (a2, b2, c2) {
                    return Some((x, y, z));
                }
            }
        }
        None
    })
}

/// First pair where `σ_x σ_{σ_x⁻¹(y)} ≠ σ_y σ_{σ_y⁻¹(x)}`. Works on the raw
/// `σ` table (rows must be permutations).
pub fn sigma_condition_witness(n: usize, sigma: &[u32], exec: Exec) -> Option<(usize, usize)> {
    let mut inv = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            inv[x * n + sigma[x * n + y] as usize] = y as u32;
        }
    }
    let s = |x: usize, y: usize| sigma[x * n + y] as usize;
    exec.find_map(n, |x| {
        for y in 0..n {
            let u = inv[x * n + y] as usize;
            let v = inv[y * n + x] as usize;
            if (0..n).any(|z| s(x, s(u, z)) != s(y, s(v, z))) {
                return Some((x, y));
            }
        }
        None
    })
}

pub fn verify_sigma_condition(s: &Solution) -> bool {
    sigma_condition_witness(s.n, &s.sigma, Exec::default()).is_none()
}

pub fn verify_braid(s: &Solution) -> bool {
    braid_witness(s.n, &s.sigma, &s.gamma, Exec::default()).is_none()
}

/// Orbits of `gr(σ_x)` on the ground set, computed from the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbits {
    /// Orbit index of each point; orbits are numbered by least element.
    pub label: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

pub fn orbits(s: &Solution) -> Orbits {
    let n = s.n;
    let mut label = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    let gens = distinct_rows(s);
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        label[start] = id;
        let mut block = vec![start];
        let mut i = 0;
        while i < block.len() {
            let y = block[i];
            i += 1;
            for &x in &gens {
                let z = s.sigma(x, y);
                if label[z] == usize::MAX {
                    label[z] = id;
                    block.push(z);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    Orbits { label, blocks }
}

pub fn is_indecomposable(s: &Solution) -> bool {
    orbits(s).blocks.len() == 1
}

/// Least point of each class of equal `σ` rows.
pub fn distinct_rows(s: &Solution) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    (0..s.n).filter(|&x| seen.insert(s.sigma_row(x))).collect()
}

pub fn is_irretractable(s: &Solution) -> bool {
    distinct_rows(s).len() == s.n
}

/// `σ_x = id` for all `x`.
pub fn trivial_solution(n: usize) -> Solution {
    make_solution((0..n).map(|_| (0..n).collect()).collect(), Vec::new()).expect("flip is a solution")
}

/// `σ_x = (0 1 … n-1)` for all `x`.
pub fn cyclic_solution(n: usize) -> Solution {
    make_solution((0..n).map(|_| (0..n).map(|y| (y + 1) % n).collect()).collect(), Vec::new())
        .expect("constant cycle is a solution")
}
