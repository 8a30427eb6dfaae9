use std::fmt;

use thiserror::Error;

use super::{is_indecomposable, make_solution, orbits, Solution, SolutionError};
use crate::par::Exec;

/// A partition of the ground set, labelled canonically: blocks are numbered
/// in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    label: Vec<usize>,
    blocks: usize,
}

impl Congruence {
    /// Canonicalizes an arbitrary block labelling.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let label: Vec<usize> = raw
            .iter()
            .map(|&r| {
                let next = map.len();
                *map.entry(r).or_insert(next)
            })
            .collect();
        Congruence { blocks: map.len(), label }
    }

    pub fn discrete(n: usize) -> Self {
        Congruence { label: (0..n).collect(), blocks: n }
    }

    pub fn full(n: usize) -> Self {
        Congruence { label: vec![0; n], blocks: n.min(1) }
    }

    pub fn size(&self) -> usize {
        self.label.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn is_full(&self) -> bool {
        self.blocks <= 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks == self.label.len()
    }

    /// Neither discrete nor full.
    pub fn is_proper(&self) -> bool {
        !self.is_full() && !self.is_discrete()
    }

    pub fn label(&self, x: usize) -> usize {
        self.label[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.label[x] == self.label[y]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &b) in self.label.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// First failure of `x∼x', y∼y' ⟹ σ_x(y) ∼ σ_{x'}(y')`, as `(x, x', y)`
    /// or `(x, y, y')` in the two halves of the check. Checking single-step
    /// changes against block representatives covers every quadruple.
    pub fn compatibility_witness(&self, s: &Solution) -> Option<(usize, usize, usize)> {
        let n = s.size();
        let mut rep = vec![usize::MAX; self.blocks];
        for x in 0..n {
            if rep[self.label[x]] == usize::MAX {
                rep[self.label[x]] = x;
            }
        }
        for x in 0..n {
            let r = rep[self.label[x]];
            for y in 0..n {
                if !self.same(s.sigma(x, y), s.sigma(r, y)) {
                    return Some((r, x, y));
                }
                let ry = rep[self.label[y]];
                if !self.same(s.sigma(x, y), s.sigma(x, ry)) {
                    return Some((x, ry, y));
                }
            }
        }
        None
    }

    pub fn is_compatible(&self, s: &Solution) -> bool {
        self.compatibility_witness(s).is_none()
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

struct UnionFind {
    parent: Vec<u32>,
    classes: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), classes: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb) as u32;
        self.classes -= 1;
        true
    }
}

/// Union-find closure. Only merges that join two classes become edges, and
/// for each edge `(x, x')` the rule is applied with one side fixed:
/// `σ_x(y) ∼ σ_{x'}(y)` for every `y`, and `σ_z(x) ∼ σ_z(x')` for every `z`.
/// Chaining such steps along the spanning edges yields the full rule.
fn close(s: &Solution, pairs: &[(usize, usize)], stop_when_full: bool) -> UnionFind {
    let n = s.size();
    let mut uf = UnionFind::new(n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            edges.push((a, b));
        }
    }
    while let Some((x, x2)) = edges.pop() {
        if stop_when_full && uf.classes == 1 {
            break;
        }
        for y in 0..n {
            let (a, b) = (s.sigma(x, y), s.sigma(x2, y));
            if uf.union(a, b) {
                edges.push((a, b));
            }
            let (a, b) = (s.sigma(y, x), s.sigma(y, x2));
            if uf.union(a, b) {
                edges.push((a, b));
            }
        }
    }
    uf
}

fn to_congruence(mut uf: UnionFind) -> Congruence {
    let n = uf.parent.len();
    let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_labels(&roots)
}

/// Smallest congruence containing `pairs`.
pub fn congruence_generated(s: &Solution, pairs: &[(usize, usize)]) -> Congruence {
    to_congruence(close(s, pairs, false))
}

fn principal_is_full(s: &Solution, x: usize, y: usize) -> bool {
    close(s, &[(x, y)], true).classes == 1
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("partition is not compatible with sigma at ({x},{y})")]
    Incompatible { x: usize, y: usize },
    #[error("induced table is not a valid solution: {0}")]
    Invalid(#[from] SolutionError),
}

/// The induced solution on blocks, with the projection `x ↦ block(x)`.
pub fn quotient_solution(s: &Solution, c: &Congruence) -> Result<(Solution, Vec<usize>), QuotientError> {
    let n = s.size();
    let m = c.block_count();
    let blocks = c.blocks();
    let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let rows: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| c.label(s.sigma(x, y))).collect())
        .collect();
    for x in 0..n {
        for y in 0..n {
            if c.label(s.sigma(x, y)) != rows[c.label(x)][c.label(y)] {
                return Err(QuotientError::Incompatible { x, y });
            }
        }
    }
    let labels: Vec<String> = reps.iter().map(|&x| format!("[{}]", s.labels()[x])).collect();
    debug_assert_eq!(labels.len(), m);
    let q = make_solution(rows, labels)?;
    Ok((q, c.labels().to_vec()))
}

/// Partition by equal `σ` rows.
pub fn retract_congruence(s: &Solution) -> Congruence {
    let mut map = std::collections::HashMap::new();
    let raw: Vec<usize> = (0..s.size())
        .map(|x| {
            let next = map.len();
            *map.entry(s.sigma_row(x)).or_insert(next)
        })
        .collect();
    Congruence::from_labels(&raw)
}

/// `Ret(X, r)` and the projection onto it.
pub fn retract(s: &Solution) -> (Solution, Vec<usize>) {
    quotient_solution(s, &retract_congruence(s)).expect("retract relation is a congruence")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mpl {
    Level(u32),
    NotMultipermutation,
}

impl fmt::Display for Mpl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mpl::Level(k) => write!(f, "{k}"),
            Mpl::NotMultipermutation => f.write_str("not-multipermutation"),
        }
    }
}

pub fn multipermutation_level(s: &Solution) -> Mpl {
    let mut current = s.clone();
    let mut level = 0;
    while current.size() > 1 {
        let (next, _) = retract(&current);
        if next.size() == current.size() {
            return Mpl::NotMultipermutation;
        }
        current = next;
        level += 1;
    }
    Mpl::Level(level)
}

/// How principal congruences are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SimplicityMethod {
    /// Every pair `x < y`.
    #[default]
    Exhaustive,
    /// Cheap certified witnesses first; for indecomposable solutions only the
    /// pairs `(0, y)`.
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// A congruence that is neither discrete nor full, when one was found.
    pub witness: Option<Congruence>,
}

/// Simplicity by principal congruences over every pair. One-point
/// solutions are not simple.
pub fn is_simple_solution(s: &Solution) -> Simplicity {
    is_simple_solution_with(s, SimplicityMethod::Exhaustive, &[], Exec::default())
}

/// `hints` are candidate partitions; any that is compatible and proper is
/// returned as the witness without further search.
///
/// The reduced path rests on this: if `gr(σ_x)` is transitive, each `σ_x`
/// permutes the blocks of a congruence, so all blocks have the same size, and
/// a proper congruence puts `0` in a block with some `y ≠ 0`.
pub fn is_simple_solution_with(
    s: &Solution,
    method: SimplicityMethod,
    hints: &[Congruence],
    exec: Exec,
) -> Simplicity {
    let n = s.size();
    if n <= 1 {
        return Simplicity { simple: false, witness: None };
    }
    let not_simple = |c: Congruence| Simplicity { simple: false, witness: Some(c) };
    if method == SimplicityMethod::Reduced {
        let mut candidates = hints.to_vec();
        candidates.push(retract_congruence(s));
        candidates.push(Congruence::from_labels(&orbits(s).label));
        for c in candidates {
            if c.size() == n && c.is_proper() && c.is_compatible(s) {
                return not_simple(c);
            }
        }
        if is_indecomposable(s) {
            let found = exec.find_map(n - 1, |k| (!principal_is_full(s, 0, k + 1)).then_some(k + 1));
            return match found {
                Some(y) => not_simple(congruence_generated(s, &[(0, y)])),
                None => Simplicity { simple: true, witness: None },
            };
        }
    }
    let found = exec.find_map(n, |x| {
        (x + 1..n).find_map(|y| (!principal_is_full(s, x, y)).then_some((x, y)))
    });
    match found {
        Some((x, y)) => not_simple(congruence_generated(s, &[(x, y)])),
        None => Simplicity { simple: true, witness: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ybcore::{cyclic_solution, trivial_solution};

    #[test]
    fn flip_congruences() {
        let t = trivial_solution(3);
        let c = congruence_generated(&t, &[(0, 1)]);
        assert_eq!(c.blocks(), vec![vec![0, 1], vec![2]]);
        assert!(congruence_generated(&t, &[]).is_discrete());
        let (q, proj) = quotient_solution(&t, &c).unwrap();
        assert_eq!(q.rows(), trivial_solution(2).rows());
        assert_eq!(proj, vec![0, 0, 1]);
        let (one, _) = quotient_solution(&t, &Congruence::full(3)).unwrap();
        assert_eq!(one.size(), 1);
        let (same, _) = quotient_solution(&t, &Congruence::discrete(3)).unwrap();
        assert_eq!(same.rows(), t.rows());
    }

    #[test]
    fn incompatible_partitions_are_rejected() {
        let c = cyclic_solution(4);
        let p = Congruence::from_labels(&[0, 0, 1, 2]);
        assert!(!p.is_compatible(&c));
        assert!(matches!(quotient_solution(&c, &p), Err(QuotientError::Incompatible { .. })));
        let q = Congruence::from_labels(&[0, 1, 0, 1]);
        assert!(q.is_compatible(&c));
    }

    #[test]
    fn retract_and_level() {
        let c = cyclic_solution(4);
        assert_eq!(retract(&c).0.size(), 1);
        assert_eq!(multipermutation_level(&c), Mpl::Level(1));
        assert_eq!(multipermutation_level(&trivial_solution(1)), Mpl::Level(0));
        assert_eq!(retract(&trivial_solution(3)).0.size(), 1);
    }

    #[test]
    fn simplicity_of_small_solutions() {
        let two = trivial_solution(2);
        assert!(is_simple_solution(&two).simple);
        let c4 = is_simple_solution(&cyclic_solution(4));
        assert!(!c4.simple);
        assert!(c4.witness.unwrap().is_proper());
        let r = is_simple_solution_with(&cyclic_solution(4), SimplicityMethod::Reduced, &[], Exec::default());
        assert!(!r.simple && r.witness.unwrap().is_compatible(&cyclic_solution(4)));
        // Prime cyclic: blocks of equal size must be trivial, simple.
        assert!(is_simple_solution(&cyclic_solution(3)).simple);
    }
}
