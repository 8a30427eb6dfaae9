//! Finite left braces as dense addition and multiplication tables.
//!
//! `λ_a(b) = -a + a∘b` is derived at construction. All axioms are checked
//! exhaustively, so a `FiniteBrace` value is always a valid brace.

mod asym;
mod from_solution;
mod ideal;
mod iso;
mod props;

pub use asym::{asymmetric_product, AsymError, AsymSpec};
pub use from_solution::{
    brace_from_solution, brace_from_solution_with_order, cycle_notation, BraceFromSolutionError, PermBrace,
};
pub use ideal::{
    all_ideals, ideal_generated, is_simple_brace, proper_principal_ideal, quotient_brace, socle, BraceSubset,
    QuotientBraceError,
};
pub use iso::{find_brace_isomorphism, is_brace_homomorphism};
pub use props::{quotient_identity_witness, difference_identity_witness, lambda_action_witness, sylow_subgroups, PropertyReport};

use thiserror::Error;

use crate::abgroup::{FinAbGroup, GroupAut};
use crate::par::Exec;

pub const DEFAULT_BRACE_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceError {
    #[error("brace must have at least one element")]
    Empty,
    #[error("brace size {size} exceeds the cap {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("{table} table is not {m}x{m}")]
    NotSquare { table: &'static str, m: usize },
    #[error("{got} labels given for {expected} elements")]
    LabelCount { expected: usize, got: usize },
    #[error("{table} table entry out of range at ({a},{b})")]
    OutOfRange { table: &'static str, a: usize, b: usize },
    #[error("{table} has no neutral element")]
    NoIdentity { table: &'static str },
    #[error("{table} is not associative at ({a},{b},{c})")]
    NotAssociative { table: &'static str, a: usize, b: usize, c: usize },
    #[error("{table}: row {a} is not a permutation, so {a} has no inverse")]
    NoInverse { table: &'static str, a: usize },
    #[error("addition is not commutative at ({a},{b})")]
    NotCommutative { a: usize, b: usize },
    #[error("neutral elements differ: zero {zero}, one {one}")]
    NeutralMismatch { zero: usize, one: usize },
    #[error("a∘(b+c)+a = a∘b+a∘c fails at ({a},{b},{c})")]
    BraceLaw { a: usize, b: usize, c: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBrace {
    m: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    lambda: Vec<u32>,
    zero: usize,
    labels: Vec<String>,
}

/// Builds and validates a brace from nested tables.
pub fn make_brace(
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    labels: Vec<String>,
) -> Result<FiniteBrace, BraceError> {
    let m = add.len();
    let flat = |t: &[Vec<usize>], name| -> Result<Vec<u32>, BraceError> {
        if t.len() != m || t.iter().any(|r| r.len() != m) {
            return Err(BraceError::NotSquare { table: name, m });
        }
        Ok(t.iter().flatten().map(|&v| v.min(u32::MAX as usize) as u32).collect())
    };
    let add = flat(&add, "addition")?;
    let mul = flat(&mul, "multiplication")?;
    FiniteBrace::from_tables(m, add, mul, labels, DEFAULT_BRACE_CAP, Exec::default())
}

impl FiniteBrace {
    /// Validates flat row-major tables. Empty `labels` means index labels.
    pub fn from_tables(
        m: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Vec<String>,
        cap: usize,
        exec: Exec,
    ) -> Result<Self, BraceError> {
        if m == 0 {
            return Err(BraceError::Empty);
        }
        if m > cap {
            return Err(BraceError::SizeCapExceeded { size: m, cap });
        }
        for (table, name) in [(&add, "addition"), (&mul, "multiplication")] {
            if table.len() != m * m {
                return Err(BraceError::NotSquare { table: name, m });
            }
            if let Some(k) = table.iter().position(|&v| v as usize >= m) {
                return Err(BraceError::OutOfRange { table: name, a: k / m, b: k % m });
            }
        }
        let labels = if labels.is_empty() {
            (0..m).map(|i| i.to_string()).collect()
        } else if labels.len() != m {
            return Err(BraceError::LabelCount { expected: m, got: labels.len() });
        } else {
            labels
        };
        let zero = check_group(m, &add, "addition", exec)?;
        let one = check_group(m, &mul, "multiplication", exec)?;
        if let Some((a, b)) = (0..m * m)
            .map(|k| (k / m, k % m))
            .find(|&(a, b)| add[a * m + b] != add[b * m + a])
        {
            return Err(BraceError::NotCommutative { a, b });
        }
        if zero != one {
            return Err(BraceError::NeutralMismatch { zero, one });
        }
        let inverse_of = |t: &[u32]| {
            let mut inv = vec![0u32; m];
            for a in 0..m {
                for b in 0..m {
                    if t[a * m + b] as usize == zero {
                        inv[a] = b as u32;
                    }
                }
            }
            inv
        };
        let neg = inverse_of(&add);
        let inv = inverse_of(&mul);
        let law = exec.find_map(m, |a| {
            for b in 0..m {
                let ab = mul[a * m + b] as usize;
                for c in 0..m {
                    let bc = add[b * m + c] as usize;
                    let lhs = add[mul[a * m + bc] as usize * m + a];
                    let rhs = add[ab * m + mul[a * m + c] as usize];
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
            None
        });
        if let Some((a, b, c)) = law {
            return Err(BraceError::BraceLaw { a, b, c });
        }
        let mut lambda = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                lambda[a * m + b] = add[neg[a] as usize * m + mul[a * m + b] as usize];
            }
        }
        Ok(FiniteBrace { m, add, mul, neg, inv, lambda, zero, labels })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.m + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.m + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Inverse in `(B, ∘)`.
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.lambda[a * self.m + b] as usize
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn lambda_row(&self, a: usize) -> &[u32] {
        &self.lambda[a * self.m..(a + 1) * self.m]
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        rows(self.m, &self.add)
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        rows(self.m, &self.mul)
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.mul
    }

    pub fn additive_order(&self, a: usize) -> usize {
        cyclic_order(a, self.zero, |x| self.add(x, a))
    }

    pub fn multiplicative_order(&self, a: usize) -> usize {
        cyclic_order(a, self.zero, |x| self.mul(x, a))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, BraceError> {
        if labels.len() != self.m {
            return Err(BraceError::LabelCount { expected: self.m, got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }
}

fn rows(m: usize, t: &[u32]) -> Vec<Vec<usize>> {
    t.chunks(m).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
}

fn cyclic_order(a: usize, zero: usize, step: impl Fn(usize) -> usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != zero {
        x = step(x);
        k += 1;
    }
    k
}

/// Checks that `t` is a group table and returns its neutral element.
fn check_group(m: usize, t: &[u32], name: &'static str, exec: Exec) -> Result<usize, BraceError> {
    let e = (0..m)
        .find(|&e| (0..m).all(|x| t[e * m + x] as usize == x && t[x * m + e] as usize == x))
        .ok_or(BraceError::NoIdentity { table: name })?;
    for a in 0..m {
        let mut seen = vec![false; m];
        if !t[a * m..(a + 1) * m]
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
        {
            return Err(BraceError::NoInverse { table: name, a });
        }
    }
    let bad = exec.find_map(m, |a| {
        for b in 0..m {
            let ab = t[a * m + b] as usize;
            for c in 0..m {
                if t[ab * m + c] != t[a * m + t[b * m + c] as usize] {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    match bad {
        Some((a, b, c)) => Err(BraceError::NotAssociative { table: name, a, b, c }),
        None => Ok(e),
    }
}

/// `a∘b = a+b` on the group `G`.
pub fn trivial_brace(g: &FinAbGroup) -> FiniteBrace {
    let table = g.add_table();
    let labels = g.elements().map(|a| g.label(a)).collect();
    FiniteBrace::from_tables(g.order(), table.clone(), table, labels, usize::MAX, Exec::default())
        .expect("abelian group table is a trivial brace")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemidirectError {
    #[error("{got} automorphisms given for a group of order {expected}")]
    ActionCount { expected: usize, got: usize },
    #[error("action is not a homomorphism at ({s},{t})")]
    NotHomomorphism { s: usize, t: usize },
    #[error("automorphism {s} acts on the wrong group")]
    WrongGroup { s: usize },
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// `A ⋊ T` of trivial braces: componentwise addition and
/// `(a,s)(a',s') = (a + s·a', s + s')`. Element `(a, s)` has index
/// `a·|T| + s`; `action[s]` is the automorphism of `A` given by `s`.
pub fn semidirect_trivial(
    a: &FinAbGroup,
    t: &FinAbGroup,
    action: &[GroupAut],
) -> Result<FiniteBrace, SemidirectError> {
    if action.len() != t.order() {
        return Err(SemidirectError::ActionCount { expected: t.order(), got: action.len() });
    }
    if let Some(s) = action.iter().position(|u| u.group() != a) {
        return Err(SemidirectError::WrongGroup { s });
    }
    for s in t.elements() {
        for s2 in t.elements() {
            let composed = action[s].compose(&action[s2]);
            if composed.matrix() != action[t.add(s, s2)].matrix() {
                return Err(SemidirectError::NotHomomorphism { s, t: s2 });
            }
        }
    }
    let (na, nt) = (a.order(), t.order());
    let m = na * nt;
    let split = |k: usize| (k / nt, k % nt);
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for k1 in 0..m {
        let (a1, s1) = split(k1);
        for k2 in 0..m {
            let (a2, s2) = split(k2);
            add.push((a.add(a1, a2) * nt + t.add(s1, s2)) as u32);
            mul.push((a.add(a1, action[s1].apply(a2)) * nt + t.add(s1, s2)) as u32);
        }
    }
    let labels = (0..m)
        .map(|k| {
            let (x, s) = split(k);
            format!("({};{})", a.label(x), t.label(s))
        })
        .collect();
    Ok(FiniteBrace::from_tables(m, add, mul, labels, usize::MAX, Exec::default())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::aut_from_matrix;

    #[test]
    fn trivial_braces() {
        for d in ["Z2", "Z3", "Z2xZ2", "Z4"] {
            let g = FinAbGroup::parse(d).unwrap();
            let b = trivial_brace(&g);
            assert_eq!(b.size(), g.order());
            assert!((0..b.size()).all(|a| (0..b.size()).all(|x| b.lambda(a, x) == x)));
        }
    }

    #[test]
    fn rejects_mismatched_neutral_and_bad_law() {
        // Z2 addition with neutral 0, multiplication with neutral 1.
        let e = make_brace(vec![vec![0, 1], vec![1, 0]], vec![vec![1, 0], vec![0, 1]], vec![]).unwrap_err();
        assert_eq!(e, BraceError::NeutralMismatch { zero: 0, one: 1 });
        let e = make_brace(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 0]], vec![]).unwrap_err();
        assert!(matches!(e, BraceError::NoInverse { table: "addition", a: 1 }));
    }

    /// Multiplication Z4 with addition Z2xZ2: decided by the checker, and
    /// compared with a brute-force evaluation of the law.
    #[test]
    fn mixed_tables_decided_by_check() {
        let v = FinAbGroup::parse("Z2xZ2").unwrap();
        let add = v.add_table();
        // Identify Z4 with V via 0->0, 1->(0,1), 2->(1,0), 3->(1,1).
        let to_v = [0usize, 1, 2, 3];
        let mut mul = vec![0u32; 16];
        for i in 0..4 {
            for j in 0..4 {
                mul[to_v[i] * 4 + to_v[j]] = to_v[(i + j) % 4] as u32;
            }
        }
        let law_holds = (0..64).all(|k| {
            let (a, b, c) = (k / 16, k / 4 % 4, k % 4);
            let m = |x: usize, y: usize| mul[x * 4 + y] as usize;
            let s = |x: usize, y: usize| add[x * 4 + y] as usize;
            s(m(a, s(b, c)), a) == s(m(a, b), m(a, c))
        });
        let r = FiniteBrace::from_tables(4, add, mul, vec![], 16, Exec::Sequential);
        assert_eq!(r.is_ok(), law_holds);
    }

    #[test]
    fn semidirect_z3_by_z2() {
        let a = FinAbGroup::cyclic(3).unwrap();
        let t = FinAbGroup::cyclic(2).unwrap();
        let act = vec![GroupAut::identity(&a), aut_from_matrix(&a, &[vec![2]]).unwrap()];
        let b = semidirect_trivial(&a, &t, &act).unwrap();
        assert_eq!(b.size(), 6);
        assert!(!b.is_trivial());
        // λ_{(0,1)} maps (1,0) to (2,0).
        assert_eq!(b.lambda(1, 2), 4);
        let id = vec![GroupAut::identity(&a); 2];
        assert!(semidirect_trivial(&a, &t, &id).unwrap().is_trivial());
        let bad = vec![act[1].clone(), act[1].clone()];
        assert!(matches!(
            semidirect_trivial(&a, &t, &bad),
            Err(SemidirectError::NotHomomorphism { .. })
        ));
    }
}
