//! Finite abelian groups given as products of cyclic factors.
//!
//! Elements are addressed by their index in the lexicographic enumeration of
//! residue tuples (first factor most significant). Every table-based module
//! downstream relies on that fixed bijection.

mod aut;
mod snf;
mod subgroup;

pub use aut::{all_automorphisms, aut_from_matrix, aut_from_matrix_with_cap, aut_order, GroupAut, GroupEndo};
pub use subgroup::{quotient_map, subgroup_generated, Quotient, Subgroup};

use std::fmt;

use thiserror::Error;

/// Largest group order accepted where bijectivity is checked by enumeration.
pub const DEFAULT_ORDER_CAP: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed group descriptor `{0}`")]
    Malformed(String),
    #[error("cyclic factor {0} is below 2")]
    FactorBelowTwo(u32),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("matrix must be {expected}x{expected}, got {rows} rows")]
    DimensionMismatch { expected: usize, rows: usize },
    #[error("matrix entry ({row},{col}) does not give a well-defined map")]
    NotWellDefined { row: usize, col: usize },
    #[error("map is not injective: elements {0} and {1} share an image")]
    NotInjective(String, String),
    #[error("cannot parse element `{0}`")]
    ElementParse(String),
    #[error("cannot parse matrix `{0}`")]
    MatrixParse(String),
}

/// Parses `[[1,0],[0,1]]`. Entry `(i, j)` is coordinate `i` of the image of generator `j`.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, GroupError> {
    serde_json::from_str(text.trim()).map_err(|_| GroupError::MatrixParse(text.to_string()))
}

/// A finite abelian group `Z/n_1 x ... x Z/n_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup({})", self.descriptor())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self, GroupError> {
        if let Some(&bad) = factors.iter().find(|&&n| n < 2) {
            return Err(GroupError::FactorBelowTwo(bad));
        }
        Ok(Self::from_factors_unchecked(factors))
    }

    fn from_factors_unchecked(factors: Vec<u32>) -> Self {
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let order = factors.iter().map(|&n| n as usize).product();
        FinAbGroup {
            factors,
            strides,
            order,
        }
    }

    /// The group of order one (no factors).
    pub fn trivial() -> Self {
        Self::from_factors_unchecked(Vec::new())
    }

    pub fn cyclic(n: u32) -> Result<Self, GroupError> {
        Self::new(vec![n])
    }

    /// `n` copies of `Z/m`.
    pub fn power(m: u32, n: usize) -> Result<Self, GroupError> {
        Self::new(vec![m; n])
    }

    /// Parses descriptors of the form `Zn(xZn)*`, e.g. `Z2xZ2`.
    pub fn parse(descriptor: &str) -> Result<Self, GroupError> {
        let malformed = || GroupError::Malformed(descriptor.to_string());
        let text = descriptor.trim();
        if text.is_empty() {
            return Err(malformed());
        }
        let mut factors = Vec::new();
        for part in text.split('x') {
            let digits = part.strip_prefix('Z').ok_or_else(malformed)?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            factors.push(digits.parse::<u32>().map_err(|_| malformed())?);
        }
        Self::new(factors)
    }

    pub fn descriptor(&self) -> String {
        if self.factors.is_empty() {
            return "Z1".to_string();
        }
        self.factors
            .iter()
            .map(|n| format!("Z{n}"))
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        0
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1u32, |acc, &n| lcm(acc, n))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn residue(&self, a: usize, i: usize) -> u32 {
        ((a / self.strides[i]) % self.factors[i] as usize) as u32
    }

    pub fn residues(&self, a: usize) -> Vec<u32> {
        (0..self.rank()).map(|i| self.residue(a, i)).collect()
    }

    /// Index of the element with the given (unreduced) residues.
    pub fn index_of(&self, residues: &[i64]) -> usize {
        debug_assert_eq!(residues.len(), self.rank());
        residues
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&r, &n), &s)| r.rem_euclid(n as i64) as usize * s)
            .sum()
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.factors[i];
            out += ((self.residue(a, i) + self.residue(b, i)) % n) as usize * self.strides[i];
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.factors[i];
            out += ((n - self.residue(a, i)) % n) as usize * self.strides[i];
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k * a` for any integer `k`.
    pub fn scale(&self, k: i64, a: usize) -> usize {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.factors[i] as i64;
            let r = (k.rem_euclid(n) * self.residue(a, i) as i64) % n;
            out += r as usize * self.strides[i];
        }
        out
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    pub fn element_order(&self, a: usize) -> u32 {
        (0..self.rank()).fold(1u32, |acc, i| {
            let n = self.factors[i];
            let r = self.residue(a, i);
            lcm(acc, n / gcd(n, r))
        })
    }

    /// Dense addition table, row-major.
    pub fn add_table(&self) -> Vec<u32> {
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.add(a, b) as u32);
            }
        }
        table
    }

    /// `3` for cyclic groups, `(1,0)` otherwise.
    pub fn label(&self, a: usize) -> String {
        let r = self.residues(a);
        if r.len() == 1 {
            r[0].to_string()
        } else {
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Parses the text produced by [`FinAbGroup::label`]. Integers are
    /// accepted for cyclic groups; tuples `(r1,...,rk)` for any rank.
    pub fn parse_element(&self, text: &str) -> Result<usize, GroupError> {
        let err = || GroupError::ElementParse(text.to_string());
        let t = text.trim();
        let inner = match t.strip_prefix('(') {
            Some(rest) => rest.strip_suffix(')').ok_or_else(err)?,
            None => t,
        };
        let values: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        };
        if values.len() != self.rank() {
            return Err(err());
        }
        Ok(self.index_of(&values))
    }
}

pub fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// All ordered factor lists (factors at least 2) whose product is `order`.
pub fn factor_shapes(order: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=rest {
            if rest.is_multiple_of(d) {
                prefix.push(d);
                go(rest / d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if order >= 2 {
        go(order, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Every group shape of order `2..=max_order`, smallest order first.
pub fn groups_up_to(max_order: u32) -> Vec<FinAbGroup> {
    (2..=max_order)
        .flat_map(factor_shapes)
        .map(FinAbGroup::from_factors_unchecked)
        .collect()
}
