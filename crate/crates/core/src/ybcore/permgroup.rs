use std::collections::HashMap;

use thiserror::Error;

use super::{distinct_rows, Solution};

pub const DEFAULT_PERM_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermGroupError {
    #[error("permutation group exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
}

/// The group `gr(σ_x)` as an explicit list of permutations.
///
/// Element 0 is the identity. Every other element `h` was reached during the
/// breadth-first closure as `h = h' ∘ σ_y`, and `word(h) = (h', y)` records
/// that step.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    perms: Vec<Box<[u32]>>,
    index: HashMap<Box<[u32]>, usize>,
    words: Vec<Option<(usize, usize)>>,
    generators: Vec<usize>,
}

pub fn permutation_group(s: &Solution) -> Result<PermGroup, PermGroupError> {
    permutation_group_with_cap(s, DEFAULT_PERM_CAP)
}

pub fn permutation_group_with_cap(s: &Solution, cap: usize) -> Result<PermGroup, PermGroupError> {
    PermGroup::generate(s, &distinct_rows(s), cap)
}

impl PermGroup {
    /// Closure of `{σ_y : y ∈ gen_points}`, multiplying on the right by the
    /// generators in the given order.
    pub fn generate(s: &Solution, gen_points: &[usize], cap: usize) -> Result<Self, PermGroupError> {
        let n = s.size();
        let identity: Box<[u32]> = (0..n as u32).collect();
        let mut group = PermGroup {
            degree: n,
            perms: vec![identity.clone()],
            index: HashMap::from([(identity, 0)]),
            words: vec![None],
            generators: Vec::new(),
        };
        // Generators that coincide as permutations are recorded once.
        let mut seen_gen = std::collections::HashSet::new();
        let gens: Vec<usize> = gen_points
            .iter()
            .copied()
            .filter(|&y| seen_gen.insert(s.sigma_row(y)))
            .collect();
        let mut head = 0;
        while head < group.perms.len() {
            for &y in &gens {
                let h: Box<[u32]> = {
                    let base = &group.perms[head];
                    (0..n).map(|x| base[s.sigma(y, x)]).collect()
                };
                if !group.index.contains_key(&h) {
                    if group.perms.len() >= cap {
                        return Err(PermGroupError::CapExceeded { cap });
                    }
                    group.index.insert(h.clone(), group.perms.len());
                    group.perms.push(h);
                    group.words.push(Some((head, y)));
                }
            }
            head += 1;
        }
        group.generators = gens
            .iter()
            .map(|&y| group.index[s.sigma_row(y)])
            .collect();
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, g: usize) -> &[u32] {
        &self.perms[g]
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x] as usize
    }

    pub fn index_of(&self, perm: &[u32]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// Element indices of the distinct generators `σ_y`.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `(h', y)` with `h = h' ∘ σ_y`, or `None` for the identity.
    pub fn word(&self, h: usize) -> Option<(usize, usize)> {
        self.words[h]
    }

    /// Index of `g ∘ h` (apply `h` first).
    pub fn compose(&self, g: usize, h: usize) -> usize {
        let (pg, ph) = (&self.perms[g], &self.perms[h]);
        let prod: Vec<u32> = ph.iter().map(|&x| pg[x as usize]).collect();
        self.index[prod.as_slice()]
    }

    pub fn inverse(&self, g: usize) -> usize {
        let p = &self.perms[g];
        let mut inv = vec![0u32; p.len()];
        for (x, &v) in p.iter().enumerate() {
            inv[v as usize] = x as u32;
        }
        self.index[inv.as_slice()]
    }

    /// Multiplication table, `table[g * order + h] = g ∘ h`.
    pub fn mul_table(&self) -> Vec<u32> {
        let m = self.order();
        let mut table = Vec::with_capacity(m * m);
        for g in 0..m {
            for h in 0..m {
                table.push(self.compose(g, h) as u32);
            }
        }
        table
    }
}
