use std::collections::HashSet;

use super::{BraceError, FiniteBrace};
use crate::par::Exec;

/// A subset of a brace with its classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceSubset {
    members: Vec<bool>,
    size: usize,
    pub is_subgroup: bool,
    pub is_left_ideal: bool,
    pub is_ideal: bool,
}

impl BraceSubset {
    pub fn classify(b: &FiniteBrace, members: Vec<bool>) -> Self {
        let elems: Vec<usize> = (0..b.size()).filter(|&x| members[x]).collect();
        let size = elems.len();
        let is_subgroup = members[b.zero()]
            && elems.iter().all(|&x| elems.iter().all(|&y| members[b.add(x, y)]));
        let is_left_ideal =
            is_subgroup && (0..b.size()).all(|a| elems.iter().all(|&x| members[b.lambda(a, x)]));
        let is_ideal = is_left_ideal
            && (0..b.size()).all(|a| {
                let ai = b.inv(a);
                elems.iter().all(|&x| members[b.mul(b.mul(a, x), ai)])
            });
        BraceSubset { members, size, is_subgroup, is_left_ideal, is_ideal }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&x| self.members[x]).collect()
    }
}

/// `{a : a∘b = a+b for all b}`.
pub fn socle(b: &FiniteBrace) -> BraceSubset {
    let m = b.size();
    let members = (0..m).map(|a| (0..m).all(|x| b.mul(a, x) == b.add(a, x))).collect();
    BraceSubset::classify(b, members)
}

/// Grows `members` to the smallest ideal containing it. Every new element `x`
/// contributes `x + y` for members `y`, `λ_c(x)` and `c∘x∘c⁻¹` for all `c`.
fn close_ideal(b: &FiniteBrace, members: &mut [bool], mut queue: Vec<usize>) -> usize {
    let m = b.size();
    let mut list: Vec<usize> = (0..m).filter(|&x| members[x]).collect();
    let push = |v: usize, members: &mut [bool], list: &mut Vec<usize>, queue: &mut Vec<usize>| {
        if !members[v] {
            members[v] = true;
            list.push(v);
            queue.push(v);
        }
    };
    while let Some(x) = queue.pop() {
        if list.len() == m {
            break;
        }
        let mut i = 0;
        while i < list.len() {
            let v = b.add(x, list[i]);
            push(v, members, &mut list, &mut queue);
            i += 1;
        }
        for c in 0..m {
            push(b.lambda(c, x), members, &mut list, &mut queue);
            let conj = b.mul(b.mul(c, x), b.inv(c));
            push(conj, members, &mut list, &mut queue);
        }
    }
    list.len()
}

/// Smallest ideal containing `a`.
pub fn ideal_generated(b: &FiniteBrace, a: usize) -> BraceSubset {
    let mut members = vec![false; b.size()];
    members[b.zero()] = true;
    members[a] = true;
    close_ideal(b, &mut members, vec![a]);
    BraceSubset::classify(b, members)
}

fn principal_size(b: &FiniteBrace, a: usize) -> usize {
    let mut members = vec![false; b.size()];
    members[b.zero()] = true;
    members[a] = true;
    close_ideal(b, &mut members, vec![a])
}

/// A nonzero element whose principal ideal is proper, if any.
pub fn proper_principal_ideal(b: &FiniteBrace, exec: Exec) -> Option<BraceSubset> {
    let m = b.size();
    let z = b.zero();
    exec.find_map(m, |a| (a != z && principal_size(b, a) < m).then_some(a))
        .map(|a| ideal_generated(b, a))
}

/// `{0}` and `B` are the only ideals. One-element braces are not simple.
pub fn is_simple_brace(b: &FiniteBrace) -> bool {
    b.size() > 1 && proper_principal_ideal(b, Exec::default()).is_none()
}

/// Every ideal, as joins of principal ideals, up to `limit` ideals.
/// Returns `None` when the limit is exceeded.
pub fn all_ideals(b: &FiniteBrace, limit: usize) -> Option<Vec<BraceSubset>> {
    let m = b.size();
    let mut principal: Vec<Vec<bool>> = Vec::new();
    let mut seen_p = HashSet::new();
    for a in 0..m {
        let p = ideal_generated(b, a).members;
        if seen_p.insert(p.clone()) {
            principal.push(p);
        }
    }
    let mut found: Vec<Vec<bool>> = vec![{
        let mut z = vec![false; m];
        z[b.zero()] = true;
        z
    }];
    let mut seen: HashSet<Vec<bool>> = found.iter().cloned().collect();
    let mut head = 0;
    while head < found.len() {
        let cur = found[head].clone();
        head += 1;
        for p in &principal {
            if (0..m).all(|x| !p[x] || cur[x]) {
                continue;
            }
            let mut members = cur.clone();
            let queue: Vec<usize> = (0..m).filter(|&x| p[x] && !cur[x]).collect();
            for &x in &queue {
                members[x] = true;
            }
            // Reseed with every member so sums with old elements are formed.
            close_ideal(b, &mut members, (0..m).filter(|&x| p[x] || cur[x]).collect());
            if seen.insert(members.clone()) {
                if found.len() >= limit {
                    return None;
                }
                found.push(members);
            }
        }
    }
    Some(found.into_iter().map(|mem| BraceSubset::classify(b, mem)).collect())
}

/// `B/I` on additive cosets, with the projection. Cosets are numbered by
/// least element.
pub fn quotient_brace(b: &FiniteBrace, ideal: &BraceSubset) -> Result<(FiniteBrace, Vec<usize>), QuotientBraceError> {
    if !ideal.is_ideal {
        return Err(QuotientBraceError::NotIdeal);
    }
    let m = b.size();
    let mut proj = vec![usize::MAX; m];
    let mut reps = Vec::new();
    let elems = ideal.elements();
    for a in 0..m {
        if proj[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for &x in &elems {
            proj[b.add(a, x)] = id;
        }
    }
    let q = reps.len();
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &x in &reps {
        for &y in &reps {
            add.push(proj[b.add(x, y)] as u32);
            mul.push(proj[b.mul(x, y)] as u32);
        }
    }
    for x in 0..m {
        for y in 0..m {
            if proj[b.add(x, y)] as u32 != add[proj[x] * q + proj[y]]
                || proj[b.mul(x, y)] as u32 != mul[proj[x] * q + proj[y]]
            {
                return Err(QuotientBraceError::NotIdeal);
            }
        }
    }
    let labels = reps.iter().map(|&a| format!("[{}]", b.labels()[a])).collect();
    let qb = FiniteBrace::from_tables(q, add, mul, labels, usize::MAX, Exec::default())?;
    Ok((qb, proj))
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum QuotientBraceError {
    #[error("subset is not an ideal")]
    NotIdeal,
    #[error(transparent)]
    Brace(#[from] BraceError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{aut_from_matrix, FinAbGroup, GroupAut};
    use crate::brace::{semidirect_trivial, trivial_brace};

    #[test]
    fn trivial_z4() {
        let b = trivial_brace(&FinAbGroup::cyclic(4).unwrap());
        assert_eq!(ideal_generated(&b, 0).elements(), vec![0]);
        assert_eq!(ideal_generated(&b, 2).elements(), vec![0, 2]);
        assert_eq!(socle(&b).size(), 4);
        assert!(!is_simple_brace(&b));
        let (q, proj) = quotient_brace(&b, &ideal_generated(&b, 2)).unwrap();
        assert_eq!(q.size(), 2);
        assert!(q.is_trivial());
        assert_eq!(proj, vec![0, 1, 0, 1]);
        assert_eq!(all_ideals(&b, 100).unwrap().len(), 3);
        let (same, _) = quotient_brace(&b, &ideal_generated(&b, 0)).unwrap();
        assert_eq!(same.add_table(), b.add_table());
        let (one, _) = quotient_brace(&b, &ideal_generated(&b, 1)).unwrap();
        assert_eq!(one.size(), 1);
    }

    #[test]
    fn prime_order_is_simple() {
        let b = trivial_brace(&FinAbGroup::cyclic(5).unwrap());
        assert!(is_simple_brace(&b));
        assert_eq!(all_ideals(&b, 10).unwrap().len(), 2);
    }

    #[test]
    fn semidirect_socle() {
        let a = FinAbGroup::cyclic(3).unwrap();
        let t = FinAbGroup::cyclic(2).unwrap();
        let act = vec![GroupAut::identity(&a), aut_from_matrix(&a, &[vec![2]]).unwrap()];
        let b = semidirect_trivial(&a, &t, &act).unwrap();
        let soc = socle(&b);
        assert!(soc.is_ideal);
        // Elements (a, 0) act trivially.
        assert_eq!(soc.elements(), vec![0, 2, 4]);
        let ideals = all_ideals(&b, 100).unwrap();
        assert!(ideals.iter().all(|i| i.is_ideal));
        let not_ideal = BraceSubset::classify(&b, (0..6).map(|k| k == 0 || k == 1).collect());
        assert!(not_ideal.is_subgroup);
        assert_eq!(quotient_brace(&b, &not_ideal).unwrap_err(), QuotientBraceError::NotIdeal);
    }
}
