use thiserror::Error;

use crate::abgroup::{FinAbGroup, GroupAut, GroupError};

/// The coefficients `(j_a)` over `A`, with the automorphism `t`, satisfying
/// `j_a = j_{-a}` and `j_{t^s a} - j_0 = t^s(j_a - j_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JFamily {
    group: FinAbGroup,
    t: GroupAut,
    t_order: u64,
    j: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JFamilyError {
    #[error("t acts on {got}, expected {expected}")]
    WrongGroup { expected: String, got: String },
    #[error("no value assigned to element {0}")]
    Missing(String),
    #[error("element {0} assigned twice")]
    Duplicate(String),
    #[error("j_a != j_-a at a = {a}")]
    Symmetry { a: usize },
    #[error("j_(t^s a) - j_0 != t^s(j_a - j_0) at a = {a}, s = {s}")]
    Equivariance { a: usize, s: u64 },
    #[error("cannot parse assignment list: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Validates a total assignment `a ↦ j_a`.
pub fn make_jfamily(
    group: &FinAbGroup,
    t: &GroupAut,
    assignments: &[(usize, usize)],
) -> Result<JFamily, JFamilyError> {
    let mut j = vec![usize::MAX; group.order()];
    for &(a, v) in assignments {
        if a >= j.len() || v >= j.len() {
            return Err(GroupError::ElementParse(format!("{a}->{v}")).into());
        }
        if j[a] != usize::MAX {
            return Err(JFamilyError::Duplicate(group.label(a)));
        }
        j[a] = v;
    }
    if let Some(a) = j.iter().position(|&v| v == usize::MAX) {
        return Err(JFamilyError::Missing(group.label(a)));
    }
    JFamily::from_table(group, t, j)
}

impl JFamily {
    /// `j[a]` is `j_a`.
    pub fn from_table(group: &FinAbGroup, t: &GroupAut, j: Vec<usize>) -> Result<Self, JFamilyError> {
        if t.group() != group {
            return Err(JFamilyError::WrongGroup { expected: group.descriptor(), got: t.group().descriptor() });
        }
        if j.len() != group.order() {
            return Err(JFamilyError::Missing(group.label(j.len().min(group.order() - 1))));
        }
        for a in group.elements() {
            if j[a] != j[group.neg(a)] {
                return Err(JFamilyError::Symmetry { a });
            }
        }
        let t_order = t.order();
        let j0 = j[0];
        for a in group.elements() {
            let k = group.sub(j[a], j0);
            let (mut x, mut tk) = (a, k);
            for s in 1..t_order {
                x = t.apply(x);
                tk = t.apply(tk);
                if group.sub(j[x], j0) != tk {
                    return Err(JFamilyError::Equivariance { a, s });
                }
            }
        }
        Ok(JFamily { group: group.clone(), t: t.clone(), t_order, j })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn t(&self) -> &GroupAut {
        &self.t
    }

    pub fn t_order(&self) -> u64 {
        self.t_order
    }

    pub fn j(&self, a: usize) -> usize {
        self.j[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.j
    }

    /// `a->j_a` pairs in element order, in the syntax accepted by
    /// [`parse_assignments`].
    pub fn assignment_text(&self) -> String {
        let g = &self.group;
        let parts: Vec<String> = g.elements().map(|a| format!("{}->{}", g.label(a), g.label(self.j[a]))).collect();
        parts.join(",")
    }
}

/// Parses `a->b,c->d` where elements are integers or tuples `(r1,...,rk)`.
pub fn parse_assignments(group: &FinAbGroup, text: &str) -> Result<Vec<(usize, usize)>, JFamilyError> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(JFamilyError::Parse(text.to_string()));
        }
    }
    items.push(&text[start..]);
    items
        .into_iter()
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (a, v) = item.split_once("->").ok_or_else(|| JFamilyError::Parse(item.trim().to_string()))?;
            Ok((group.parse_element(a)?, group.parse_element(v)?))
        })
        .collect()
}

/// The valid families for a fixed `(A, t)` in mixed-radix order.
///
/// `j_0` is free. Writing `k_a = j_a - j_0`, the laws say `k_{ta} = t k_a`
/// and `k_{-a} = k_a`, so `k` is fixed on each `⟨t, -1⟩`-orbit of `A \ {0}`
/// by its value on one representative, and that value must survive the
/// walk around the orbit.
#[derive(Clone, Debug)]
pub struct FamilySpace {
    group: FinAbGroup,
    t: GroupAut,
    /// Orbit representatives with their admissible `k` values.
    reps: Vec<(usize, Vec<usize>)>,
    /// `position[i][v]` is the index of `v` among the candidates of rep `i`.
    position: Vec<Vec<u32>>,
    /// For each element `a ≠ 0`: its orbit and the power `s` with
    /// `a = ±t^s r`; element 0 maps to `(usize::MAX, 0)`.
    placement: Vec<(usize, u64)>,
    t_pows: Vec<GroupAut>,
    total: u64,
}

impl FamilySpace {
    pub fn new(group: &FinAbGroup, t: &GroupAut) -> Result<Self, JFamilyError> {
        if t.group() != group {
            return Err(JFamilyError::WrongGroup { expected: group.descriptor(), got: t.group().descriptor() });
        }
        let q = group.order();
        let ord = t.order();
        let t_pows: Vec<GroupAut> = (0..ord).map(|s| t.pow(s as i64)).collect();
        let mut placement = vec![(usize::MAX, 0u64); q];
        let mut reps = Vec::new();
        for r in 1..q {
            if placement[r].0 != usize::MAX {
                continue;
            }
            let orbit_id = reps.len();
            for (s, ts) in t_pows.iter().enumerate() {
                for x in [ts.apply(r), group.neg(ts.apply(r))] {
                    if placement[x].0 == usize::MAX {
                        placement[x] = (orbit_id, s as u64);
                    }
                }
            }
            let cands: Vec<usize> = group
                .elements()
                .filter(|&v| {
                    let mut val = vec![usize::MAX; q];
                    t_pows.iter().all(|ts| {
                        let img = ts.apply(v);
                        [ts.apply(r), group.neg(ts.apply(r))].into_iter().all(|x| {
                            if val[x] == usize::MAX {
                                val[x] = img;
                            }
                            val[x] == img
                        })
                    })
                })
                .collect();
            reps.push((r, cands));
        }
        let position = reps
            .iter()
            .map(|(_, c)| {
                let mut pos = vec![u32::MAX; q];
                for (i, &v) in c.iter().enumerate() {
                    pos[v] = i as u32;
                }
                pos
            })
            .collect();
        let total = reps.iter().fold(q as u64, |acc, (_, c)| acc.saturating_mul(c.len() as u64));
        Ok(FamilySpace { group: group.clone(), t: t.clone(), reps, position, placement, t_pows, total })
    }

    /// Number of valid families.
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn orbit_representatives(&self) -> Vec<usize> {
        self.reps.iter().map(|(r, _)| *r).collect()
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn t(&self) -> &GroupAut {
        &self.t
    }

    /// The table of family number `idx`. Digit 0 is `j_0`, then one digit
    /// per orbit representative.
    pub fn table(&self, idx: u64) -> Vec<usize> {
        let g = &self.group;
        let q = g.order() as u64;
        let j0 = (idx % q) as usize;
        let mut rest = idx / q;
        let ks: Vec<usize> = self
            .reps
            .iter()
            .map(|(_, c)| {
                let d = (rest % c.len() as u64) as usize;
                rest /= c.len() as u64;
                c[d]
            })
            .collect();
        g.elements()
            .map(|a| {
                let (o, s) = self.placement[a];
                if o == usize::MAX {
                    j0
                } else {
                    g.add(j0, self.t_pows[s as usize].apply(ks[o]))
                }
            })
            .collect()
    }

    /// Inverse of [`FamilySpace::table`] on valid tables.
    pub fn index_of(&self, j: &[usize]) -> u64 {
        let g = &self.group;
        let j0 = j[0];
        let mut idx = 0u64;
        for (i, (r, c)) in self.reps.iter().enumerate().rev() {
            let pos = self.position[i][g.sub(j[*r], j0)];
            idx = idx * c.len() as u64 + pos as u64;
        }
        idx * g.order() as u64 + j0 as u64
    }

    pub fn family(&self, idx: u64) -> JFamily {
        JFamily {
            group: self.group.clone(),
            t: self.t.clone(),
            t_order: self.t_pows.len() as u64,
            j: self.table(idx),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = JFamily> + '_ {
        (0..self.total).map(|i| self.family(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{aut_from_matrix, all_automorphisms};

    #[test]
    fn validity_laws() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let id = GroupAut::identity(&z2);
        assert!(make_jfamily(&z2, &id, &[(0, 0), (1, 1)]).is_ok());
        let v = FinAbGroup::parse("Z2xZ2").unwrap();
        let t = aut_from_matrix(&v, &[vec![0, 1], vec![1, 1]]).unwrap();
        let ja: Vec<(usize, usize)> = v.elements().map(|a| (a, a)).collect();
        assert!(make_jfamily(&v, &t, &ja).is_ok());
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let two = aut_from_matrix(&z3, &[vec![2]]).unwrap();
        assert_eq!(
            make_jfamily(&z3, &two, &[(0, 0), (1, 1), (2, 1)]).unwrap_err(),
            JFamilyError::Equivariance { a: 1, s: 1 }
        );
        assert_eq!(make_jfamily(&z3, &two, &[(0, 0), (1, 1)]).unwrap_err(), JFamilyError::Missing("2".into()));
        assert_eq!(
            make_jfamily(&z3, &GroupAut::identity(&z3), &[(0, 0), (1, 1), (2, 2)]).unwrap_err(),
            JFamilyError::Symmetry { a: 1 }
        );
    }

    #[test]
    fn parse_tuples() {
        let v = FinAbGroup::parse("Z2xZ2").unwrap();
        let got = parse_assignments(&v, "(0,0)->(0,0), (1,0)->(1,0),(0,1)->(0,1),(1,1)->(1,1)").unwrap();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|(a, b)| a == b));
        let z2 = FinAbGroup::cyclic(2).unwrap();
        assert_eq!(parse_assignments(&z2, "0->0,1->1").unwrap(), vec![(0, 0), (1, 1)]);
        assert!(parse_assignments(&z2, "0=>1").is_err());
    }

    /// Oracle: filter all `|A|^|A|` tables through the validator.
    fn naive_count(g: &FinAbGroup, t: &GroupAut) -> u64 {
        let q = g.order();
        let mut count = 0;
        let mut table = vec![0usize; q];
        loop {
            if JFamily::from_table(g, t, table.clone()).is_ok() {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == q {
                    return count;
                }
                table[i] += 1;
                if table[i] < q {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for desc in ["Z2", "Z3", "Z4", "Z2xZ2", "Z5"] {
            let g = FinAbGroup::parse(desc).unwrap();
            for t in all_automorphisms(&g) {
                let space = FamilySpace::new(&g, &t).unwrap();
                assert_eq!(space.len(), naive_count(&g, &t), "{desc} {:?}", t.matrix());
                for idx in 0..space.len() {
                    let f = space.family(idx);
                    assert!(JFamily::from_table(&g, &t, f.table().to_vec()).is_ok());
                    assert_eq!(space.index_of(f.table()), idx);
                }
            }
        }
    }

    #[test]
    fn z3_negation_forces_constant() {
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let two = aut_from_matrix(&z3, &[vec![2]]).unwrap();
        let space = FamilySpace::new(&z3, &two).unwrap();
        assert_eq!(space.len(), 3);
        assert!(space.iter().all(|f| f.table().iter().all(|&v| v == f.j(0))));
        let z2 = FinAbGroup::cyclic(2).unwrap();
        assert_eq!(FamilySpace::new(&z2, &GroupAut::identity(&z2)).unwrap().len(), 4);
    }
}
