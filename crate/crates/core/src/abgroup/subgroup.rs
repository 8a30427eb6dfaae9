use super::snf::diagonalize;
use super::FinAbGroup;

/// An additive subgroup, stored as a membership mask over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: FinAbGroup,
    members: Vec<bool>,
    generators: Vec<usize>,
    size: usize,
}

impl Subgroup {
    pub fn trivial(group: &FinAbGroup) -> Self {
        subgroup_generated(group, &[])
    }

    pub fn whole(group: &FinAbGroup) -> Self {
        let gens: Vec<usize> = (0..group.rank()).map(|i| group.generator(i)).collect();
        subgroup_generated(group, &gens)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members[a]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_whole(&self) -> bool {
        self.size == self.group.order()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(a, &m)| m.then_some(a))
    }

    /// `self + other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        subgroup_generated(&self.group, &gens)
    }

    /// Smallest subgroup containing `self` and `extra`.
    pub fn extend(&self, extra: &[usize]) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        subgroup_generated(&self.group, &gens)
    }
}

/// Closure of `gens` under addition, by worklist over the membership mask.
pub fn subgroup_generated(group: &FinAbGroup, gens: &[usize]) -> Subgroup {
    let mut members = vec![false; group.order()];
    let mut generators: Vec<usize> = Vec::new();
    for &g in gens {
        if g != 0 && !generators.contains(&g) {
            generators.push(g);
        }
    }
    members[0] = true;
    let mut queue = vec![0usize];
    let mut size = 1;
    while let Some(x) = queue.pop() {
        for &g in &generators {
            let y = group.add(x, g);
            if !members[y] {
                members[y] = true;
                size += 1;
                queue.push(y);
            }
        }
    }
    Subgroup {
        group: group.clone(),
        members,
        generators,
        size,
    }
}

/// A quotient `G / S` realized as a product of cyclic groups.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinAbGroup,
    /// `projection[a]` is the index of `a + S` in `group`.
    pub projection: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, a: usize) -> usize {
        self.projection[a]
    }

    /// Least element of every coset, indexed by quotient element.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.group.order()];
        for (a, &q) in self.projection.iter().enumerate() {
            if reps[q] == usize::MAX {
                reps[q] = a;
            }
        }
        reps
    }
}

/// The natural map `G -> G/S`.
///
/// The quotient's cyclic factors come from diagonalizing the relation matrix
/// formed by the factor orders and the generators of `S`.
pub fn quotient_map(group: &FinAbGroup, sub: &Subgroup) -> Quotient {
    let k = group.rank();
    let mut relations: Vec<Vec<i128>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { group.factors()[i] as i128 } else { 0 })
                .collect()
        })
        .collect();
    for &s in sub.generators() {
        relations.push(group.residues(s).iter().map(|&r| r as i128).collect());
    }
    let d = diagonalize(relations, k);
    let kept: Vec<usize> = (0..k).filter(|&i| d.diag[i] > 1).collect();
    let factors: Vec<u32> = kept.iter().map(|&i| d.diag[i] as u32).collect();
    let qgroup = FinAbGroup::new(factors).expect("diagonal entries above 1");
    let projection = group
        .elements()
        .map(|a| {
            let r = group.residues(a);
            let coords: Vec<i64> = kept
                .iter()
                .map(|&c| {
                    let m = d.diag[c];
                    let y: i128 = (0..k).map(|i| r[i] as i128 * d.v[i][c]).sum();
                    y.rem_euclid(m) as i64
                })
                .collect();
            qgroup.index_of(&coords)
        })
        .collect();
    Quotient {
        group: qgroup,
        projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        FinAbGroup::parse(s).unwrap()
    }

    fn check_closed(s: &Subgroup) {
        let grp = s.group();
        for a in s.elements() {
            assert!(s.contains(grp.neg(a)));
            for b in s.elements() {
                assert!(s.contains(grp.add(a, b)));
            }
        }
        assert!(s.contains(0));
    }

    #[test]
    fn generated_subgroups() {
        let z6 = g("Z6");
        let s = subgroup_generated(&z6, &[2]);
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![0, 2, 4]);
        check_closed(&s);
        let t = subgroup_generated(&z6, &[]);
        assert_eq!(t.elements().collect::<Vec<_>>(), vec![0]);
        let v = g("Z2xZ2");
        let w = subgroup_generated(&v, &[v.index_of(&[1, 0]), v.index_of(&[0, 1])]);
        assert!(w.is_whole());
        check_closed(&w);
    }

    fn check_quotient(grp: &FinAbGroup, s: &Subgroup, expected_order: usize) {
        let q = quotient_map(grp, s);
        assert_eq!(q.group.order(), expected_order);
        assert_eq!(grp.order(), s.order() * q.group.order());
        let mut hit = vec![false; q.group.order()];
        for a in grp.elements() {
            hit[q.project(a)] = true;
            assert_eq!(q.project(a) == 0, s.contains(a));
            for b in grp.elements() {
                assert_eq!(q.project(grp.add(a, b)), q.group.add(q.project(a), q.project(b)));
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn quotients() {
        let z6 = g("Z6");
        check_quotient(&z6, &subgroup_generated(&z6, &[3]), 3);
        check_quotient(&z6, &Subgroup::trivial(&z6), 6);
        check_quotient(&z6, &Subgroup::whole(&z6), 1);
        let v = g("Z2xZ2");
        check_quotient(&v, &subgroup_generated(&v, &[v.index_of(&[1, 1])]), 2);
        let z = g("Z4xZ6");
        check_quotient(&z, &subgroup_generated(&z, &[z.index_of(&[2, 3])]), 12);
        check_quotient(&z, &subgroup_generated(&z, &[z.index_of(&[1, 2])]), 2);
        let h = FinAbGroup::power(2, 4).unwrap();
        let s = subgroup_generated(&h, &[h.index_of(&[1, 1, 1, 1]), h.index_of(&[0, 1, 1, 0])]);
        check_quotient(&h, &s, 4);
        let q = quotient_map(&v, &Subgroup::trivial(&v));
        assert_eq!(q.projection, vec![0, 1, 2, 3]);
    }
}
