use super::{FinAbGroup, GroupError, DEFAULT_ORDER_CAP};

/// An endomorphism of a finite abelian group stored as a residue matrix.
///
/// Column `j` holds the image of the `j`-th canonical generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupEndo {
    group: FinAbGroup,
    matrix: Vec<Vec<u32>>,
}

impl GroupEndo {
    /// Checks `n_i | m[i][j] * n_j` for every entry and reduces row `i` mod `n_i`.
    pub fn from_matrix(group: &FinAbGroup, matrix: &[Vec<i64>]) -> Result<Self, GroupError> {
        let k = group.rank();
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(GroupError::DimensionMismatch {
                expected: k,
                rows: matrix.len(),
            });
        }
        let f = group.factors();
        let mut reduced = vec![vec![0u32; k]; k];
        for i in 0..k {
            for j in 0..k {
                let m = matrix[i][j];
                if (m as i128 * f[j] as i128).rem_euclid(f[i] as i128) != 0 {
                    return Err(GroupError::NotWellDefined { row: i, col: j });
                }
                reduced[i][j] = m.rem_euclid(f[i] as i64) as u32;
            }
        }
        Ok(GroupEndo {
            group: group.clone(),
            matrix: reduced,
        })
    }

    /// Builds the endomorphism from its action on generators; `images[j]` is
    /// the image of generator `j`. Only valid for maps already known to be
    /// homomorphisms.
    fn from_generator_images(group: &FinAbGroup, images: &[usize]) -> Self {
        let k = group.rank();
        let mut matrix = vec![vec![0u32; k]; k];
        for (j, &img) in images.iter().enumerate() {
            for (i, row) in matrix.iter_mut().enumerate() {
                row[j] = group.residue(img, i);
            }
        }
        GroupEndo {
            group: group.clone(),
            matrix,
        }
    }

    pub fn identity(group: &FinAbGroup) -> Self {
        let gens: Vec<usize> = (0..group.rank()).map(|j| group.generator(j)).collect();
        Self::from_generator_images(group, &gens)
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        Self::from_generator_images(group, &vec![0; group.rank()])
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    /// Row-major integer rows, as serialized on the command line.
    pub fn matrix_i64(&self) -> Vec<Vec<i64>> {
        self.matrix
            .iter()
            .map(|row| row.iter().map(|&x| x as i64).collect())
            .collect()
    }

    pub fn apply(&self, a: usize) -> usize {
        let g = &self.group;
        let r = g.residues(a);
        let k = g.rank();
        let mut out = vec![0i64; k];
        for (i, slot) in out.iter_mut().enumerate() {
            let n = g.factors()[i] as i64;
            let mut acc = 0i64;
            for j in 0..k {
                acc = (acc + self.matrix[i][j] as i64 * r[j] as i64) % n;
            }
            *slot = acc;
        }
        g.index_of(&out)
    }

    fn generator_images(&self, f: impl Fn(usize) -> usize) -> Vec<usize> {
        (0..self.group.rank())
            .map(|j| f(self.group.generator(j)))
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupEndo) -> GroupEndo {
        let imgs = self.generator_images(|e| self.apply(other.apply(e)));
        Self::from_generator_images(&self.group, &imgs)
    }

    pub fn add(&self, other: &GroupEndo) -> GroupEndo {
        let imgs = self.generator_images(|e| self.group.add(self.apply(e), other.apply(e)));
        Self::from_generator_images(&self.group, &imgs)
    }

    pub fn sub(&self, other: &GroupEndo) -> GroupEndo {
        let imgs = self.generator_images(|e| self.group.sub(self.apply(e), other.apply(e)));
        Self::from_generator_images(&self.group, &imgs)
    }

    pub fn images(&self) -> Vec<usize> {
        self.group.elements().map(|a| self.apply(a)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.group.elements().all(|a| self.apply(a) == a)
    }
}

/// An automorphism: a bijective [`GroupEndo`] with cached image tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAut {
    endo: GroupEndo,
    images: Vec<u32>,
    preimages: Vec<u32>,
}

impl GroupAut {
    pub fn from_endo(endo: GroupEndo) -> Result<Self, GroupError> {
        Self::from_endo_with_cap(endo, DEFAULT_ORDER_CAP)
    }

    pub fn from_endo_with_cap(endo: GroupEndo, cap: usize) -> Result<Self, GroupError> {
        let g = endo.group.clone();
        if g.order() > cap {
            return Err(GroupError::OrderCapExceeded {
                order: g.order(),
                cap,
            });
        }
        let images: Vec<u32> = g.elements().map(|a| endo.apply(a) as u32).collect();
        let mut preimages = vec![u32::MAX; g.order()];
        for (a, &img) in images.iter().enumerate() {
            let slot = &mut preimages[img as usize];
            if *slot != u32::MAX {
                return Err(GroupError::NotInjective(
                    g.label(*slot as usize),
                    g.label(a),
                ));
            }
            *slot = a as u32;
        }
        Ok(GroupAut {
            endo,
            images,
            preimages,
        })
    }

    pub fn identity(group: &FinAbGroup) -> Self {
        Self::from_endo_with_cap(GroupEndo::identity(group), usize::MAX)
            .expect("identity is bijective")
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.endo.group
    }

    pub fn endo(&self) -> &GroupEndo {
        &self.endo
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.endo.matrix
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a] as usize
    }

    pub fn apply_inv(&self, a: usize) -> usize {
        self.preimages[a] as usize
    }

    pub fn inverse(&self) -> GroupAut {
        let g = self.group();
        let imgs: Vec<usize> = (0..g.rank())
            .map(|j| self.apply_inv(g.generator(j)))
            .collect();
        GroupAut {
            endo: GroupEndo::from_generator_images(g, &imgs),
            images: self.preimages.clone(),
            preimages: self.images.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAut) -> GroupAut {
        let images: Vec<u32> = other.images.iter().map(|&b| self.images[b as usize]).collect();
        let mut preimages = vec![0u32; images.len()];
        for (a, &img) in images.iter().enumerate() {
            preimages[img as usize] = a as u32;
        }
        GroupAut {
            endo: self.endo.compose(&other.endo),
            images,
            preimages,
        }
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> GroupAut {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupAut::identity(self.group());
        let mut sq = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(a, &b)| a == b as usize)
    }

    /// `self - id` as an endomorphism.
    pub fn minus_identity(&self) -> GroupEndo {
        self.endo.sub(&GroupEndo::identity(self.group()))
    }

    pub fn order(&self) -> u64 {
        let mut cur = self.clone();
        let mut s = 1u64;
        while !cur.is_identity() {
            cur = cur.compose(self);
            s += 1;
        }
        s
    }
}

pub fn aut_from_matrix(group: &FinAbGroup, matrix: &[Vec<i64>]) -> Result<GroupAut, GroupError> {
    aut_from_matrix_with_cap(group, matrix, DEFAULT_ORDER_CAP)
}

pub fn aut_from_matrix_with_cap(
    group: &FinAbGroup,
    matrix: &[Vec<i64>],
    cap: usize,
) -> Result<GroupAut, GroupError> {
    GroupAut::from_endo_with_cap(GroupEndo::from_matrix(group, matrix)?, cap)
}

/// Least `s >= 1` with `t^s = id`.
pub fn aut_order(t: &GroupAut) -> u64 {
    t.order()
}

/// Every automorphism of `group`, in lexicographic order of their matrices.
pub fn all_automorphisms(group: &FinAbGroup) -> Vec<GroupAut> {
    let k = group.rank();
    let f = group.factors();
    // Admissible entries per cell, from the well-definedness condition.
    let cells: Vec<Vec<i64>> = (0..k * k)
        .map(|c| {
            let (i, j) = (c / k, c % k);
            (0..f[i] as i64)
                .filter(|m| (m * f[j] as i64) % f[i] as i64 == 0)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; k * k];
    loop {
        let matrix: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| cells[i * k + j][choice[i * k + j]]).collect())
            .collect();
        if let Ok(t) = aut_from_matrix_with_cap(group, &matrix, usize::MAX) {
            out.push(t);
        }
        let mut pos = k * k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < cells[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        FinAbGroup::parse(s).unwrap()
    }

    #[test]
    fn units_of_cyclic_groups() {
        let z3 = g("Z3");
        let t = aut_from_matrix(&z3, &[vec![2]]).unwrap();
        assert_eq!(t.apply(1), 2);
        assert_eq!(aut_order(&t), 2);
        assert!(matches!(
            aut_from_matrix(&g("Z4"), &[vec![2]]),
            Err(GroupError::NotInjective(_, _))
        ));
        assert_eq!(aut_order(&GroupAut::identity(&g("Z6"))), 1);
    }

    #[test]
    fn order_three_on_klein_group() {
        let v = g("Z2xZ2");
        let t = aut_from_matrix(&v, &[vec![0, 1], vec![1, 1]]).unwrap();
        // Independent route: iterate the integer matrix mod 2.
        let m = [[0i64, 1], [1, 1]];
        let mut p = [[1i64, 0], [0, 1]];
        let mut s = 0;
        loop {
            let mut q = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    q[i][j] = (0..2).map(|l| p[i][l] * m[l][j]).sum::<i64>() % 2;
                }
            }
            p = q;
            s += 1;
            if p == [[1, 0], [0, 1]] {
                break;
            }
        }
        assert_eq!(s, 3);
        assert_eq!(aut_order(&t), 3);
        let tmi = GroupAut::from_endo(t.minus_identity()).unwrap();
        assert_eq!(tmi.apply(0), 0);
    }

    #[test]
    fn well_definedness_is_enforced() {
        let z = g("Z2xZ4");
        // Image of the order-2 generator must have order dividing 2.
        assert_eq!(
            GroupEndo::from_matrix(&z, &[vec![1, 0], vec![1, 1]]),
            Err(GroupError::NotWellDefined { row: 1, col: 0 })
        );
        assert!(GroupEndo::from_matrix(&z, &[vec![1, 0], vec![2, 1]]).is_ok());
        assert!(matches!(
            GroupEndo::from_matrix(&z, &[vec![1, 0]]),
            Err(GroupError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn powers_inverses_and_enumeration() {
        let v = g("Z2xZ2");
        let auts = all_automorphisms(&v);
        assert_eq!(auts.len(), 6);
        assert_eq!(all_automorphisms(&g("Z8")).len(), 4);
        assert_eq!(all_automorphisms(&g("Z2xZ4")).len(), 8);
        assert_eq!(all_automorphisms(&g("Z3xZ3")).len(), 48);
        for t in &auts {
            let inv = t.inverse();
            assert!(t.compose(&inv).is_identity());
            assert_eq!(t.pow(-1), inv);
            assert!(t.pow(t.order() as i64).is_identity());
            for x in v.elements() {
                assert_eq!(inv.endo().apply(t.apply(x)), x);
                for y in v.elements() {
                    assert_eq!(t.apply(v.add(x, y)), v.add(t.apply(x), t.apply(y)));
                }
            }
        }
        let roundtrip = aut_from_matrix(&v, &auts[3].endo().matrix_i64()).unwrap();
        assert_eq!(roundtrip, auts[3]);
    }
}
