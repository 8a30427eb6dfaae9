use super::congruence::retract_congruence;
use super::{orbits, Solution};
use crate::search::{cycle_type, find_isomorphism, Structure};

/// Per-point invariants: cycle type of `σ_x`, orbit size, and the size of
/// the retract class of `x`.
fn point_keys(s: &Solution) -> Vec<Vec<u32>> {
    let orb = orbits(s);
    let ret = retract_congruence(s);
    let n = s.size();
    let mut class_size = vec![0u32; ret.block_count()];
    for x in 0..n {
        class_size[ret.label(x)] += 1;
    }
    (0..n)
        .map(|x| {
            let mut key = cycle_type(s.sigma_row(x));
            key.push(u32::MAX);
            key.push(orb.blocks[orb.label[x]].len() as u32);
            key.push(class_size[ret.label(x)]);
            key
        })
        .collect()
}

fn inverse_table(s: &Solution) -> Vec<u32> {
    let n = s.size();
    (0..n * n).map(|k| s.sigma_inv(k / n, k % n) as u32).collect()
}

/// A bijection `f` with `f(σ_x(y)) = σ'_{f(x)}(f(y))`, if one exists.
pub fn find_solution_isomorphism(a: &Solution, b: &Solution) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let (ia, ib) = (inverse_table(a), inverse_table(b));
    let sa = Structure { n: a.size(), ops: vec![a.sigma_table(), &ia], keys: point_keys(a) };
    let sb = Structure { n: b.size(), ops: vec![b.sigma_table(), &ib], keys: point_keys(b) };
    let f = find_isomorphism(&sa, &sb)?;
    debug_assert!(is_solution_homomorphism(a, b, &f));
    Some(f)
}

pub fn is_solution_homomorphism(a: &Solution, b: &Solution, f: &[usize]) -> bool {
    let n = a.size();
    f.len() == n
        && f.iter().all(|&v| v < b.size())
        && (0..n).all(|x| (0..n).all(|y| f[a.sigma(x, y)] == b.sigma(f[x], f[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ybcore::{cyclic_solution, make_solution, trivial_solution};

    #[test]
    fn relabelled_copies() {
        let s = make_solution(
            vec![vec![0, 1, 3, 2], vec![0, 1, 3, 2], vec![1, 0, 2, 3], vec![1, 0, 2, 3]],
            vec![],
        )
        .unwrap();
        // Conjugate by the permutation p = [2, 3, 0, 1].
        let p = [2usize, 3, 0, 1];
        let mut rows = vec![vec![0; 4]; 4];
        for x in 0..4 {
            for y in 0..4 {
                rows[p[x]][p[y]] = p[s.sigma(x, y)];
            }
        }
        let t = make_solution(rows, vec![]).unwrap();
        let f = find_solution_isomorphism(&s, &t).unwrap();
        assert!(is_solution_homomorphism(&s, &t, &f));
        assert!(find_solution_isomorphism(&trivial_solution(3), &cyclic_solution(3)).is_none());
        assert!(find_solution_isomorphism(&trivial_solution(3), &trivial_solution(4)).is_none());
    }
}
