//! Backtracking isomorphism search between finite structures given by binary
//! operation tables.
//!
//! A partial bijection is extended one point at a time; after each choice the
//! images of all products of mapped points are forced, which usually fixes
//! the whole map after a handful of choices. Points only map to points with
//! equal invariant keys.

pub(crate) struct Structure<'a> {
    pub n: usize,
    /// Row-major `n x n` tables.
    pub ops: Vec<&'a [u32]>,
    pub keys: Vec<Vec<u32>>,
}

pub(crate) fn find_isomorphism(a: &Structure<'_>, b: &Structure<'_>) -> Option<Vec<usize>> {
    if a.n != b.n || a.ops.len() != b.ops.len() {
        return None;
    }
    let mut ka = a.keys.clone();
    let mut kb = b.keys.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut st = State {
        f: vec![usize::MAX; a.n],
        g: vec![usize::MAX; a.n],
        mapped: Vec::with_capacity(a.n),
    };
    if search(a, b, &mut st) {
        Some(st.f)
    } else {
        None
    }
}

struct State {
    f: Vec<usize>,
    g: Vec<usize>,
    mapped: Vec<usize>,
}

impl State {
    fn undo_to(&mut self, len: usize) {
        while self.mapped.len() > len {
            let x = self.mapped.pop().unwrap();
            self.g[self.f[x]] = usize::MAX;
            self.f[x] = usize::MAX;
        }
    }
}

fn search(a: &Structure<'_>, b: &Structure<'_>, st: &mut State) -> bool {
    let Some(x) = (0..a.n).find(|&x| st.f[x] == usize::MAX) else {
        return true;
    };
    for y in 0..b.n {
        if st.g[y] != usize::MAX || a.keys[x] != b.keys[y] {
            continue;
        }
        let mark = st.mapped.len();
        if assign(a, b, st, x, y) && search(a, b, st) {
            return true;
        }
        st.undo_to(mark);
    }
    false
}

/// Maps `x ↦ y` and propagates. Returns false on a conflict; the caller
/// undoes the trail.
fn assign(a: &Structure<'_>, b: &Structure<'_>, st: &mut State, x: usize, y: usize) -> bool {
    let n = a.n;
    let mut head = st.mapped.len();
    if !set(a, b, st, x, y) {
        return false;
    }
    while head < st.mapped.len() {
        let p = st.mapped[head];
        head += 1;
        let mut i = 0;
        while i < st.mapped.len() {
            let q = st.mapped[i];
            i += 1;
            let (fp, fq) = (st.f[p], st.f[q]);
            for (ta, tb) in a.ops.iter().zip(&b.ops) {
                for (u, v) in [(p, q), (q, p)] {
                    let (fu, fv) = if u == p { (fp, fq) } else { (fq, fp) };
                    let img = ta[u * n + v] as usize;
                    let want = tb[fu * n + fv] as usize;
                    if !set(a, b, st, img, want) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn set(a: &Structure<'_>, b: &Structure<'_>, st: &mut State, x: usize, y: usize) -> bool {
    if st.f[x] != usize::MAX {
        return st.f[x] == y;
    }
    if st.g[y] != usize::MAX || a.keys[x] != b.keys[y] {
        return false;
    }
    st.f[x] = y;
    st.g[y] = x;
    st.mapped.push(x);
    true
}

/// Sorted cycle lengths of the permutation `row`.
pub(crate) fn cycle_type(row: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; row.len()];
    let mut lens = Vec::new();
    for start in 0..row.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = row[x] as usize;
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_add(n: usize) -> Vec<u32> {
        (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect()
    }

    #[test]
    fn cyclic_groups() {
        let t = cyclic_add(5);
        let keys = vec![vec![]; 5];
        let a = Structure { n: 5, ops: vec![&t], keys: keys.clone() };
        let f = find_isomorphism(&a, &a).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(f[t[x * 5 + y] as usize], t[f[x] * 5 + f[y]] as usize);
            }
        }
        assert_eq!(cycle_type(&[1, 2, 0, 4, 3, 5]), vec![1, 2, 3]);
    }

    #[test]
    fn z4_is_not_klein() {
        let z4 = cyclic_add(4);
        let v: Vec<u32> = (0..16).map(|k| ((k / 4) ^ (k % 4)) as u32).collect();
        let keys = vec![vec![]; 4];
        let a = Structure { n: 4, ops: vec![&z4], keys: keys.clone() };
        let b = Structure { n: 4, ops: vec![&v], keys };
        assert!(find_isomorphism(&a, &b).is_none());
    }
}
