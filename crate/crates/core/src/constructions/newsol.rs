use std::collections::HashSet;

use thiserror::Error;

use super::JFamily;
use crate::abgroup::{quotient_map, subgroup_generated, FinAbGroup, Subgroup};
use crate::par::Exec;
use crate::ybcore::{
    is_simple_solution_with, make_solution_trusting_braid, make_solution_with, orbits, retract_congruence,
    Congruence, SimplicityMethod, Solution, SolutionError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewsolError {
    #[error("table fails validation: {0}")]
    Solution(#[from] SolutionError),
    #[error("inverse formula disagrees with the table at row {x}, point {y}")]
    InverseMismatch { x: usize, y: usize },
}

/// `(c1, c2)` has index `c1·|A| + c2`.
pub fn pair_index(group: &FinAbGroup, c1: usize, c2: usize) -> usize {
    c1 * group.order() + c2
}

pub fn pair_labels(group: &FinAbGroup) -> Vec<String> {
    let q = group.order();
    (0..q * q).map(|p| format!("({};{})", group.label(p / q), group.label(p % q))).collect()
}

/// `σ_{(a1,a2)}(c1,c2) = (t c1 + a2, t(c2 - j_{t c1 + a2 - a1}))`.
pub fn newsol_rows(fam: &JFamily) -> Vec<Vec<usize>> {
    let g = fam.group();
    let t = fam.t();
    let q = g.order();
    (0..q * q)
        .map(|x| {
            let (a1, a2) = (x / q, x % q);
            (0..q * q)
                .map(|y| {
                    let (c1, c2) = (y / q, y % q);
                    let first = g.add(t.apply(c1), a2);
                    let second = t.apply(g.sub(c2, fam.j(g.sub(first, a1))));
                    first * q + second
                })
                .collect()
        })
        .collect()
}

/// `σ⁻¹_{(a1,a2)}(c1,c2) = (t⁻¹(c1 - a2), t⁻¹(c2) + j_{c1 - a1})`.
fn inverse_rows_agree(fam: &JFamily, s: &Solution) -> Result<(), NewsolError> {
    let g = fam.group();
    let t = fam.t();
    let q = g.order();
    for x in 0..q * q {
        let (a1, a2) = (x / q, x % q);
        for y in 0..q * q {
            let (c1, c2) = (y / q, y % q);
            let inv = t.apply_inv(g.sub(c1, a2)) * q + g.add(t.apply_inv(c2), fam.j(g.sub(c1, a1)));
            if s.sigma_inv(x, y) != inv {
                return Err(NewsolError::InverseMismatch { x, y });
            }
        }
    }
    Ok(())
}

/// The solution on `A²`, fully validated including the braid relation.
pub fn construct_newsol(fam: &JFamily) -> Result<Solution, NewsolError> {
    construct_newsol_with(fam, Exec::default())
}

pub fn construct_newsol_with(fam: &JFamily, exec: Exec) -> Result<Solution, NewsolError> {
    let s = make_solution_with(newsol_rows(fam), pair_labels(fam.group()), exec)?;
    inverse_rows_agree(fam, &s)?;
    Ok(s)
}

/// Skips the braid check; bijectivity, involutivity and the inverse formula
/// are still checked.
pub fn construct_newsol_trusted(fam: &JFamily) -> Result<Solution, NewsolError> {
    let s = make_solution_trusting_braid(newsol_rows(fam), pair_labels(fam.group()))?;
    inverse_rows_agree(fam, &s)?;
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct NewsolReport {
    pub size: usize,
    /// `⟨j_a - j_c⟩`.
    pub w: Subgroup,
    /// Second coordinates of the orbit of `(0,0)`, as predicted.
    pub c: Vec<usize>,
    pub predicted_orbit: Vec<usize>,
    pub bfs_orbit: Vec<usize>,
    pub indecomposable: bool,
    /// From the `j_{a+c} ≠ j_c` criterion.
    pub irretractable: bool,
    pub retract_size: usize,
    /// `v[a]` is the limit of the chain `V_{a,i}`; `v[0]` is trivial.
    pub v: Vec<Subgroup>,
    pub t_order: u64,
    /// `V_a = A` for every `a ≠ 0`.
    pub necessary_ok: bool,
    /// `necessary_ok` and `|A|` odd or `t` of odd order.
    pub sufficient_ok: bool,
    pub brute_simple: bool,
    pub witness: Option<Congruence>,
}

impl NewsolReport {
    pub fn orbit_matches(&self) -> bool {
        self.predicted_orbit == self.bfs_orbit
    }

    pub fn retract_matches(&self) -> bool {
        self.irretractable == (self.retract_size == self.size)
    }

    /// Simple although some `V_a` is proper.
    pub fn necessary_violated(&self) -> bool {
        self.brute_simple && !self.necessary_ok
    }

    /// Hypotheses of the sufficient condition hold but not simple.
    pub fn sufficient_violated(&self) -> bool {
        self.sufficient_ok && !self.brute_simple
    }

    /// Line-oriented `key: value` text.
    pub fn to_text(&self, group: &FinAbGroup) -> String {
        let set = |it: &mut dyn Iterator<Item = usize>| {
            let v: Vec<String> = it.map(|a| group.label(a)).collect();
            format!("{{{}}}", v.join(", "))
        };
        let mut out = String::new();
        out.push_str(&format!("W: {}\n", set(&mut self.w.elements())));
        out.push_str(&format!("C: {}\n", set(&mut self.c.iter().copied())));
        out.push_str(&format!("orbit_size: {}\n", self.bfs_orbit.len()));
        out.push_str(&format!("orbit_matches_prediction: {}\n", self.orbit_matches()));
        out.push_str(&format!("irretractable_criterion: {}\n", self.irretractable));
        out.push_str(&format!("retract_size: {}\n", self.retract_size));
        for a in 1..self.v.len() {
            out.push_str(&format!("V[{}]: order {}\n", group.label(a), self.v[a].order()));
        }
        out.push_str(&format!("t_order: {}\n", self.t_order));
        out.push_str(&format!("necessary_ok: {}\n", self.necessary_ok));
        out.push_str(&format!("sufficient_ok: {}\n", self.sufficient_ok));
        out.push_str(&format!("brute_simple: {}\n", self.brute_simple));
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub method: SimplicityMethod,
    pub exec: Exec,
}

/// `⟨j_a - j_0⟩`, which equals `⟨j_a - j_c⟩`.
pub fn w_subgroup(fam: &JFamily) -> Subgroup {
    let g = fam.group();
    let gens: Vec<usize> = g.elements().map(|a| g.sub(fam.j(a), fam.j(0))).collect();
    subgroup_generated(g, &gens)
}

/// `W + {Σ_{k=0}^{n} t^{-k} j_0} ∪ W + {-Σ_{k=1}^{n} t^k j_0}`, `n ≥ 0`.
///
/// Each partial-sum sequence is driven by the state `(n mod ord t, sum)`, so
/// it is periodic from the first repeated state on.
pub fn orbit_coordinate_set(fam: &JFamily, w: &Subgroup) -> Vec<usize> {
    let g = fam.group();
    let t = fam.t();
    let ord = fam.t_order() as usize;
    let j0 = fam.j(0);
    let mut partial = HashSet::new();
    let forward: Vec<usize> = (0..ord).map(|k| t.pow(-(k as i64)).apply(j0)).collect();
    let backward: Vec<usize> = (0..ord).map(|k| g.neg(t.pow(k as i64).apply(j0))).collect();
    // Forward sums start at n = 0 with j_0; backward sums with the empty sum.
    for (steps, start) in [(&forward, (0usize, j0)), (&backward, (0usize, 0usize))] {
        let mut seen = HashSet::new();
        let mut state = start;
        while seen.insert(state) {
            partial.insert(state.1);
            let r = (state.0 + 1) % ord;
            state = (r, g.add(state.1, steps[r]));
        }
    }
    let mut c: Vec<usize> = partial.into_iter().flat_map(|p| w.elements().map(move |x| g.add(p, x))).collect();
    c.sort_unstable();
    c.dedup();
    c
}

/// `V_{a,1} = ⟨j_c - j_{c + t^z a}⟩`, then `V_{a,i+1} = V_{a,i} + ⟨j_c - j_{c+v} : v ∈ V_{a,i}⟩`
/// until it stabilizes.
pub fn v_chain(fam: &JFamily, a: usize) -> Vec<Subgroup> {
    let g = fam.group();
    let t = fam.t();
    let mut gens = Vec::new();
    let mut ta = a;
    for _ in 0..fam.t_order() {
        for c in g.elements() {
            gens.push(g.sub(fam.j(c), fam.j(g.add(c, ta))));
        }
        ta = t.apply(ta);
    }
    let mut chain = vec![subgroup_generated(g, &gens)];
    loop {
        let cur = chain.last().expect("nonempty");
        let extra: Vec<usize> = cur
            .elements()
            .flat_map(|v| g.elements().map(move |c| (v, c)))
            .map(|(v, c)| g.sub(fam.j(c), fam.j(g.add(c, v))))
            .collect();
        let next = cur.extend(&extra);
        if next.order() == cur.order() {
            return chain;
        }
        chain.push(next);
    }
}

/// Partitions of `A²` by cosets of `V` in both coordinates and in the
/// second coordinate only.
pub fn coset_partitions(group: &FinAbGroup, v: &Subgroup) -> [Congruence; 2] {
    let q = group.order();
    let proj = quotient_map(group, v).projection;
    let m = q.max(1);
    let both: Vec<usize> = (0..q * q).map(|p| proj[p / q] * m + proj[p % q]).collect();
    let second: Vec<usize> = (0..q * q).map(|p| (p / q) * m + proj[p % q]).collect();
    [Congruence::from_labels(&both), Congruence::from_labels(&second)]
}

pub fn analyze_newsol(fam: &JFamily, s: &Solution) -> NewsolReport {
    analyze_newsol_with(fam, s, AnalyzeOptions::default())
}

/// `s` must be the table of `construct_newsol(fam)`.
pub fn analyze_newsol_with(fam: &JFamily, s: &Solution, opts: AnalyzeOptions) -> NewsolReport {
    let g = fam.group();
    let q = g.order();
    let w = w_subgroup(fam);
    let c = orbit_coordinate_set(fam, &w);
    let mut predicted_orbit: Vec<usize> = (0..q).flat_map(|a| c.iter().map(move |&x| a * q + x)).collect();
    predicted_orbit.sort_unstable();
    let orb = orbits(s);
    let bfs_orbit = orb.blocks[orb.label[0]].clone();
    let irretractable = (1..q).all(|a| g.elements().any(|x| fam.j(g.add(a, x)) != fam.j(x)));
    let retract_size = retract_congruence(s).block_count();
    let v: Vec<Subgroup> = (0..q)
        .map(|a| if a == 0 { Subgroup::trivial(g) } else { v_chain(fam, a).pop().expect("nonempty") })
        .collect();
    let necessary_ok = q > 1 && v[1..].iter().all(|x| x.is_whole());
    let t_order = fam.t_order();
    let sufficient_ok = necessary_ok && (q % 2 == 1 || t_order % 2 == 1);
    let mut hints = Vec::new();
    for sub in v.iter().skip(1) {
        if !sub.is_whole() && !hints.iter().any(|(o, _): &(Vec<bool>, _)| o == sub.members()) {
            hints.push((sub.members().to_vec(), coset_partitions(g, sub)));
        }
    }
    let hints: Vec<Congruence> = hints.into_iter().flat_map(|(_, cs)| cs).collect();
    let simp = is_simple_solution_with(s, opts.method, &hints, opts.exec);
    NewsolReport {
        size: q * q,
        w,
        c,
        predicted_orbit,
        bfs_orbit,
        indecomposable: orb.blocks.len() == 1,
        irretractable,
        retract_size,
        v,
        t_order,
        necessary_ok,
        sufficient_ok,
        brute_simple: simp.simple,
        witness: simp.witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::{aut_from_matrix, GroupAut};
    use crate::constructions::make_jfamily;
    use crate::ybcore::{is_simple_solution, permutation_group, verify_braid};

    fn s4() -> (JFamily, Solution) {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let f = make_jfamily(&z2, &GroupAut::identity(&z2), &[(0, 0), (1, 1)]).unwrap();
        let s = construct_newsol(&f).unwrap();
        (f, s)
    }

    #[test]
    fn four_point_table() {
        let (f, s) = s4();
        let z2 = f.group();
        let p = |a, b| pair_index(z2, a, b);
        assert_eq!(s.sigma(p(0, 0), p(0, 0)), p(0, 0));
        assert_eq!(s.sigma(p(0, 0), p(1, 0)), p(1, 1));
        let row = |x| s.sigma(p(0, 1), x);
        assert_eq!(row(p(0, 0)), p(1, 1));
        assert_eq!(row(p(1, 1)), p(0, 1));
        assert_eq!(row(p(0, 1)), p(1, 0));
        assert_eq!(row(p(1, 0)), p(0, 0));
        assert!(verify_braid(&s));
        assert_eq!(permutation_group(&s).unwrap().order(), 8);
        let r = analyze_newsol(&f, &s);
        assert!(r.w.is_whole());
        assert_eq!(r.c, vec![0, 1]);
        assert_eq!(r.bfs_orbit.len(), 4);
        assert!(r.orbit_matches() && r.irretractable && r.retract_matches());
        assert!(r.v[1].is_whole());
        assert!(r.necessary_ok && r.sufficient_ok && r.brute_simple);
    }

    #[test]
    fn sixteen_points() {
        let v = FinAbGroup::parse("Z2xZ2").unwrap();
        let t = aut_from_matrix(&v, &[vec![0, 1], vec![1, 1]]).unwrap();
        let ja: Vec<(usize, usize)> = v.elements().map(|a| (a, a)).collect();
        let f = make_jfamily(&v, &t, &ja).unwrap();
        let s = construct_newsol(&f).unwrap();
        let r = analyze_newsol(&f, &s);
        assert!(r.w.is_whole() && r.irretractable && r.necessary_ok);
        assert_eq!(r.t_order, 3);
        assert!(r.sufficient_ok && r.brute_simple && r.orbit_matches());
        assert!(is_simple_solution(&s).simple);
    }

    #[test]
    fn constant_family() {
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let id = GroupAut::identity(&z3);
        let zero = make_jfamily(&z3, &id, &[(0, 0), (1, 0), (2, 0)]).unwrap();
        let s = construct_newsol(&zero).unwrap();
        let r = analyze_newsol(&zero, &s);
        assert!(r.w.is_trivial());
        assert!(!r.indecomposable && !r.irretractable && !r.brute_simple && !r.necessary_ok);
        assert!(r.retract_matches() && r.orbit_matches());
        let reduced = analyze_newsol_with(&zero, &s, AnalyzeOptions { method: SimplicityMethod::Reduced, exec: Exec::Sequential });
        assert!(!reduced.brute_simple);
        assert!(reduced.witness.unwrap().is_compatible(&s));

        // A nonzero constant still yields a transitive action: σ moves the
        // second coordinate by -j_0.
        let two = make_jfamily(&z3, &id, &[(0, 2), (1, 2), (2, 2)]).unwrap();
        let s = construct_newsol(&two).unwrap();
        let r = analyze_newsol(&two, &s);
        assert!(r.w.is_trivial() && r.indecomposable && r.orbit_matches());
        assert!(!r.irretractable && r.retract_matches() && !r.brute_simple);
    }
}
