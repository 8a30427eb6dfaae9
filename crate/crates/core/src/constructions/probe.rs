//! Exhaustive comparison of the `V_a = A` condition with simplicity.
//!
//! Families related by `j ↦ u∘j∘u⁻¹ + d`, with `u` in the centralizer of `t`
//! and `d ∈ im((t-id)²)`, give isomorphic solutions: for `d = -t⁻¹(t-id)²α`
//! the map `(c1,c2) ↦ (u c1 + α, u c2 + (id-t)α)` is an isomorphism, and it
//! carries `V_a` to `u V_a`. Each orbit is analyzed once and counted with
//! its size.

use std::fmt::Write as _;

use thiserror::Error;

use super::newsol::{analyze_newsol_with, construct_newsol_trusted, AnalyzeOptions, NewsolError};
use super::{FamilySpace, JFamily, JFamilyError};
use crate::abgroup::{all_automorphisms, groups_up_to, FinAbGroup, GroupAut};
use crate::par::Exec;
use crate::ybcore::SimplicityMethod;

pub const DEFAULT_PROBE_CAP: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbeError {
    #[error("group order {order} exceeds the probe cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error(transparent)]
    Family(#[from] JFamilyError),
    #[error(transparent)]
    Newsol(#[from] NewsolError),
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    pub cap: usize,
    /// Analyze one family per symmetry orbit.
    pub reduce: bool,
    /// Counterexample tables kept per `(A, t)`.
    pub keep: usize,
    pub exec: Exec,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { cap: DEFAULT_PROBE_CAP, reduce: true, keep: 4, exec: Exec::default() }
    }
}

/// Counts of families by (`V_a = A` for all `a ≠ 0`, simple).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Contingency {
    pub v_simple: u64,
    pub v_not_simple: u64,
    pub nv_simple: u64,
    pub nv_not_simple: u64,
}

impl Contingency {
    fn add(&mut self, v: bool, simple: bool, weight: u64) {
        match (v, simple) {
            (true, true) => self.v_simple += weight,
            (true, false) => self.v_not_simple += weight,
            (false, true) => self.nv_simple += weight,
            (false, false) => self.nv_not_simple += weight,
        }
    }

    fn merge(&mut self, o: &Contingency, w: u64) {
        self.v_simple += o.v_simple * w;
        self.v_not_simple += o.v_not_simple * w;
        self.nv_simple += o.nv_simple * w;
        self.nv_not_simple += o.nv_not_simple * w;
    }

    pub fn total(&self) -> u64 {
        self.v_simple + self.v_not_simple + self.nv_simple + self.nv_not_simple
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub group: String,
    pub t_matrix: Vec<Vec<u32>>,
    pub t_order: u64,
    pub families: u64,
    /// Families actually analyzed.
    pub analyzed: u64,
    pub table: Contingency,
    /// Simple with some `V_a ≠ A`.
    pub necessary_violations: u64,
    /// Sufficient hypotheses hold but not simple.
    pub sufficient_violations: u64,
    /// `V_a = A` throughout but not simple.
    pub converse_counterexamples: u64,
    pub examples: Vec<Vec<usize>>,
}

impl ProbeReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group: {}", self.group);
        let _ = writeln!(s, "t: {:?}", self.t_matrix);
        let _ = writeln!(s, "t_order: {}", self.t_order);
        let _ = writeln!(s, "families: {}", self.families);
        let _ = writeln!(s, "analyzed: {}", self.analyzed);
        let c = &self.table;
        let _ = writeln!(s, "v_ok_simple: {}", c.v_simple);
        let _ = writeln!(s, "v_ok_not_simple: {}", c.v_not_simple);
        let _ = writeln!(s, "v_fail_simple: {}", c.nv_simple);
        let _ = writeln!(s, "v_fail_not_simple: {}", c.nv_not_simple);
        let _ = writeln!(s, "necessary_violations: {}", self.necessary_violations);
        let _ = writeln!(s, "sufficient_violations: {}", self.sufficient_violations);
        let _ = writeln!(s, "converse_counterexamples: {}", self.converse_counterexamples);
        s
    }
}

fn images(u: &GroupAut) -> Vec<usize> {
    u.group().elements().map(|a| u.apply(a)).collect()
}

pub fn probe_converse(group: &FinAbGroup, t: &GroupAut) -> Result<ProbeReport, ProbeError> {
    probe_converse_with(group, t, ProbeOptions::default())
}

pub fn probe_converse_with(group: &FinAbGroup, t: &GroupAut, opts: ProbeOptions) -> Result<ProbeReport, ProbeError> {
    let q = group.order();
    if q > opts.cap {
        return Err(ProbeError::CapExceeded { order: q, cap: opts.cap });
    }
    let space = FamilySpace::new(group, t)?;
    let total = space.len();
    let tt = images(t);
    let (symmetries, shifts) = if opts.reduce {
        let cent: Vec<(Vec<usize>, Vec<usize>)> = all_automorphisms(group)
            .into_iter()
            .filter(|u| (0..q).all(|a| u.apply(tt[a]) == tt[u.apply(a)]))
            .map(|u| (images(&u), (0..q).map(|a| u.apply_inv(a)).collect()))
            .collect();
        let e = t.minus_identity();
        let mut d: Vec<usize> = (0..q).map(|x| e.apply(e.apply(x))).collect();
        d.sort_unstable();
        d.dedup();
        (cent, d)
    } else {
        (vec![((0..q).collect(), (0..q).collect())], vec![0])
    };
    let analyze = AnalyzeOptions { method: SimplicityMethod::Reduced, exec: Exec::Sequential };
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut report = ProbeReport {
        group: group.descriptor(),
        t_matrix: t.matrix().to_vec(),
        t_order: t.order(),
        families: total,
        analyzed: 0,
        table: Contingency::default(),
        necessary_violations: 0,
        sufficient_violations: 0,
        converse_counterexamples: 0,
        examples: Vec::new(),
    };
    let mut image = vec![0usize; q];
    for idx in 0..total {
        if visited[(idx / 64) as usize] >> (idx % 64) & 1 == 1 {
            continue;
        }
        let j = space.table(idx);
        let mut weight = 0u64;
        for (u, uinv) in &symmetries {
            for &d in &shifts {
                for x in 0..q {
                    image[x] = group.add(u[j[uinv[x]]], d);
                }
                let k = space.index_of(&image);
                let (w, b) = ((k / 64) as usize, k % 64);
                if visited[w] >> b & 1 == 0 {
                    visited[w] |= 1 << b;
                    weight += 1;
                }
            }
        }
        let fam = space.family(idx);
        let s = construct_newsol_trusted(&fam)?;
        let r = analyze_newsol_with(&fam, &s, analyze);
        report.analyzed += 1;
        report.table.add(r.necessary_ok, r.brute_simple, weight);
        if r.necessary_violated() {
            report.necessary_violations += weight;
        }
        if r.sufficient_violated() {
            report.sufficient_violations += weight;
        }
        if r.necessary_ok && !r.brute_simple {
            report.converse_counterexamples += weight;
            if report.examples.len() < opts.keep {
                report.examples.push(j);
            }
        }
    }
    Ok(report)
}

/// One automorphism per conjugacy class, with the class size.
pub fn conjugacy_classes(group: &FinAbGroup) -> Vec<(GroupAut, usize)> {
    let auts = all_automorphisms(group);
    let imgs: Vec<Vec<usize>> = auts.iter().map(images).collect();
    let mut class = vec![usize::MAX; auts.len()];
    let mut out = Vec::new();
    for i in 0..auts.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut size = 0;
        for u in &auts {
            let conj: Vec<usize> = group.elements().map(|a| u.apply(imgs[i][u.apply_inv(a)])).collect();
            let k = imgs.iter().position(|v| *v == conj).expect("conjugate is an automorphism");
            if class[k] == usize::MAX {
                class[k] = id;
                size += 1;
            }
        }
        out.push((auts[i].clone(), size));
    }
    out
}

#[derive(Clone, Debug)]
pub struct ProbeEntry {
    pub class_size: usize,
    pub report: ProbeReport,
}

#[derive(Clone, Debug, Default)]
pub struct ProbeSummary {
    pub entries: Vec<ProbeEntry>,
    /// Weighted by conjugacy class size, so every `(A, t)` pair counts.
    pub pairs: u64,
    pub families: u64,
    pub table: Contingency,
    pub necessary_violations: u64,
    pub sufficient_violations: u64,
    pub converse_counterexamples: u64,
}

impl ProbeSummary {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let r = &e.report;
            let _ = writeln!(
                s,
                "{} t={:?} class={} families={} analyzed={} table=[{} {} {} {}] necessary_violations={} converse_counterexamples={}",
                r.group,
                r.t_matrix,
                e.class_size,
                r.families,
                r.analyzed,
                r.table.v_simple,
                r.table.v_not_simple,
                r.table.nv_simple,
                r.table.nv_not_simple,
                r.necessary_violations,
                r.converse_counterexamples
            );
        }
        let _ = writeln!(s, "pairs: {}", self.pairs);
        let _ = writeln!(s, "families: {}", self.families);
        let _ = writeln!(s, "v_ok_simple: {}", self.table.v_simple);
        let _ = writeln!(s, "v_ok_not_simple: {}", self.table.v_not_simple);
        let _ = writeln!(s, "v_fail_simple: {}", self.table.nv_simple);
        let _ = writeln!(s, "v_fail_not_simple: {}", self.table.nv_not_simple);
        let _ = writeln!(s, "necessary_violations: {}", self.necessary_violations);
        let _ = writeln!(s, "sufficient_violations: {}", self.sufficient_violations);
        let _ = writeln!(s, "converse_counterexamples: {}", self.converse_counterexamples);
        s
    }
}

/// Every group shape of order `2..=max_order` and one `t` per conjugacy
/// class; conjugate `t` give isomorphic families.
pub fn probe_all(max_order: u32, opts: ProbeOptions) -> Result<ProbeSummary, ProbeError> {
    if max_order as usize > opts.cap {
        return Err(ProbeError::CapExceeded { order: max_order as usize, cap: opts.cap });
    }
    let jobs: Vec<(FinAbGroup, GroupAut, usize)> = groups_up_to(max_order)
        .into_iter()
        .flat_map(|g| conjugacy_classes(&g).into_iter().map(move |(t, k)| (g.clone(), t, k)))
        .collect();
    let inner = ProbeOptions { exec: Exec::Sequential, ..opts };
    let results = opts.exec.map_slice(&jobs, |(g, t, _)| probe_converse_with(g, t, inner));
    let mut summary = ProbeSummary::default();
    for ((_, _, k), r) in jobs.iter().zip(results) {
        let report = r?;
        let w = *k as u64;
        summary.pairs += w;
        summary.families += report.families * w;
        summary.table.merge(&report.table, w);
        summary.necessary_violations += report.necessary_violations * w;
        summary.sufficient_violations += report.sufficient_violations * w;
        summary.converse_counterexamples += report.converse_counterexamples * w;
        summary.entries.push(ProbeEntry { class_size: *k, report });
    }
    Ok(summary)
}

/// Expands a counterexample table into a family.
pub fn example_family(report_group: &FinAbGroup, t: &GroupAut, j: &[usize]) -> Result<JFamily, JFamilyError> {
    JFamily::from_table(report_group, t, j.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::aut_from_matrix;

    #[test]
    fn small_probes() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let r = probe_converse(&z2, &GroupAut::identity(&z2)).unwrap();
        assert_eq!(r.families, 4);
        assert_eq!(r.table.total(), 4);
        assert_eq!(r.necessary_violations, 0);
        // j_1 ≠ j_0 gives the simple 4-point solutions.
        assert_eq!(r.table.v_simple, 2);
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let two = aut_from_matrix(&z3, &[vec![2]]).unwrap();
        let r = probe_converse(&z3, &two).unwrap();
        assert_eq!(r.families, 3);
        assert_eq!(r.table.v_simple + r.table.v_not_simple, 0);
        assert_eq!(r.converse_counterexamples, 0);
        let big = FinAbGroup::cyclic(10).unwrap();
        assert_eq!(
            probe_converse(&big, &GroupAut::identity(&big)).unwrap_err(),
            ProbeError::CapExceeded { order: 10, cap: 9 }
        );
    }

    #[test]
    fn reduction_preserves_counts() {
        for desc in ["Z2xZ2", "Z4", "Z5", "Z6", "Z3xZ2"] {
            let g = FinAbGroup::parse(desc).unwrap();
            for t in all_automorphisms(&g) {
                let full = probe_converse_with(&g, &t, ProbeOptions { reduce: false, ..Default::default() }).unwrap();
                let red = probe_converse_with(&g, &t, ProbeOptions::default()).unwrap();
                assert_eq!(full.table, red.table, "{desc} {:?}", t.matrix());
                assert_eq!(full.analyzed, full.families);
                assert!(red.analyzed <= full.analyzed);
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_aut_order() {
        for desc in ["Z2xZ2", "Z8", "Z3xZ3"] {
            let g = FinAbGroup::parse(desc).unwrap();
            let total: usize = conjugacy_classes(&g).iter().map(|(_, k)| k).sum();
            assert_eq!(total, all_automorphisms(&g).len());
        }
        assert_eq!(conjugacy_classes(&FinAbGroup::parse("Z2xZ2").unwrap()).len(), 3);
    }
}
