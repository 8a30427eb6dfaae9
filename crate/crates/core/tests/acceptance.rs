//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use ybe_core::abgroup::{aut_from_matrix, all_automorphisms, groups_up_to, FinAbGroup, GroupAut};
use ybe_core::brace::{
    brace_from_solution, find_brace_isomorphism, is_brace_homomorphism, is_simple_brace, socle, FiniteBrace,
    PropertyReport,
};
use ybe_core::constructions::{
    analyze_newsol_with, build_asym_model, construct_grid, construct_newsol, construct_simple_family, make_jfamily,
    model_perm_brace, probe_all, AnalyzeOptions, FamilySpace, JFamily, ProbeOptions,
};
use ybe_core::par::Exec;
use ybe_core::ybcore::{
    is_indecomposable, is_irretractable, is_simple_solution, permutation_group, verify_braid, verify_sigma_condition,
    SimplicityMethod, Solution,
};

/// Wall-clock budgets per criterion.
const BUDGET_SWEEP: Duration = Duration::from_secs(60);
const BUDGET_FOUR_POINT: Duration = Duration::from_secs(1);
const BUDGET_SIXTEEN_POINT: Duration = Duration::from_secs(120);
const BUDGET_GRID: Duration = Duration::from_secs(10);
const BUDGET_SIMPLE_FAMILY: Duration = Duration::from_secs(60);

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

/// `r(r(x,y)) = (x,y)` and every `σ_x`, `γ_y` a permutation, from the raw table.
fn axioms_hold(s: &Solution) -> bool {
    let n = s.size();
    let is_perm = |f: &dyn Fn(usize) -> usize| {
        let mut seen = vec![false; n];
        (0..n).all(|y| !std::mem::replace(&mut seen[f(y)], true))
    };
    let r = |x: usize, y: usize| {
        let u = s.sigma(x, y);
        let v = (0..n).find(|&w| s.sigma(u, w) == x).expect("row is bijective");
        (u, v)
    };
    (0..n).all(|x| is_perm(&|y| s.sigma(x, y)))
        && (0..n).all(|y| is_perm(&|x| r(x, y).1))
        && (0..n).all(|x| (0..n).all(|y| {
            let (u, v) = r(x, y);
            r(u, v) == (x, y)
        }))
        && verify_braid(s)
        && verify_sigma_condition(s)
}

/// `a∘(b+c) + a = a∘b + a∘c` on every triple.
fn brace_law_holds(b: &FiniteBrace) -> bool {
    let m = b.size();
    (0..m).all(|a| (0..m).all(|x| (0..m).all(|y| b.add(b.mul(a, b.add(x, y)), a) == b.add(b.mul(a, x), b.mul(a, y)))))
}

/// Order of the group generated by permutations, by closure.
fn closure_order(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..gens[0].len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen.len()
}

fn sweep_families() -> Vec<JFamily> {
    groups_up_to(6)
        .into_iter()
        .flat_map(|g| all_automorphisms(&g).into_iter().map(move |t| (g.clone(), t)))
        .flat_map(|(g, t)| FamilySpace::new(&g, &t).unwrap().iter().collect::<Vec<_>>())
        .collect()
}

fn main() {
    let mut results: Vec<Outcome> = Vec::new();
    let mut braces: Vec<(String, FiniteBrace)> = Vec::new();

    // Criteria 1-4 share the sweep over every A of order at most 6.
    let start = Instant::now();
    let families = sweep_families();
    let mut axiom_fail = 0;
    let mut orbit_fail = 0;
    let mut retract_fail = 0;
    let mut necessary = 0;
    let mut sufficient = 0;
    let mut simple_count = 0;
    let exhaustive = AnalyzeOptions { method: SimplicityMethod::Exhaustive, exec: Exec::default() };
    for fam in &families {
        let s = match construct_newsol(fam) {
            Ok(s) => s,
            Err(_) => {
                axiom_fail += 1;
                continue;
            }
        };
        if !axioms_hold(&s) {
            axiom_fail += 1;
        }
        let r = analyze_newsol_with(fam, &s, exhaustive);
        orbit_fail += !r.orbit_matches() as usize;
        retract_fail += !r.retract_matches() as usize;
        necessary += r.necessary_violated() as usize;
        sufficient += r.sufficient_violated() as usize;
        simple_count += r.brute_simple as usize;
    }
    let elapsed = start.elapsed();
    let n = families.len();
    results.push(Outcome {
        id: 1,
        name: "A² solutions of order <= 6 satisfy all axioms",
        pass: axiom_fail == 0 && n > 0 && elapsed <= BUDGET_SWEEP,
        detail: format!("{n} families, {axiom_fail} failures, {:.1}s (budget {}s)", elapsed.as_secs_f64(), BUDGET_SWEEP.as_secs()),
    });
    results.push(Outcome {
        id: 2,
        name: "orbit of (0,0) equals A×C",
        pass: orbit_fail == 0,
        detail: format!("{orbit_fail} mismatches over {n} families"),
    });
    results.push(Outcome {
        id: 3,
        name: "irretractability criterion matches the retract",
        pass: retract_fail == 0,
        detail: format!("{retract_fail} mismatches over {n} families"),
    });
    results.push(Outcome {
        id: 4,
        name: "V_a conditions consistent with simplicity",
        pass: necessary == 0 && sufficient == 0,
        detail: format!("{simple_count} simple; {necessary} simple with proper V_a; {sufficient} unexpected non-simple"),
    });

    // Criterion 5.
    let start = Instant::now();
    let z2 = FinAbGroup::cyclic(2).unwrap();
    let fam4 = make_jfamily(&z2, &GroupAut::identity(&z2), &[(0, 0), (1, 1)]).unwrap();
    let s4 = construct_newsol(&fam4).unwrap();
    let simple4 = is_simple_solution(&s4).simple;
    let order4 = permutation_group(&s4).unwrap().order();
    // ⟨(34), (12), (1423)⟩ on {1,2,3,4}, shifted to 0-based.
    let hand = closure_order(&[vec![0, 1, 3, 2], vec![1, 0, 2, 3], vec![3, 2, 0, 1]]);
    let pb4 = brace_from_solution(&s4);
    let brace4_ok = pb4.as_ref().is_ok_and(|p| brace_law_holds(&p.brace));
    if let Ok(p) = pb4 {
        braces.push(("group of the 4-point solution".into(), p.brace));
    }
    let elapsed = start.elapsed();
    results.push(Outcome {
        id: 5,
        name: "4-point solution",
        pass: simple4 && order4 == 8 && hand == 8 && brace4_ok && elapsed <= BUDGET_FOUR_POINT,
        detail: format!("simple={simple4}, |G|={order4}, generated by hand={hand}, brace ok={brace4_ok}, {:.3}s", elapsed.as_secs_f64()),
    });

    // Criterion 6.
    let start = Instant::now();
    let v4 = FinAbGroup::parse("Z2xZ2").unwrap();
    let t3 = aut_from_matrix(&v4, &[vec![0, 1], vec![1, 1]]).unwrap();
    let ja: Vec<(usize, usize)> = v4.elements().map(|a| (a, a)).collect();
    let fam16 = make_jfamily(&v4, &t3, &ja).unwrap();
    let s16 = construct_newsol(&fam16).unwrap();
    let simple16 = is_simple_solution(&s16).simple;
    let mut detail6 = format!("simple={simple16}");
    let mut pass6 = simple16;
    match build_asym_model(&fam16) {
        Ok(m) => {
            let pointwise = (0..16).all(|x| (0..16).all(|y| m.orbit.sigma(x, y) == s16.sigma(x, y)));
            // Radical of b' straight from its definition.
            let hp = &m.hprime;
            let kernel = |x: usize, y: usize| t3.apply(v4.sub(fam16.j(v4.sub(x, y)), fam16.j(0)));
            let bform = |f: usize, h: usize| {
                let (rf, rh) = (hp.residues(f), hp.residues(h));
                v4.sum((0..4).flat_map(|x| (0..4).map(move |y| (x, y))).filter(|&(x, y)| rf[x] * rh[y] % 2 == 1).map(|(x, y)| kernel(x, y)))
            };
            let radical = (0..hp.order()).filter(|&f| (0..hp.order()).all(|h| bform(f, h) == 0)).count();
            detail6 += &format!(", |B'|={}, points match={pointwise}, |H1|={} (direct {radical})", m.brace.size(), m.radical.len());
            pass6 &= m.brace.size() == 192 && pointwise && m.radical.len() == radical;
            match model_perm_brace(&m) {
                Ok(mb) => {
                    let g = mb.group.brace.size();
                    let expect = m.hprime.order() / radical * 12;
                    let iso = is_brace_homomorphism(&mb.brace, &mb.group.brace, &mb.iso);
                    detail6 += &format!(", |G|={g}, |H'/H1|·12={expect}, isomorphism={iso}");
                    pass6 &= g == expect && iso;
                    braces.push(("model quotient".into(), mb.brace));
                    braces.push(("group of the 16-point solution".into(), mb.group.brace));
                }
                Err(e) => {
                    pass6 = false;
                    detail6 += &format!(", model brace failed: {e}");
                }
            }
            braces.push(("asymmetric product B'".into(), m.brace));
        }
        Err(e) => {
            pass6 = false;
            detail6 += &format!(", model failed: {e}");
        }
    }
    let elapsed = start.elapsed();
    detail6 += &format!(", {:.2}s", elapsed.as_secs_f64());
    results.push(Outcome { id: 6, name: "16-point solution and its model", pass: pass6 && elapsed <= BUDGET_SIXTEEN_POINT, detail: detail6 });

    // Criterion 7.
    let start = Instant::now();
    let mut pass7 = true;
    let mut detail7 = Vec::new();
    for (n, m, t) in [(3, 2, 2), (5, 2, 4)] {
        match construct_grid(n, m, t) {
            Ok(s) => {
                let ok = axioms_hold(&s) && is_indecomposable(&s) && is_irretractable(&s);
                pass7 &= ok;
                detail7.push(format!("({n},{m},{t}): {} points ok={ok}", s.size()));
            }
            Err(e) => {
                pass7 = false;
                detail7.push(format!("({n},{m},{t}): {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    results.push(Outcome {
        id: 7,
        name: "grid solutions",
        pass: pass7 && elapsed <= BUDGET_GRID,
        detail: format!("{}, {:.2}s", detail7.join("; "), elapsed.as_secs_f64()),
    });

    // Criterion 8.
    let start = Instant::now();
    let (pass8, detail8) = match construct_simple_family(2, &[(3, 1)]) {
        Ok(f) => {
            let simple_b = is_simple_brace(&f.brace);
            let soc = socle(&f.brace).elements();
            let simple_x = is_simple_solution(&f.grid).simple;
            let (iso, gsize) = match brace_from_solution(&f.grid) {
                Ok(g) => {
                    let iso = find_brace_isomorphism(&g.brace, &f.brace)
                        .is_some_and(|phi| is_brace_homomorphism(&g.brace, &f.brace, &phi));
                    let size = g.brace.size();
                    braces.push(("group of the 12-point grid".into(), g.brace));
                    (iso, size)
                }
                Err(_) => (false, 0),
            };
            let ok = f.brace.size() == 24 && simple_b && soc == vec![f.brace.zero()] && f.points.len() == 12 && simple_x && iso;
            let d = format!(
                "|B|={}, simple brace={simple_b}, |soc|={}, |X'|={}, simple solution={simple_x}, |G|={gsize}, G≅B={iso}",
                f.brace.size(),
                soc.len(),
                f.points.len()
            );
            braces.push(("simple brace (p=2, n=3)".into(), f.brace));
            (ok, d)
        }
        Err(e) => (false, e.to_string()),
    };
    if let Ok(f) = construct_simple_family(2, &[(5, 1)]) {
        braces.push(("simple brace (p=2, n=5)".into(), f.brace));
    }
    let elapsed = start.elapsed();
    results.push(Outcome {
        id: 8,
        name: "simple brace family",
        pass: pass8 && elapsed <= BUDGET_SIMPLE_FAMILY,
        detail: format!("{detail8}, {:.2}s", elapsed.as_secs_f64()),
    });

    // Criterion 9.
    let mut failures = Vec::new();
    for (name, b) in &braces {
        let report = PropertyReport::run(b, Exec::default());
        if !brace_law_holds(b) || !report.all_hold() {
            failures.push(format!("{name}: {report:?}"));
        }
    }
    results.push(Outcome {
        id: 9,
        name: "brace identities on every constructed brace",
        pass: failures.is_empty() && braces.len() >= 7,
        detail: if failures.is_empty() {
            let sizes: Vec<String> = braces.iter().map(|(n, b)| format!("{n} ({})", b.size())).collect();
            sizes.join(", ")
        } else {
            failures.join("; ")
        },
    });

    // Criterion 10.
    let start = Instant::now();
    let (pass10, detail10) = match probe_all(9, ProbeOptions::default()) {
        Ok(sum) => (
            sum.necessary_violations == 0,
            format!(
                "{} pairs, {} families, table [v&simple {}, v&not {}, !v&simple {}, !v&not {}], simple with proper V_a: {}, converse counterexamples: {}, {:.1}s",
                sum.pairs,
                sum.families,
                sum.table.v_simple,
                sum.table.v_not_simple,
                sum.table.nv_simple,
                sum.table.nv_not_simple,
                sum.necessary_violations,
                sum.converse_counterexamples,
                start.elapsed().as_secs_f64()
            ),
        ),
        Err(e) => (false, e.to_string()),
    };
    results.push(Outcome { id: 10, name: "converse probe up to order 9", pass: pass10, detail: detail10 });

    let mut all = true;
    for r in &results {
        all &= r.pass;
        println!("criterion {:>2} [{}] {}: {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
