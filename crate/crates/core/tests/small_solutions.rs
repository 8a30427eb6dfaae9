//! Every involutive non-degenerate solution on at most four points.

use ybe_core::constructions::construct_grid;
use ybe_core::par::Exec;
use ybe_core::ybcore::{
    cyclic_solution, find_solution_isomorphism, is_indecomposable, is_irretractable, is_simple_solution,
    is_simple_solution_with, make_solution, trivial_solution, SimplicityMethod, Solution,
};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn all_solutions(n: usize) -> Vec<Solution> {
    let perms = permutations(n);
    let total = perms.len().pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let r = perms[code % perms.len()].clone();
                    code /= perms.len();
                    r
                })
                .collect();
            make_solution(rows, Vec::new()).ok()
        })
        .collect()
}

fn classes(sols: &[Solution]) -> Vec<&Solution> {
    let mut reps: Vec<&Solution> = Vec::new();
    for s in sols {
        if !reps.iter().any(|r| find_solution_isomorphism(r, s).is_some()) {
            reps.push(s);
        }
    }
    reps
}

#[test]
fn isomorphism_class_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| classes(&all_solutions(n)).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 23]);
}

fn check_simple_implies_structure(s: &Solution) {
    let n = s.size();
    let simple = is_simple_solution(s).simple;
    let reduced = is_simple_solution_with(s, SimplicityMethod::Reduced, &[], Exec::Sequential);
    assert_eq!(reduced.simple, simple);
    if let Some(w) = reduced.witness {
        assert!(w.is_proper() && w.is_compatible(s));
    }
    if simple && n > 2 {
        assert!(is_indecomposable(s));
    }
    let prime = n > 1 && (2..n).all(|d| !n.is_multiple_of(d));
    if simple && !prime {
        assert!(is_irretractable(s));
    }
}

#[test]
fn simple_solutions_are_indecomposable_and_irretractable() {
    let mut simple_sizes = Vec::new();
    for n in 1..=4 {
        for s in classes(&all_solutions(n)) {
            check_simple_implies_structure(s);
            if is_simple_solution(s).simple {
                simple_sizes.push(n);
            }
        }
    }
    // Both 2-point solutions, one class on three points, two on four.
    assert_eq!(simple_sizes, vec![2, 2, 3, 4, 4]);
    for s in [trivial_solution(5), cyclic_solution(5), cyclic_solution(6)] {
        check_simple_implies_structure(&s);
    }
    let grid = construct_grid(3, 2, 2).unwrap();
    check_simple_implies_structure(&grid);
}
