use super::{socle, FiniteBrace};
use crate::search::{cycle_type, find_isomorphism, Structure};

/// Additive order, multiplicative order, cycle type of `λ_a` and socle
/// membership.
fn element_keys(b: &FiniteBrace) -> Vec<Vec<u32>> {
    let soc = socle(b);
    (0..b.size())
        .map(|a| {
            let mut key = vec![
                b.additive_order(a) as u32,
                b.multiplicative_order(a) as u32,
                soc.contains(a) as u32,
            ];
            key.extend(cycle_type(b.lambda_row(a)));
            key
        })
        .collect()
}

pub fn find_brace_isomorphism(a: &FiniteBrace, b: &FiniteBrace) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let sa = Structure { n: a.size(), ops: vec![a.add_table(), a.mul_table()], keys: element_keys(a) };
    let sb = Structure { n: b.size(), ops: vec![b.add_table(), b.mul_table()], keys: element_keys(b) };
    let f = find_isomorphism(&sa, &sb)?;
    debug_assert!(is_brace_homomorphism(a, b, &f));
    Some(f)
}

/// `f(x+y) = f(x)+f(y)` and `f(x∘y) = f(x)∘f(y)` everywhere.
pub fn is_brace_homomorphism(a: &FiniteBrace, b: &FiniteBrace, f: &[usize]) -> bool {
    let m = a.size();
    f.len() == m
        && f.iter().all(|&v| v < b.size())
        && (0..m).all(|x| {
            (0..m).all(|y| f[a.add(x, y)] == b.add(f[x], f[y]) && f[a.mul(x, y)] == b.mul(f[x], f[y]))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::FinAbGroup;
    use crate::brace::trivial_brace;

    #[test]
    fn trivial_cases() {
        let z4 = trivial_brace(&FinAbGroup::cyclic(4).unwrap());
        let v = trivial_brace(&FinAbGroup::parse("Z2xZ2").unwrap());
        assert_eq!(find_brace_isomorphism(&z4, &z4).map(|f| f.len()), Some(4));
        assert!(find_brace_isomorphism(&z4, &v).is_none());
        let z6 = trivial_brace(&FinAbGroup::cyclic(6).unwrap());
        let z23 = trivial_brace(&FinAbGroup::parse("Z2xZ3").unwrap());
        let f = find_brace_isomorphism(&z6, &z23).unwrap();
        assert!(is_brace_homomorphism(&z6, &z23, &f));
    }
}
