//! Identities that hold in every left brace, checked on explicit tables.

use super::{socle, BraceSubset, FiniteBrace};
use crate::par::Exec;

/// First pair with `a∘b⁻¹ ≠ a - λ_{a∘b⁻¹}(b)`.
pub fn quotient_identity_witness(b: &FiniteBrace, exec: Exec) -> Option<(usize, usize)> {
    let m = b.size();
    exec.find_map(m, |a| {
        (0..m).find_map(|x| {
            let c = b.mul(a, b.inv(x));
            (c != b.sub(a, b.lambda(c, x))).then_some((a, x))
        })
    })
}

/// First pair with `a - b ≠ a∘λ_{a⁻¹∘b}(b⁻¹)`.
pub fn difference_identity_witness(b: &FiniteBrace, exec: Exec) -> Option<(usize, usize)> {
    let m = b.size();
    exec.find_map(m, |a| {
        (0..m).find_map(|x| {
            let l = b.lambda(b.mul(b.inv(a), x), b.inv(x));
            (b.sub(a, x) != b.mul(a, l)).then_some((a, x))
        })
    })
}

/// First failure of `λ_a ∈ Aut(B,+)` or `λ_{a∘c} = λ_a λ_c`, as `(a, c, x)`.
pub fn lambda_action_witness(b: &FiniteBrace, exec: Exec) -> Option<(usize, usize, usize)> {
    let m = b.size();
    exec.find_map(m, |a| {
        for c in 0..m {
            let ac = b.mul(a, c);
            for x in 0..m {
                if b.lambda(a, b.add(c, x)) != b.add(b.lambda(a, c), b.lambda(a, x))
                    || b.lambda(ac, x) != b.lambda(a, b.lambda(c, x))
                {
                    return Some((a, c, x));
                }
            }
        }
        None
    })
}

/// Sylow subgroups of `(B, +)`, one per prime dividing `|B|`.
pub fn sylow_subgroups(b: &FiniteBrace) -> Vec<(u32, BraceSubset)> {
    let m = b.size();
    let mut primes = Vec::new();
    let mut r = m as u32;
    let mut p = 2;
    while r > 1 {
        if r.is_multiple_of(p) {
            primes.push(p);
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        p += 1;
    }
    primes
        .into_iter()
        .map(|p| {
            let members = (0..m)
                .map(|a| {
                    let mut o = b.additive_order(a) as u32;
                    while o.is_multiple_of(p) {
                        o /= p;
                    }
                    o == 1
                })
                .collect();
            (p, BraceSubset::classify(b, members))
        })
        .collect()
}

/// Outcome of the brace property suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub quotient_identity: Option<(usize, usize)>,
    pub difference_identity: Option<(usize, usize)>,
    pub lambda_action: Option<(usize, usize, usize)>,
    pub socle_is_ideal: bool,
    pub socle_is_lambda_kernel: bool,
    /// Primes whose Sylow subgroup is not a left ideal.
    pub sylow_failures: Vec<u32>,
}

impl PropertyReport {
    pub fn run(b: &FiniteBrace, exec: Exec) -> Self {
        let soc = socle(b);
        let m = b.size();
        let kernel = (0..m).all(|a| soc.contains(a) == (0..m).all(|x| b.lambda(a, x) == x));
        PropertyReport {
            quotient_identity: quotient_identity_witness(b, exec),
            difference_identity: difference_identity_witness(b, exec),
            lambda_action: lambda_action_witness(b, exec),
            socle_is_ideal: soc.is_ideal,
            socle_is_lambda_kernel: kernel,
            sylow_failures: sylow_subgroups(b)
                .into_iter()
                .filter(|(_, s)| !s.is_left_ideal)
                .map(|(p, _)| p)
                .collect(),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.quotient_identity.is_none()
            && self.difference_identity.is_none()
            && self.lambda_action.is_none()
            && self.socle_is_ideal
            && self.socle_is_lambda_kernel
            && self.sylow_failures.is_empty()
    }
}
