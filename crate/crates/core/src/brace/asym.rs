use thiserror::Error;

use super::{BraceError, FiniteBrace};
use crate::par::Exec;

/// Data for the asymmetric product `T ⋊_∘ S`.
///
/// `alpha[s]` is the brace automorphism of `T` attached to `s` (as an image
/// table), and `form[t1 * |T| + t2]` is `b(t1, t2) ∈ S`.
#[derive(Clone, Debug)]
pub struct AsymSpec {
    pub left: FiniteBrace,
    pub right: FiniteBrace,
    pub alpha: Vec<Vec<u32>>,
    pub form: Vec<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsymError {
    #[error("alpha has {got} entries, expected {expected}")]
    AlphaCount { expected: usize, got: usize },
    #[error("form table has {got} entries, expected {expected}")]
    FormSize { expected: usize, got: usize },
    #[error("alpha({s}) is not a brace automorphism of the left component")]
    AlphaNotAutomorphism { s: usize },
    #[error("alpha is not a homomorphism at ({s1},{s2})")]
    AlphaNotHomomorphism { s1: usize, s2: usize },
    #[error("form is not symmetric at ({t1},{t2})")]
    FormNotSymmetric { t1: usize, t2: usize },
    #[error("form is not additive at ({t1},{t2},{t3})")]
    FormNotAdditive { t1: usize, t2: usize, t3: usize },
    #[error("lambda_{s}(b({t1},{t2})) differs from b(alpha_s({t1}), alpha_s({t2}))")]
    Compatibility { s: usize, t1: usize, t2: usize },
    #[error("b(lambda_{t}({t1}), lambda_{t}({t2})) differs from b({t1},{t2})")]
    LambdaInvariance { t: usize, t1: usize, t2: usize },
    #[error(transparent)]
    Brace(#[from] BraceError),
}

impl AsymSpec {
    fn b(&self, t1: usize, t2: usize) -> usize {
        self.form[t1 * self.left.size() + t2] as usize
    }

    fn a(&self, s: usize, t: usize) -> usize {
        self.alpha[s][t] as usize
    }

    /// Checks every hypothesis of the construction.
    pub fn validate(&self) -> Result<(), AsymError> {
        let (nt, ns) = (self.left.size(), self.right.size());
        let (l, r) = (&self.left, &self.right);
        if self.alpha.len() != ns {
            return Err(AsymError::AlphaCount { expected: ns, got: self.alpha.len() });
        }
        if self.form.len() != nt * nt || self.form.iter().any(|&v| v as usize >= ns) {
            return Err(AsymError::FormSize { expected: nt * nt, got: self.form.len() });
        }
        for s in 0..ns {
            let img = &self.alpha[s];
            let mut seen = vec![false; nt];
            let bijective = img.len() == nt
                && img.iter().all(|&v| (v as usize) < nt && !std::mem::replace(&mut seen[v as usize], true));
            let hom = bijective
                && (0..nt).all(|x| {
                    (0..nt).all(|y| {
                        self.a(s, l.add(x, y)) == l.add(self.a(s, x), self.a(s, y))
                            && self.a(s, l.mul(x, y)) == l.mul(self.a(s, x), self.a(s, y))
                    })
                });
            if !hom {
                return Err(AsymError::AlphaNotAutomorphism { s });
            }
        }
        for s1 in 0..ns {
            for s2 in 0..ns {
                let s12 = r.mul(s1, s2);
                if (0..nt).any(|x| self.a(s12, x) != self.a(s1, self.a(s2, x))) {
                    return Err(AsymError::AlphaNotHomomorphism { s1, s2 });
                }
            }
        }
        for t1 in 0..nt {
            for t2 in 0..nt {
                if self.b(t1, t2) != self.b(t2, t1) {
                    return Err(AsymError::FormNotSymmetric { t1, t2 });
                }
            }
        }
        let additive = Exec::default().find_map(nt, |t1| {
            for t2 in 0..nt {
                let s12 = l.add(t1, t2);
                for t3 in 0..nt {
                    if self.b(s12, t3) != r.add(self.b(t1, t3), self.b(t2, t3)) {
                        return Some((t1, t2, t3));
                    }
                }
            }
            None
        });
        if let Some((t1, t2, t3)) = additive {
            return Err(AsymError::FormNotAdditive { t1, t2, t3 });
        }
        for s in 0..ns {
            for t1 in 0..nt {
                for t2 in 0..nt {
                    if r.lambda(s, self.b(t1, t2)) != self.b(self.a(s, t1), self.a(s, t2)) {
                        return Err(AsymError::Compatibility { s, t1, t2 });
                    }
                }
            }
        }
        let invariance = Exec::default().find_map(nt, |t| {
            for t1 in 0..nt {
                let u = l.lambda(t, t1);
                for t2 in 0..nt {
                    if self.b(u, l.lambda(t, t2)) != self.b(t1, t2) {
                        return Some((t, t1, t2));
                    }
                }
            }
            None
        });
        if let Some((t, t1, t2)) = invariance {
            return Err(AsymError::LambdaInvariance { t, t1, t2 });
        }
        Ok(())
    }
}

/// `T ⋊_∘ S` on pairs `(t, s)` with index `t·|S| + s`:
///
/// `(t1,s1) + (t2,s2) = (t1+t2, s1+s2+b(t1,t2))`,
/// `(t1,s1) ∘ (t2,s2) = (t1 ∘ α_{s1}(t2), s1∘s2)`.
pub fn asymmetric_product(spec: &AsymSpec) -> Result<FiniteBrace, AsymError> {
    spec.validate()?;
    let (l, r) = (&spec.left, &spec.right);
    let (nt, ns) = (l.size(), r.size());
    let m = nt * ns;
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for k1 in 0..m {
        let (t1, s1) = (k1 / ns, k1 % ns);
        for k2 in 0..m {
            let (t2, s2) = (k2 / ns, k2 % ns);
            let s = r.add(r.add(s1, s2), spec.b(t1, t2));
            add.push((l.add(t1, t2) * ns + s) as u32);
            mul.push((l.mul(t1, spec.a(s1, t2)) * ns + r.mul(s1, s2)) as u32);
        }
    }
    let labels = (0..m)
        .map(|k| format!("<{}|{}>", l.labels()[k / ns], r.labels()[k % ns]))
        .collect();
    Ok(FiniteBrace::from_tables(m, add, mul, labels, usize::MAX, Exec::default())?)
}
