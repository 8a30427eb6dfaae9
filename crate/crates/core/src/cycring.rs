//! The ring `F_p[x]/(x^{n-1} + ... + x + 1)` with the twists `c(q) = ξq` and
//! `f(q(ξ)) = q(ξ^t)` and the bilinear form `b(ξ^j, ξ^i) = 1 - δ_{ij}`.
//!
//! Elements are coefficient vectors in the basis `1, ξ, ..., ξ^{n-2}` and are
//! indexed like the additive group `(Z/p)^{n-1}` (constant term first).

use thiserror::Error;

use crate::abgroup::{gcd, FinAbGroup, GroupAut, GroupEndo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("n = {0} must be at least 2")]
    NBelowTwo(u32),
    #[error("p = {p} divides n = {n}")]
    PDividesN { p: u32, n: u32 },
    #[error("t = {t} is not a unit mod {n}")]
    TNotUnit { t: u64, n: u32 },
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Structural facts about the form and the twist `c`, established by
/// enumeration when the ring is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingChecks {
    pub form_nondegenerate: bool,
    pub c_orthogonal: bool,
    pub c_minus_id_invertible: bool,
}

#[derive(Clone, Debug)]
pub struct CycRing {
    p: u32,
    n: u32,
    additive: FinAbGroup,
    xi_powers: Vec<usize>,
    checks: RingChecks,
}

pub fn build_ring(p: u32, n: u32) -> Result<CycRing, RingError> {
    CycRing::new(p, n)
}

impl CycRing {
    pub fn new(p: u32, n: u32) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if n < 2 {
            return Err(RingError::NBelowTwo(n));
        }
        if n.is_multiple_of(p) {
            return Err(RingError::PDividesN { p, n });
        }
        let additive = FinAbGroup::power(p, (n - 1) as usize).expect("p >= 2");
        let mut ring = CycRing {
            p,
            n,
            additive,
            xi_powers: Vec::new(),
            checks: RingChecks {
                form_nondegenerate: false,
                c_orthogonal: false,
                c_minus_id_invertible: false,
            },
        };
        let mut power = ring.one();
        for _ in 0..n {
            ring.xi_powers.push(power);
            power = ring.twist_c(power);
        }
        debug_assert_eq!(power, ring.one(), "ξ^n = 1");
        ring.checks = ring.run_checks();
        Ok(ring)
    }

    fn run_checks(&self) -> RingChecks {
        let elems: Vec<usize> = self.elements().collect();
        let form_nondegenerate = elems
            .iter()
            .filter(|&&u| u != 0)
            .all(|&u| elems.iter().any(|&v| self.form_b(u, v) != 0));
        let c_orthogonal = elems.iter().all(|&u| {
            elems
                .iter()
                .all(|&v| self.form_b(self.twist_c(u), self.twist_c(v)) == self.form_b(u, v))
        });
        let mut seen = vec![false; self.order()];
        let c_minus_id_invertible = elems.iter().all(|&u| {
            let w = self.additive.sub(self.twist_c(u), u);
            !std::mem::replace(&mut seen[w], true)
        });
        RingChecks {
            form_nondegenerate,
            c_orthogonal,
            c_minus_id_invertible,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn checks(&self) -> RingChecks {
        self.checks
    }

    pub fn additive_group(&self) -> &FinAbGroup {
        &self.additive
    }

    pub fn order(&self) -> usize {
        self.additive.order()
    }

    pub fn dim(&self) -> usize {
        (self.n - 1) as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.additive.elements()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.from_coeffs(&[1])
    }

    pub fn xi(&self) -> usize {
        self.from_coeffs(&[0, 1])
    }

    /// `ξ^i` for any integer exponent.
    pub fn xi_pow(&self, i: i64) -> usize {
        self.xi_powers[i.rem_euclid(self.n as i64) as usize]
    }

    pub fn coeffs(&self, q: usize) -> Vec<u32> {
        self.additive.residues(q)
    }

    /// Element with the given coefficients (constant term first); missing
    /// trailing coefficients are zero. Terms of degree `>= n-1` are reduced.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> usize {
        let n = self.n as usize;
        let p = self.p as i64;
        let mut full = vec![0i64; n];
        for (i, &c) in coeffs.iter().enumerate() {
            full[i % n] = (full[i % n] + c).rem_euclid(p);
        }
        self.reduce(full)
    }

    /// Reduces a length-`n` vector of coefficients of `1, ..., ξ^{n-1}`.
    fn reduce(&self, mut full: Vec<i64>) -> usize {
        let d = self.dim();
        let top = full[d];
        let p = self.p as i64;
        for c in full.iter_mut().take(d) {
            *c = (*c - top).rem_euclid(p);
        }
        full.truncate(d);
        self.additive.index_of(&full)
    }

    pub fn add(&self, u: usize, v: usize) -> usize {
        self.additive.add(u, v)
    }

    pub fn neg(&self, u: usize) -> usize {
        self.additive.neg(u)
    }

    pub fn sub(&self, u: usize, v: usize) -> usize {
        self.additive.sub(u, v)
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        let n = self.n as usize;
        let p = self.p as i64;
        let cu = self.coeffs(u);
        let cv = self.coeffs(v);
        let mut full = vec![0i64; n];
        for (i, &a) in cu.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in cv.iter().enumerate() {
                let k = (i + j) % n;
                full[k] = (full[k] + a as i64 * b as i64) % p;
            }
        }
        self.reduce(full)
    }

    /// `c(q) = ξ q`.
    pub fn twist_c(&self, q: usize) -> usize {
        let mut full = vec![0i64; self.n as usize];
        for (i, &a) in self.coeffs(q).iter().enumerate() {
            full[i + 1] = a as i64;
        }
        self.reduce(full)
    }

    /// `f(q(ξ)) = q(ξ^t)`.
    pub fn twist_f(&self, t: u64, q: usize) -> Result<usize, RingError> {
        if gcd((t % self.n as u64) as u32, self.n) != 1 {
            return Err(RingError::TNotUnit { t, n: self.n });
        }
        Ok(self.substitute(t, q))
    }

    fn substitute(&self, t: u64, q: usize) -> usize {
        let n = self.n as u64;
        let mut full = vec![0i64; self.n as usize];
        for (i, &a) in self.coeffs(q).iter().enumerate() {
            let k = ((i as u64 % n) * (t % n) % n) as usize;
            full[k] = (full[k] + a as i64) % self.p as i64;
        }
        self.reduce(full)
    }

    /// Bilinear extension of `b(ξ^j, ξ^i) = 1 - δ_{ij}` on basis coordinates.
    pub fn form_b(&self, u: usize, v: usize) -> u32 {
        let p = self.p as u64;
        let cu = self.coeffs(u);
        let cv = self.coeffs(v);
        let su: u64 = cu.iter().map(|&x| x as u64).sum();
        let sv: u64 = cv.iter().map(|&x| x as u64).sum();
        let diag: u64 = cu.iter().zip(&cv).map(|(&a, &b)| a as u64 * b as u64).sum();
        ((su % p * (sv % p) + p * p - diag % (p * p)) % p) as u32
    }

    /// Gram matrix `b(ξ^j, ξ^i)` in the standard basis.
    pub fn gram(&self) -> Vec<Vec<u32>> {
        let d = self.dim();
        let basis: Vec<usize> = (0..d).map(|i| self.xi_powers[i]).collect();
        basis
            .iter()
            .map(|&u| basis.iter().map(|&v| self.form_b(u, v)).collect())
            .collect()
    }

    /// `c` as an automorphism of `(R, +)`.
    pub fn c_aut(&self) -> GroupAut {
        self.linear_aut(|q| self.twist_c(q))
    }

    /// `f` for the unit `t` as an automorphism of `(R, +)`.
    pub fn f_aut(&self, t: u64) -> Result<GroupAut, RingError> {
        self.twist_f(t, 0)?;
        Ok(self.linear_aut(|q| self.substitute(t, q)))
    }

    fn linear_aut(&self, map: impl Fn(usize) -> usize) -> GroupAut {
        let d = self.dim();
        let mut matrix = vec![vec![0i64; d]; d];
        for j in 0..d {
            let img = self.coeffs(map(self.xi_powers[j]));
            for i in 0..d {
                matrix[i][j] = img[i] as i64;
            }
        }
        let endo = GroupEndo::from_matrix(&self.additive, &matrix).expect("F_p-linear");
        GroupAut::from_endo_with_cap(endo, usize::MAX).expect("twist is bijective")
    }

    /// Whether `f_t` preserves the form, checked on every pair.
    pub fn f_orthogonal(&self, t: u64) -> bool {
        self.elements().all(|u| {
            self.elements().all(|v| {
                self.form_b(self.substitute(t, u), self.substitute(t, v)) == self.form_b(u, v)
            })
        })
    }

    /// `f c = c^t f` on every element.
    pub fn twists_commute(&self, t: u64) -> bool {
        self.elements().all(|q| {
            let lhs = self.substitute(t, self.twist_c(q));
            let mut rhs = self.substitute(t, q);
            for _ in 0..t % self.n as u64 {
                rhs = self.twist_c(rhs);
            }
            lhs == rhs
        })
    }

    pub fn label(&self, q: usize) -> String {
        let parts: Vec<String> = self.coeffs(q).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}
