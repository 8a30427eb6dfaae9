use thiserror::Error;

use crate::abgroup::gcd;
use crate::ybcore::{is_indecomposable, is_irretractable, make_solution, Solution, SolutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("n and m must both exceed 1 (got n = {n}, m = {m})")]
    TooSmall { n: u64, m: u64 },
    #[error("t = {t} is not a unit mod {n}")]
    NotUnit { t: u64, n: u64 },
    #[error("t = {t} has order {order} mod {n}, expected {m}")]
    WrongOrder { t: u64, n: u64, m: u64, order: u64 },
    #[error("table fails validation: {0}")]
    Solution(#[from] SolutionError),
    #[error("inverse formula disagrees with the table at row {x}, point {y}")]
    InverseMismatch { x: usize, y: usize },
    #[error("solution is not indecomposable")]
    Decomposable,
    #[error("solution is not irretractable")]
    Retractable,
}

/// Multiplicative order of `t` mod `n`; `t` must be a unit.
pub fn unit_order(t: u64, n: u64) -> u64 {
    let mut x = t % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * t % n;
        k += 1;
    }
    k
}

/// Points `(i, a, μ) ∈ Z/n × Z/m × Z/m`, index `(i·m + a)·m + μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridShape {
    pub n: u64,
    pub m: u64,
}

impl GridShape {
    pub fn size(&self) -> usize {
        (self.n * self.m * self.m) as usize
    }

    pub fn index(&self, i: u64, a: u64, mu: u64) -> usize {
        ((i % self.n * self.m + a % self.m) * self.m + mu % self.m) as usize
    }

    pub fn split(&self, x: usize) -> (u64, u64, u64) {
        let x = x as u64;
        (x / (self.m * self.m), x / self.m % self.m, x % self.m)
    }
}

/// `σ_{(i,a,μ)}(j,c,ν) = (t^μ j + t^a, c + μ, ν + 1 - δ_{i, t^μ j + t^a})`.
pub fn construct_grid(n: u64, m: u64, t: u64) -> Result<Solution, GridError> {
    if n < 2 || m < 2 {
        return Err(GridError::TooSmall { n, m });
    }
    if gcd((t % n) as u32, n as u32) != 1 {
        return Err(GridError::NotUnit { t, n });
    }
    let order = unit_order(t, n);
    if order != m {
        return Err(GridError::WrongOrder { t, n, m, order });
    }
    let shape = GridShape { n, m };
    let pows: Vec<u64> = (0..m).scan(1 % n, |acc, _| {
        let cur = *acc;
        *acc = *acc * t % n;
        Some(cur)
    }).collect();
    let inv_pows: Vec<u64> = (0..m).map(|k| pows[((m - k) % m) as usize]).collect();
    let size = shape.size();
    let rows: Vec<Vec<usize>> = (0..size)
        .map(|x| {
            let (i, a, mu) = shape.split(x);
            (0..size)
                .map(|y| {
                    let (j, c, nu) = shape.split(y);
                    let first = (pows[mu as usize] * j + pows[a as usize]) % n;
                    let third = nu + 1 + m - (i == first) as u64;
                    shape.index(first, c + mu, third)
                })
                .collect()
        })
        .collect();
    let labels = (0..size)
        .map(|x| {
            let (i, a, mu) = shape.split(x);
            format!("({i},{a},{mu})")
        })
        .collect();
    let s = make_solution(rows, labels)?;
    // σ⁻¹_{(i,a,μ)}(j,c,ν) = (t^{-μ}(j - t^a), c - μ, ν - 1 + δ_{i,j})
    for x in 0..size {
        let (i, a, mu) = shape.split(x);
        for y in 0..size {
            let (j, c, nu) = shape.split(y);
            let first = inv_pows[mu as usize] * ((j + n - pows[a as usize]) % n) % n;
            let inv = shape.index(first, c + m - mu, nu + m - 1 + (i == j) as u64);
            if s.sigma_inv(x, y) != inv {
                return Err(GridError::InverseMismatch { x, y });
            }
        }
    }
    if !is_indecomposable(&s) {
        return Err(GridError::Decomposable);
    }
    if !is_irretractable(&s) {
        return Err(GridError::Retractable);
    }
    Ok(s)
}
