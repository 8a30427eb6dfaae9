use thiserror::Error;

use super::grid::{construct_grid, GridError, GridShape};
use crate::abgroup::{gcd, FinAbGroup};
use crate::brace::{
    asymmetric_product, is_simple_brace, semidirect_trivial, socle, trivial_brace, AsymError, AsymSpec, FiniteBrace,
    SemidirectError, DEFAULT_BRACE_CAP,
};
use crate::cycring::{is_prime, CycRing, RingChecks, RingError};
use crate::ybcore::{
    find_solution_isomorphism, is_simple_solution, is_solution_homomorphism, make_solution_trusting_braid, Solution,
    SolutionError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no prime powers given")]
    NoPrimes,
    #[error("primes must be distinct (repeated {0})")]
    RepeatedPrime(u64),
    #[error("exponent of {0} must be at least 1")]
    ZeroExponent(u64),
    #[error("{p} does not divide {q} - 1")]
    NotDivisor { p: u64, q: u64 },
    #[error("brace would have {size} elements, above the cap {cap}")]
    SizeCapExceeded { size: u128, cap: usize },
    #[error("no unit of order {p} mod {n} with t - 1 a unit")]
    NoTwist { p: u64, n: u64 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ring hypotheses fail: {0:?}")]
    RingChecks(RingChecks),
    #[error(transparent)]
    Semidirect(#[from] SemidirectError),
    #[error(transparent)]
    Asym(#[from] AsymError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("lambda does not preserve the point set at ({x}, {y})")]
    NotClosed { x: usize, y: usize },
    #[error("restricted table is not a solution: {0}")]
    Solution(#[from] SolutionError),
    #[error("no isomorphism between the grid solution and the orbit")]
    NoIsomorphism,
    #[error("brace is not simple")]
    BraceNotSimple,
    #[error("solution is not simple")]
    SolutionNotSimple,
}

/// A simple brace `B` with the orbit `X'` that realizes the grid solution.
#[derive(Clone, Debug)]
pub struct SimpleFamily {
    pub p: u64,
    pub n: u64,
    pub t: u64,
    pub ring: CycRing,
    pub brace: FiniteBrace,
    /// Grid solution on `Z/n × Z/p × Z/p`.
    pub grid: Solution,
    /// `points[x]` is the brace element `(ξ^i, t^a, μ)` for grid point `x = (i,a,μ)`.
    pub points: Vec<usize>,
    /// `λ` restricted to the points, in grid indexing.
    pub orbit: Solution,
    /// Grid point `x` goes to orbit point `iso[x]`.
    pub iso: Vec<usize>,
    /// Whether `iso` is the identity, i.e. `(i,a,μ) ↦ (ξ^i, t^a, μ)` itself
    /// is an isomorphism.
    pub direct_map: bool,
    pub socle_size: usize,
}

/// Parses `3^1,5^2`; a bare prime means exponent 1.
pub fn parse_prime_powers(text: &str) -> Result<Vec<(u64, u32)>, String> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let item = item.trim();
            let (b, e) = item.split_once('^').unwrap_or((item, "1"));
            let b = b.trim().parse::<u64>().map_err(|_| format!("bad prime power {item}"))?;
            let e = e.trim().parse::<u32>().map_err(|_| format!("bad prime power {item}"))?;
            Ok((b, e))
        })
        .collect()
}

/// Least `t ∈ [2, n)` with `t^p ≡ 1 (mod n)` and `t - 1` a unit.
pub fn find_twist(p: u64, n: u64) -> Option<u64> {
    (2..n).find(|&t| {
        let mut x = 1u64;
        for _ in 0..p {
            x = x * t % n;
        }
        x == 1 && gcd((t - 1) as u32, n as u32) == 1
    })
}

pub fn construct_simple_family(p: u64, prime_powers: &[(u64, u32)]) -> Result<SimpleFamily, FamilyError> {
    construct_simple_family_with_cap(p, prime_powers, DEFAULT_BRACE_CAP)
}

pub fn construct_simple_family_with_cap(
    p: u64,
    prime_powers: &[(u64, u32)],
    cap: usize,
) -> Result<SimpleFamily, FamilyError> {
    if !is_prime(p as u32) || p > u32::MAX as u64 {
        return Err(FamilyError::NotPrime(p));
    }
    if prime_powers.is_empty() {
        return Err(FamilyError::NoPrimes);
    }
    let mut n = 1u64;
    for (k, &(q, m)) in prime_powers.iter().enumerate() {
        if !is_prime(q as u32) || q > u32::MAX as u64 {
            return Err(FamilyError::NotPrime(q));
        }
        if q == p || prime_powers[..k].iter().any(|&(o, _)| o == q) {
            return Err(FamilyError::RepeatedPrime(q));
        }
        if m == 0 {
            return Err(FamilyError::ZeroExponent(q));
        }
        if (q - 1) % p != 0 {
            return Err(FamilyError::NotDivisor { p, q });
        }
        n = n.saturating_mul(q.saturating_pow(m));
    }
    // |B| = p^{n-1} · n · p
    let size = (p as u128).checked_pow(n as u32).map(|v| v * n as u128);
    match size {
        Some(s) if s <= cap as u128 => {}
        _ => return Err(FamilyError::SizeCapExceeded { size: size.unwrap_or(u128::MAX), cap }),
    }
    let t = find_twist(p, n).ok_or(FamilyError::NoTwist { p, n })?;
    let ring = CycRing::new(p as u32, n as u32)?;
    let checks = ring.checks();
    if !(checks.form_nondegenerate && checks.c_orthogonal && checks.c_minus_id_invertible)
        || !ring.f_orthogonal(t)
        || !ring.twists_commute(t)
    {
        return Err(FamilyError::RingChecks(checks));
    }
    let zn = FinAbGroup::cyclic(n as u32).expect("n >= 2");
    let c = ring.c_aut();
    let mut action = Vec::with_capacity(n as usize);
    let mut cur = crate::abgroup::GroupAut::identity(ring.additive_group());
    for _ in 0..n {
        action.push(cur.clone());
        cur = cur.compose(&c);
    }
    let tb = semidirect_trivial(ring.additive_group(), &zn, &action)?;
    let f = ring.f_aut(t)?;
    let nu = n as usize;
    let rsize = ring.order();
    let mut alpha = Vec::with_capacity(p as usize);
    let mut fmu = crate::abgroup::GroupAut::identity(ring.additive_group());
    let mut tmu = 1u64;
    for _ in 0..p {
        let table: Vec<u32> = (0..rsize * nu)
            .map(|k| {
                let (u, a) = (k / nu, k % nu);
                (fmu.apply(u) * nu + (tmu * a as u64 % n) as usize) as u32
            })
            .collect();
        alpha.push(table);
        fmu = fmu.compose(&f);
        tmu = tmu * t % n;
    }
    let tsize = rsize * nu;
    let form: Vec<u32> = (0..tsize * tsize).map(|k| ring.form_b(k / tsize / nu, k % tsize / nu)).collect();
    let zp = FinAbGroup::cyclic(p as u32).expect("p prime");
    let spec = AsymSpec { left: tb, right: trivial_brace(&zp), alpha, form };
    let brace = asymmetric_product(&spec)?;

    let grid = construct_grid(n, p, t)?;
    let shape = GridShape { n, m: p };
    let tpow: Vec<u64> = (0..p).scan(1u64, |acc, _| {
        let cur = *acc;
        *acc = *acc * t % n;
        Some(cur)
    }).collect();
    let points: Vec<usize> = (0..shape.size())
        .map(|x| {
            let (i, a, mu) = shape.split(x);
            (ring.xi_pow(i as i64) * nu + tpow[a as usize] as usize) * p as usize + mu as usize
        })
        .collect();
    let mut where_is = vec![usize::MAX; brace.size()];
    for (x, &e) in points.iter().enumerate() {
        where_is[e] = x;
    }
    let mut rows = Vec::with_capacity(points.len());
    for (x, &ex) in points.iter().enumerate() {
        let mut row = Vec::with_capacity(points.len());
        for (y, &ey) in points.iter().enumerate() {
            let img = where_is[brace.lambda(ex, ey)];
            if img == usize::MAX {
                return Err(FamilyError::NotClosed { x, y });
            }
            row.push(img);
        }
        rows.push(row);
    }
    let orbit = make_solution_trusting_braid(rows, grid.labels().to_vec())?;
    let identity: Vec<usize> = (0..points.len()).collect();
    let direct_map = orbit == grid;
    let iso = if direct_map {
        identity
    } else {
        find_solution_isomorphism(&grid, &orbit).ok_or(FamilyError::NoIsomorphism)?
    };
    debug_assert!(is_solution_homomorphism(&grid, &orbit, &iso));
    if !is_simple_brace(&brace) {
        return Err(FamilyError::BraceNotSimple);
    }
    if !is_simple_solution(&grid).simple {
        return Err(FamilyError::SolutionNotSimple);
    }
    let socle_size = socle(&brace).size();
    Ok(SimpleFamily { p, n, t, ring, brace, grid, points, orbit, iso, direct_map, socle_size })
}
