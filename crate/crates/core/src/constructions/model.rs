use thiserror::Error;

use super::newsol::{newsol_rows, pair_labels};
use super::JFamily;
use crate::abgroup::{gcd, quotient_map, subgroup_generated, FinAbGroup, GroupAut, GroupError};
use crate::brace::{
    asymmetric_product, brace_from_solution, find_brace_isomorphism, semidirect_trivial, socle, trivial_brace,
    AsymError, AsymSpec, BraceFromSolutionError, FiniteBrace, PermBrace, SemidirectError, DEFAULT_BRACE_CAP,
};
use crate::ybcore::{make_solution_trusting_braid, Solution, SolutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("the group must be nontrivial")]
    TrivialGroup,
    #[error("t - id is not invertible")]
    TMinusIdNotInvertible,
    #[error("model would have {size} elements, above the cap {cap}")]
    SizeCapExceeded { size: u128, cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Semidirect(#[from] SemidirectError),
    #[error(transparent)]
    Asym(#[from] AsymError),
    #[error("lambda does not preserve the point set at ({x}, {y})")]
    NotClosed { x: usize, y: usize },
    #[error("restricted table is not a solution: {0}")]
    Solution(#[from] SolutionError),
    #[error("point map is not an isomorphism at ({x}, {y})")]
    PointMapMismatch { x: usize, y: usize },
    #[error("points generate {got} of {expected} elements additively")]
    NotGenerated { got: usize, expected: usize },
    #[error("radical computations disagree (enumeration {enumeration}, basis {basis}, socle {socle})")]
    RadicalMismatch { enumeration: usize, basis: usize, socle: usize },
    #[error("order of t ({order}) and exponent {n} are not coprime")]
    NotCoprime { order: u64, n: u32 },
    #[error("induced {0} is not well defined on the quotient")]
    NotWellDefined(&'static str),
    #[error(transparent)]
    PermBrace(#[from] BraceFromSolutionError),
    #[error("model has order {model}, permutation group brace has order {group}")]
    OrderMismatch { model: usize, group: usize },
    #[error("model and permutation group brace are not isomorphic")]
    NoIsomorphism,
}

/// `B' = H' ⋊_∘ A1` with `H' = (Z/n)^A`, `A1 = A ⋊ ⟨t⟩`, and the points
/// `x'_{(a,c)} = (e'_a, (c - t(t-id)⁻¹ j_0, t))`.
#[derive(Clone, Debug)]
pub struct AsymModel {
    pub family: JFamily,
    pub exponent: u32,
    pub t_order: u64,
    /// Maps `A → Z/n`; residue `x` of an element is its value at `x`.
    pub hprime: FinAbGroup,
    /// Index `c·ord(t) + z` for `(c, t^z)`.
    pub a1: FiniteBrace,
    /// `alpha[s]` is the image table of `α'(s)` on `H'`.
    pub alpha: Vec<Vec<u32>>,
    /// `form[f·|H'| + h]` is `b'(f, h)` as an element of `A1`.
    pub form: Vec<u32>,
    /// Index `f·|A1| + s`.
    pub brace: FiniteBrace,
    /// `points[a·|A| + c]` is `x'_{(a,c)}`.
    pub points: Vec<usize>,
    /// `λ` restricted to the points, indexed like the points.
    pub orbit: Solution,
    /// `gcd(ord t, n) = 1`.
    pub coprime: bool,
    /// Size of the additive subgroup generated by the points.
    pub generated_size: usize,
    /// Radical of `b'`, sorted.
    pub radical: Vec<usize>,
}

pub fn build_asym_model(fam: &JFamily) -> Result<AsymModel, ModelError> {
    build_asym_model_with_cap(fam, DEFAULT_BRACE_CAP)
}

pub fn build_asym_model_with_cap(fam: &JFamily, cap: usize) -> Result<AsymModel, ModelError> {
    let g = fam.group();
    let t = fam.t();
    let q = g.order();
    if q < 2 {
        return Err(ModelError::TrivialGroup);
    }
    let u = GroupAut::from_endo_with_cap(t.minus_identity(), usize::MAX)
        .map_err(|_| ModelError::TMinusIdNotInvertible)?
        .inverse();
    let n = g.exponent();
    let ord = fam.t_order();
    let size = (n as u128).checked_pow(q as u32).map(|h| h * (q as u128) * ord as u128);
    match size {
        Some(s) if s <= cap as u128 => {}
        _ => return Err(ModelError::SizeCapExceeded { size: size.unwrap_or(u128::MAX), cap }),
    }
    let hprime = FinAbGroup::power(n, q)?;
    let nh = hprime.order();
    let zord = if ord == 1 { FinAbGroup::trivial() } else { FinAbGroup::cyclic(ord as u32)? };
    let t_pows: Vec<GroupAut> = (0..ord).map(|z| t.pow(z as i64)).collect();
    let a1 = semidirect_trivial(g, &zord, &t_pows)?;
    let na1 = a1.size();
    let ordu = ord as usize;
    let j0 = fam.j(0);

    // g_{(a,z)}(x) = t^{-z}(x - a - (t-id)^{-2}(t^{z+1} - t) j_0)
    let shift: Vec<usize> = (0..ordu)
        .map(|z| {
            let v = g.sub(t.pow(z as i64 + 1).apply(j0), t.apply(j0));
            u.apply(u.apply(v))
        })
        .collect();
    let values: Vec<Vec<u32>> = (0..nh).map(|f| hprime.residues(f)).collect();
    let alpha: Vec<Vec<u32>> = (0..na1)
        .map(|s| {
            let (a, z) = (s / ordu, s % ordu);
            let gmap: Vec<usize> = (0..q)
                .map(|x| t_pows[(ordu - z) % ordu].apply(g.sub(g.sub(x, a), shift[z])))
                .collect();
            (0..nh)
                .map(|f| {
                    let img: Vec<i64> = gmap.iter().map(|&gx| values[f][gx] as i64).collect();
                    hprime.index_of(&img) as u32
                })
                .collect()
        })
        .collect();

    // b'(f,h) = Σ f(x) h(y) t(j_{x-y} - j_0)
    let kernel: Vec<usize> = (0..q * q).map(|k| t.apply(g.sub(fam.j(g.sub(k / q, k % q)), j0))).collect();
    let form_value = |f: usize, h: usize| -> usize {
        let mut acc = 0;
        for x in 0..q {
            let fx = values[f][x] as i64;
            if fx == 0 {
                continue;
            }
            for y in 0..q {
                let hy = values[h][y] as i64;
                if hy != 0 {
                    acc = g.add(acc, g.scale(fx * hy, kernel[x * q + y]));
                }
            }
        }
        acc
    };
    let form_a: Vec<usize> = (0..nh * nh).map(|k| form_value(k / nh, k % nh)).collect();
    let form: Vec<u32> = form_a.iter().map(|&w| (w * ordu) as u32).collect();
    let spec = AsymSpec { left: trivial_brace(&hprime), right: a1.clone(), alpha: alpha.clone(), form: form.clone() };
    let brace = asymmetric_product(&spec)?;

    // x'_{(a,c)} = (e'_a, (c - t(t-id)⁻¹ j_0, t))
    let offset = t.apply(u.apply(j0));
    let z1 = 1 % ordu;
    let points: Vec<usize> = (0..q * q)
        .map(|k| {
            let (a, c) = (k / q, k % q);
            let e = hprime.generator(a);
            e * na1 + g.sub(c, offset) * ordu + z1
        })
        .collect();
    let mut where_is = vec![usize::MAX; brace.size()];
    for (k, &e) in points.iter().enumerate() {
        where_is[e] = k;
    }
    let mut rows = Vec::with_capacity(q * q);
    for (x, &ex) in points.iter().enumerate() {
        let mut row = Vec::with_capacity(q * q);
        for (y, &ey) in points.iter().enumerate() {
            let img = where_is[brace.lambda(ex, ey)];
            if img == usize::MAX {
                return Err(ModelError::NotClosed { x, y });
            }
            row.push(img);
        }
        rows.push(row);
    }
    let expected = newsol_rows(fam);
    for (x, (got, want)) in rows.iter().zip(&expected).enumerate() {
        if let Some(y) = (0..q * q).find(|&y| got[y] != want[y]) {
            return Err(ModelError::PointMapMismatch { x, y });
        }
    }
    let orbit = make_solution_trusting_braid(rows, pair_labels(g))?;

    let coprime = gcd(ord as u32, n) == 1;
    let generated_size = additive_closure(&brace, &points);
    if coprime && generated_size != brace.size() {
        return Err(ModelError::NotGenerated { got: generated_size, expected: brace.size() });
    }

    // Radical three ways: all h, the basis e'_y, and the socle of B'.
    let radical: Vec<usize> = (0..nh).filter(|&f| (0..nh).all(|h| form_a[f * nh + h] == 0)).collect();
    let basis: Vec<usize> = (0..nh).filter(|&f| (0..q).all(|y| form_a[f * nh + hprime.generator(y)] == 0)).collect();
    let soc = socle(&brace);
    let from_socle: Vec<usize> = soc.elements().iter().filter(|&&e| e % na1 == 0).map(|&e| e / na1).collect();
    if radical != basis || radical != from_socle || soc.size() != from_socle.len() {
        return Err(ModelError::RadicalMismatch {
            enumeration: radical.len(),
            basis: basis.len(),
            socle: soc.size(),
        });
    }
    Ok(AsymModel {
        family: fam.clone(),
        exponent: n,
        t_order: ord,
        hprime,
        a1,
        alpha,
        form,
        brace,
        points,
        orbit,
        coprime,
        generated_size,
        radical,
    })
}

fn additive_closure(b: &FiniteBrace, gens: &[usize]) -> usize {
    let mut seen = vec![false; b.size()];
    seen[b.zero()] = true;
    let mut queue = vec![b.zero()];
    let mut count = 1;
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = b.add(x, g);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                queue.push(y);
            }
        }
    }
    count
}

/// The quotient model `H'/H₁ ⋊_∘ A1` checked against the permutation group.
#[derive(Clone, Debug)]
pub struct ModelBrace {
    pub brace: FiniteBrace,
    pub radical_order: usize,
    pub group: PermBrace,
    /// Model element `k` goes to group element `iso[k]`.
    pub iso: Vec<usize>,
}

pub fn model_perm_brace(m: &AsymModel) -> Result<ModelBrace, ModelError> {
    if !m.coprime {
        return Err(ModelError::NotCoprime { order: m.t_order, n: m.exponent });
    }
    let h = &m.hprime;
    let nh = h.order();
    let sub = subgroup_generated(h, &m.radical);
    let quo = quotient_map(h, &sub);
    let reps = quo.representatives();
    let nq = quo.group.order();
    let na1 = m.a1.size();
    let mut alpha = Vec::with_capacity(na1);
    for table in &m.alpha {
        let bar: Vec<u32> = reps.iter().map(|&r| quo.project(table[r] as usize) as u32).collect();
        if (0..nh).any(|f| bar[quo.project(f)] as usize != quo.project(table[f] as usize)) {
            return Err(ModelError::NotWellDefined("action"));
        }
        alpha.push(bar);
    }
    let mut form = vec![0u32; nq * nq];
    for (k1, &r1) in reps.iter().enumerate() {
        for (k2, &r2) in reps.iter().enumerate() {
            form[k1 * nq + k2] = m.form[r1 * nh + r2];
        }
    }
    for f in 0..nh {
        for g in 0..nh {
            if m.form[f * nh + g] != form[quo.project(f) * nq + quo.project(g)] {
                return Err(ModelError::NotWellDefined("form"));
            }
        }
    }
    let spec = AsymSpec { left: trivial_brace(&quo.group), right: m.a1.clone(), alpha, form };
    let brace = asymmetric_product(&spec)?;
    let group = brace_from_solution(&m.orbit)?;
    if brace.size() != group.brace.size() {
        return Err(ModelError::OrderMismatch { model: brace.size(), group: group.brace.size() });
    }
    let iso = find_brace_isomorphism(&brace, &group.brace).ok_or(ModelError::NoIsomorphism)?;
    Ok(ModelBrace { brace, radical_order: sub.order(), group, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::aut_from_matrix;
    use crate::brace::{quotient_brace, PropertyReport};
    use crate::constructions::{construct_newsol, make_jfamily};
    use crate::par::Exec;

    fn klein_family() -> JFamily {
        let v = FinAbGroup::parse("Z2xZ2").unwrap();
        let t = aut_from_matrix(&v, &[vec![0, 1], vec![1, 1]]).unwrap();
        let ja: Vec<(usize, usize)> = v.elements().map(|a| (a, a)).collect();
        make_jfamily(&v, &t, &ja).unwrap()
    }

    #[test]
    fn klein_model() {
        let fam = klein_family();
        let m = build_asym_model(&fam).unwrap();
        assert_eq!(m.hprime.order(), 16);
        assert_eq!(m.a1.size(), 12);
        assert_eq!(m.brace.size(), 192);
        assert!(m.coprime);
        assert_eq!(m.generated_size, 192);
        assert_eq!(m.orbit, construct_newsol(&fam).unwrap().with_labels(m.orbit.labels().to_vec()).unwrap());
        // Independent radical: Σ f(x) = 0 and Σ f(x)·x = 0 over F_2.
        let g = fam.group();
        let oracle: Vec<usize> = (0..16)
            .filter(|&f| {
                let r = m.hprime.residues(f);
                let total: u32 = r.iter().sum();
                let weighted = g.sum((0..4).filter(|&x| r[x] == 1));
                total.is_multiple_of(2) && weighted == 0
            })
            .collect();
        assert_eq!(m.radical, oracle);
        assert_eq!(m.radical.len(), 2);
        let mb = model_perm_brace(&m).unwrap();
        assert_eq!(mb.brace.size(), 96);
        assert_eq!(mb.group.group.order(), 96);
        assert!(PropertyReport::run(&mb.brace, Exec::default()).all_hold());
        let (q, _) = quotient_brace(&m.brace, &socle(&m.brace)).unwrap();
        assert!(find_brace_isomorphism(&q, &mb.brace).is_some());
    }

    #[test]
    fn degenerate_cases() {
        let z3 = FinAbGroup::cyclic(3).unwrap();
        let two = aut_from_matrix(&z3, &[vec![2]]).unwrap();
        let fam = make_jfamily(&z3, &two, &[(0, 1), (1, 1), (2, 1)]).unwrap();
        let m = build_asym_model(&fam).unwrap();
        assert_eq!(m.brace.size(), 27 * 6);
        assert_eq!(m.radical.len(), 27);
        let mb = model_perm_brace(&m).unwrap();
        assert!(find_brace_isomorphism(&mb.brace, &m.a1).is_some());
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let id = GroupAut::identity(&z2);
        let f2 = make_jfamily(&z2, &id, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(build_asym_model(&f2).unwrap_err(), ModelError::TMinusIdNotInvertible);
    }
}
