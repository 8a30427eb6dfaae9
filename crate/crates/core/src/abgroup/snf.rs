//! Diagonalization of integer relation matrices, tracking column operations.
//!
//! For a relation matrix `A` (rows are relations on `k` generators) this
//! returns a diagonal `d` and a unimodular `V` with `row_space(A) V =
//! ⊕ d_i Z`. The divisibility chain of a full Smith form is not needed here.

pub(super) struct Diagonal {
    pub diag: Vec<i128>,
    /// `k x k`, column operations applied to the identity.
    pub v: Vec<Vec<i128>>,
}

pub(super) fn diagonalize(mut a: Vec<Vec<i128>>, k: usize) -> Diagonal {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| (i == j) as i128).collect())
        .collect();
    let mut diag = Vec::with_capacity(k);

    let swap_cols = |a: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, c1: usize, c2: usize| {
        for row in a.iter_mut() {
            row.swap(c1, c2);
        }
        for row in v.iter_mut() {
            row.swap(c1, c2);
        }
    };

    for p in 0..k.min(rows) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in p..rows {
                for j in p..k {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap(p, bi);
            swap_cols(&mut a, &mut v, p, bj);

            let pivot = a[p][p];
            let mut clean = true;
            for i in p + 1..rows {
                let q = a[i][p].div_euclid(pivot);
                if q != 0 {
                    for j in p..k {
                        a[i][j] -= q * a[p][j];
                    }
                }
                clean &= a[i][p] == 0;
            }
            for j in p + 1..k {
                let q = a[p][j].div_euclid(pivot);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[p];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[p];
                    }
                }
                clean &= a[p][j] == 0;
            }
            if clean {
                break;
            }
        }
        diag.push(a[p][p].abs());
    }
    while diag.len() < k {
        diag.push(0);
    }
    Diagonal { diag, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_mod_three() {
        // Z6 with relation 3: quotient Z3.
        let d = diagonalize(vec![vec![6], vec![3]], 1);
        assert_eq!(d.diag, vec![3]);
    }

    #[test]
    fn klein_mod_diagonal() {
        let d = diagonalize(vec![vec![2, 0], vec![0, 2], vec![1, 1]], 2);
        let mut diag = d.diag.clone();
        diag.sort();
        assert_eq!(diag, vec![1, 2]);
    }
}
