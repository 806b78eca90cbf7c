use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transforms. `U·M·V = D`, `U` and `V` unimodular,
/// `D` diagonal with nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let n = r.min(c);
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let piv = d[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> Snf {
    debug_assert!(is_chain(&d));
    Snf { u, d, v }
}

fn is_chain(d: &IntMatrix) -> bool {
    let n = d.rows().min(d.cols());
    let diag: Vec<&BigInt> = (0..n).map(|i| &d[(i, i)]).collect();
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(w[0])
        }
    })
}

/// Row-style Hermite normal form of the row span of `m`: nonzero rows in echelon
/// form with positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let cols = m.cols();
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i)).collect();
    let mut k = 0;
    for col in 0..cols {
        loop {
            let nz: Vec<usize> = (k..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            for &i in &nz {
                if i == p {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[p][col]);
                let src = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
            }
        }
        let Some(p) = (k..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(k, p);
        if rows[k][col].is_negative() {
            for x in rows[k].iter_mut() {
                *x = -&*x;
            }
        }
        let piv_row = rows[k].clone();
        for i in 0..k {
            let q = rows[i][col].div_floor(&piv_row[col]);
            if !q.is_zero() {
                for (x, y) in rows[i].iter_mut().zip(&piv_row) {
                    *x -= &q * y;
                }
            }
        }
        k += 1;
    }
    rows.truncate(k);
    IntMatrix::from_big_rows(rows, cols)
}

/// Column-style Hermite normal form of the column span: lower-triangular
/// staircase with positive pivots. Zero columns are dropped.
pub fn column_hnf(m: &IntMatrix) -> IntMatrix {
    let h = row_hnf(&m.transpose()).transpose();
    if h.cols() == 0 {
        IntMatrix::zeros(m.rows(), 0)
    } else {
        h
    }
}

/// Basis of the integer right kernel `{x : m·x = 0}` as columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let idx: Vec<usize> = (rank..m.cols()).collect();
    let k = snf.v.select_columns(&idx);
    if k.cols() == 0 {
        IntMatrix::zeros(m.cols(), 0)
    } else {
        column_hnf(&k)
    }
}

/// Some integer solution of `m·x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, x) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(dd) if !dd.is_zero() => {
                if !x.is_multiple_of(dd) {
                    return None;
                }
                y[i] = x / dd;
            }
            _ => {
                if !x.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(snf.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m).diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn snf_of_small_cartan_matrices() {
        assert_eq!(diag_of(&IntMatrix::from_rows(&[[2, -1], [-1, 2]])), vec![1, 3]);
        assert_eq!(diag_of(&IntMatrix::identity(2)), vec![1, 1]);
        assert_eq!(diag_of(&IntMatrix::zeros(2, 3)), vec![0, 0]);
        let d4 = IntMatrix::from_rows(&[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]);
        assert_eq!(diag_of(&d4), vec![1, 1, 2, 2]);
    }

    #[test]
    fn identity_snf_has_trivial_transforms() {
        let s = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let b = IntMatrix::from_rows(&[[2, 3], [0, 3]]);
        assert_eq!(column_hnf(&a), column_hnf(&IntMatrix::from_rows(&[[2, 0], [3, 3]]).mul(&IntMatrix::from_rows(&[[1, 0], [-1, 1]]))));
        assert_ne!(column_hnf(&a), column_hnf(&b));
        let h = column_hnf(&IntMatrix::from_rows(&[[4, 6], [2, 2]]));
        assert_eq!(h, IntMatrix::from_rows(&[[2, 0], [0, 2]]));
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[[1, 2, 3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let x = solve_integer(&IntMatrix::from_rows(&[[2, 0], [0, 3]]), &[4.into(), 9.into()]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve_integer(&IntMatrix::from_rows(&[[2]]), &[1.into()]).is_none());
    }

    proptest! {
        #[test]
        fn snf_transforms_are_exact(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 5..i * 5 + cols].to_vec()).collect();
            let m = IntMatrix::from_rows(&data);
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
            prop_assert!(s.u.is_unimodular());
            prop_assert!(s.v.is_unimodular());
            prop_assert!(is_chain(&s.d));
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert!(s.d[(i, j)].is_zero());
                    }
                }
            }
        }

        #[test]
        fn hnf_spans_same_lattice(seed in proptest::collection::vec(-6i64..7, 9)) {
            let m = IntMatrix::from_rows(&[&seed[0..3], &seed[3..6], &seed[6..9]]);
            let h = column_hnf(&m);
            for j in 0..m.cols() {
                prop_assert!(solve_integer(&h, &m.col(j)).is_some() || h.cols() == 0 && m.col(j).iter().all(Zero::is_zero));
            }
            for j in 0..h.cols() {
                prop_assert!(solve_integer(&m, &h.col(j)).is_some());
            }
        }
    }
}
