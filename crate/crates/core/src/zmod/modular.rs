use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Inverse of `a` modulo `n`, in `[0, n)`.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    if n.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(n).extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}

/// Is `x ≡ ±1 (mod n)`?
pub fn is_plus_minus_one(x: &BigInt, n: &BigInt) -> bool {
    let r = x.mod_floor(n);
    r == BigInt::one().mod_floor(n) || r == (n - BigInt::one())
}

/// Lifts `diag(a, a⁻¹) mod n` to `SL_2(Z)`.
fn lift_diagonal_pair(a: &BigInt, n: &BigInt) -> IntMatrix {
    let b = mod_inverse(a, n).expect("unit");
    let k = (a * &b - BigInt::one()) / n;
    let e = a.extended_gcd(n);
    debug_assert!(e.gcd.is_one());
    let (x, y) = (e.x, e.y);
    let m = IntMatrix::from_big_rows(
        vec![vec![a.clone(), n.clone()], vec![n * &k * &y, &b - n * &k * &x]],
        2,
    );
    debug_assert!(m.det().is_one());
    m
}

/// Lifts a square matrix over `Z/n` to `GL_s(Z)`. Possible iff `s >= 2` and
/// `det ≡ ±1 (mod n)`, or `s = 1` and the entry is `±1 (mod n)`. The returned
/// matrix reduces to `a` modulo `n` and has determinant `±1`.
pub fn lift_to_gl(a: &IntMatrix, n: &BigInt) -> Option<IntMatrix> {
    let s = a.rows();
    assert!(a.is_square());
    assert!(n.is_positive());
    let a = a.mod_floor(n);
    if s == 0 {
        return Some(IntMatrix::identity(0));
    }
    if n.is_one() {
        return Some(IntMatrix::identity(s));
    }
    let det = a.det();
    if !is_plus_minus_one(&det, n) {
        return None;
    }
    if s == 1 {
        let v = if a[(0, 0)].is_one() { 1 } else { -1 };
        return Some(IntMatrix::from_rows(&[[v]]));
    }
    // make det ≡ 1 by negating the first row; undone at the end
    let flip = !det.mod_floor(n).is_one();
    let mut work = a.clone();
    if flip {
        work.negate_row(0);
    }
    let snf = smith_normal_form(&work);
    let diag = snf.diagonal();
    let eps = snf.u.det() * snf.v.det();
    // L ≡ D mod n with det L = det U · det V
    let mut l = IntMatrix::identity(s);
    let mut acc = BigInt::one();
    for i in 0..s - 1 {
        acc = (&acc * &diag[i]).mod_floor(n);
        let x = lift_diagonal_pair(&acc, n);
        let mut emb = IntMatrix::identity(s);
        emb[(i, i)] = x[(0, 0)].clone();
        emb[(i, i + 1)] = x[(0, 1)].clone();
        emb[(i + 1, i)] = x[(1, 0)].clone();
        emb[(i + 1, i + 1)] = x[(1, 1)].clone();
        l = l.mul(&emb);
    }
    let mut last = IntMatrix::identity(s);
    last[(s - 1, s - 1)] = eps.clone();
    l = l.mul(&last);
    let uinv = snf.u.unimodular_inverse()?;
    let vinv = snf.v.unimodular_inverse()?;
    let mut lift = uinv.mul(&l).mul(&vinv);
    if flip {
        lift.negate_row(0);
    }
    debug_assert!(lift.is_unimodular());
    (lift.mod_floor(n) == a && lift.is_unimodular()).then_some(lift)
}

/// All `s × s` matrices over `Z/n` with determinant `±1`, in lexicographic order.
pub fn gl_plus_minus_one(s: usize, n: u64) -> Vec<IntMatrix> {
    let total = (n as u128).pow((s * s) as u32);
    let big_n = BigInt::from(n);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut m = IntMatrix::zeros(s, s);
        for k in (0..s * s).rev() {
            m[(k / s, k % s)] = BigInt::from((rest % n as u128) as u64);
            rest /= n as u128;
        }
        if is_plus_minus_one(&m.det(), &big_n) {
            out.push(m);
        }
    }
    out
}
