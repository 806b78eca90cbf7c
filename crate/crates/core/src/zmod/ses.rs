//! Short exact sequences `0 → A → B → C → 0` of finitely generated abelian
//! groups and their duals under `Hom(-, U(1))` / `Hom(-, Z)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::{FinAbGroup, FinAbHom};
use super::matrix::{rat_vec, solve_rational, IntMatrix};
use super::snf::solve_integer;
use super::ZmodError;

/// `0 → f.source() →f f.target() →g g.target() → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortExactSequence {
    pub f: FinAbHom,
    pub g: FinAbHom,
}

impl ShortExactSequence {
    /// Checks exactness at all three positions.
    pub fn new(f: FinAbHom, g: FinAbHom) -> Result<Self, ZmodError> {
        check_exact(&f, &g)?;
        Ok(ShortExactSequence { f, g })
    }

    pub fn left(&self) -> &FinAbGroup {
        self.f.source()
    }

    pub fn middle(&self) -> &FinAbGroup {
        self.f.target()
    }

    pub fn right(&self) -> &FinAbGroup {
        self.g.target()
    }
}

fn in_span(m: &IntMatrix, v: &[BigInt]) -> bool {
    if m.cols() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    solve_integer(m, v).is_some()
}

fn check_exact(f: &FinAbHom, g: &FinAbHom) -> Result<(), ZmodError> {
    if f.target() != g.source() {
        return Err(ZmodError::DimensionMismatch);
    }
    if !f.is_injective() || !g.is_surjective() {
        return Err(ZmodError::NotExact);
    }
    let gf = f.then(g)?;
    if !gf.is_zero() {
        return Err(ZmodError::NotExact);
    }
    let image = f.matrix().hstack(&f.target().relations());
    let ker = g.kernel_lifts();
    if !(0..ker.cols()).all(|j| in_span(&image, &ker.col(j))) {
        return Err(ZmodError::NotExact);
    }
    Ok(())
}

/// Transpose of the hom `f: A → B` between finite groups, in standard dual coordinates:
/// `f^∨: B^∨ → A^∨`, entry `(j, i) = m_ij · d_j(A) / d_i(B)`.
fn finite_dual(f: &FinAbHom) -> Result<FinAbHom, ZmodError> {
    let (a, b) = (f.source(), f.target());
    let m = f.matrix();
    let mut t = IntMatrix::zeros(a.ngens(), b.ngens());
    for j in 0..a.ngens() {
        for i in 0..b.ngens() {
            let v = &m[(i, j)] * &a.invariant_factors()[j];
            t[(j, i)] = v / &b.invariant_factors()[i];
        }
    }
    FinAbHom::new(b.clone(), a.clone(), t)
}

/// Dualizes a short exact sequence.
///
/// Supported shapes:
/// * finite → finite → finite: Pontryagin duality, `0 → C^∨ → B^∨ → A^∨ → 0`;
/// * free → free → finite: `0 → B* → A* → Ext(C, Z) ≅ C^∨ → 0`, the connecting map
///   extending characters over `Q` and reducing modulo `Z`;
/// * free → free → free: transpose.
pub fn dualize_ses(f: &FinAbHom, g: &FinAbHom) -> Result<ShortExactSequence, ZmodError> {
    check_exact(f, g)?;
    let (a, b, c) = (f.source(), f.target(), g.target());
    if a.is_finite() && b.is_finite() && c.is_finite() {
        let gd = finite_dual(g)?;
        let fd = finite_dual(f)?;
        return ShortExactSequence::new(gd, fd);
    }
    let all_free = |x: &FinAbGroup| x.torsion_rank() == 0;
    if all_free(a) && all_free(b) && all_free(c) {
        let gd = FinAbHom::new(c.clone(), b.clone(), g.matrix().transpose())?;
        let fd = FinAbHom::new(b.clone(), a.clone(), f.matrix().transpose())?;
        return ShortExactSequence::new(gd, fd);
    }
    if all_free(a) && all_free(b) && c.is_finite() {
        return dualize_lattice_to_finite(f, g);
    }
    Err(ZmodError::UnsupportedShape)
}

fn dualize_lattice_to_finite(f: &FinAbHom, g: &FinAbHom) -> Result<ShortExactSequence, ZmodError> {
    let (a, b, c) = (f.source(), f.target(), g.target());
    let fm = f.matrix();
    let n = b.ngens();
    debug_assert_eq!(a.ngens(), n);
    let ft = FinAbHom::new(b.clone(), a.clone(), fm.transpose())?;
    // lifts of the generators of C to B
    let surj = g.matrix().hstack(&c.relations());
    let mut conn = IntMatrix::zeros(c.ngens(), a.ngens());
    for (i, d) in c.invariant_factors().iter().enumerate() {
        let sol = solve_integer(&surj, &c.generator(i)).ok_or(ZmodError::NotExact)?;
        let lift = rat_vec(&sol[..n]);
        let pre = solve_rational(fm, &lift).ok_or(ZmodError::NotExact)?;
        for (k, v) in pre.iter().enumerate() {
            let x = v * BigRational::from_integer(d.clone());
            if !x.is_integer() {
                return Err(ZmodError::NotExact);
            }
            conn[(i, k)] = x.to_integer();
        }
    }
    let delta = FinAbHom::new(a.clone(), c.clone(), conn)?;
    ShortExactSequence::new(ft, delta)
}

/// Dualizes twice and returns the canonical comparison maps `(A → A'', B → B'', C → C'')`,
/// each of which is an isomorphism for an exact input.
pub fn double_dual_comparison(seq: &ShortExactSequence) -> Result<(ShortExactSequence, [FinAbHom; 3]), ZmodError> {
    let d1 = dualize_ses(&seq.f, &seq.g)?;
    let d2 = dualize_ses(&d1.f, &d1.g)?;
    let ids = [
        FinAbHom::new(seq.left().clone(), d2.left().clone(), IntMatrix::identity(seq.left().ngens()))?,
        FinAbHom::new(seq.middle().clone(), d2.middle().clone(), IntMatrix::identity(seq.middle().ngens()))?,
        FinAbHom::new(seq.right().clone(), d2.right().clone(), IntMatrix::identity(seq.right().ngens()))?,
    ];
    Ok((d2, ids))
}

/// Does the square `f1, f2` commute with vertical maps `va, vb`: `vb ∘ f1 = f2 ∘ va`?
pub fn square_commutes(f1: &FinAbHom, f2: &FinAbHom, va: &FinAbHom, vb: &FinAbHom) -> bool {
    match (f1.then(vb), va.then(f2)) {
        (Ok(x), Ok(y)) => (0..x.source().ngens()).all(|j| {
            let e = x.source().generator(j);
            x.apply(&e) == y.apply(&e)
        }),
        _ => false,
    }
}

/// Multiplication-by-`n` sequence `0 → Z →n Z → Z/n → 0`.
pub fn kummer_sequence(n: u64) -> ShortExactSequence {
    let z = FinAbGroup::free(1);
    let zn = FinAbGroup::cyclic(n);
    let f = FinAbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[[n as i64]])).unwrap();
    let g_mat = if zn.is_trivial() { IntMatrix::zeros(0, 1) } else { IntMatrix::from_rows(&[[1]]) };
    let g = FinAbHom::new(z, zn, g_mat).unwrap();
    ShortExactSequence::new(f, g).expect("Kummer sequence is exact")
}
