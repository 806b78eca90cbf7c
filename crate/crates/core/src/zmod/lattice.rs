use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::group::{cokernel_with_maps, FinAbGroup};
use super::matrix::{common_denominator, IntMatrix};
use super::snf::{column_hnf, integer_kernel, solve_integer};
use super::ZmodError;

/// A lattice in `Q^n`, stored as `basis / denominator` with `basis` an integer
/// matrix of independent columns in column Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix,
    denominator: BigInt,
}

impl Lattice {
    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        Self::from_integer_columns(&IntMatrix::identity(n))
    }

    /// The zero lattice in `Q^n`.
    pub fn zero(n: usize) -> Self {
        Self::from_integer_columns(&IntMatrix::zeros(n, 0))
    }

    /// Integer span of the columns of `m` (columns may be dependent).
    pub fn from_integer_columns(m: &IntMatrix) -> Self {
        Self::from_scaled(m, BigInt::one())
    }

    /// Span of the columns of `m`, divided by `den`.
    pub fn from_scaled(m: &IntMatrix, den: BigInt) -> Self {
        assert!(!den.is_zero());
        let n = m.rows();
        let mut basis = column_hnf(m);
        // span(-B) = span(B)
        let mut den = den.abs();
        let mut g = den.clone();
        for j in 0..basis.cols() {
            for i in 0..n {
                g = g.gcd(&basis[(i, j)]);
            }
        }
        if !g.is_one() {
            let data: Vec<Vec<BigInt>> = (0..n).map(|i| basis.row(i).iter().map(|x| x / &g).collect()).collect();
            basis = IntMatrix::from_big_rows(data, basis.cols());
            den /= &g;
        }
        if basis.cols() == 0 {
            den = BigInt::one();
        }
        Lattice { ambient_rank: n, basis: if basis.cols() == 0 { IntMatrix::zeros(n, 0) } else { basis }, denominator: den }
    }

    /// Integer span of rational generators in `Q^n`.
    pub fn from_generators(gens: &[Vec<BigRational>], n: usize) -> Self {
        let all: Vec<BigRational> = gens.iter().flatten().cloned().collect();
        let den = common_denominator(&all);
        let cols: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|v| {
                assert_eq!(v.len(), n, "generator of wrong length");
                v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect()
            })
            .collect();
        Self::from_scaled(&IntMatrix::from_columns(&cols, n), den)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// Integer numerator of the Hermite basis.
    pub fn integer_basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// Is this a sublattice of `Z^n`?
    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    /// Rational basis vectors (columns of the Hermite form).
    pub fn basis_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.rank())
            .map(|j| {
                self.basis
                    .col(j)
                    .into_iter()
                    .map(|x| BigRational::new(x, self.denominator.clone()))
                    .collect()
            })
            .collect()
    }

    /// Integer coordinates of `v` in the Hermite basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank);
        let scaled: Option<Vec<BigInt>> = v
            .iter()
            .map(|x| {
                let y = x * BigRational::from_integer(self.denominator.clone());
                y.is_integer().then(|| y.to_integer())
            })
            .collect();
        let scaled = scaled?;
        if self.rank() == 0 {
            return scaled.iter().all(Zero::is_zero).then(Vec::new);
        }
        solve_integer(&self.basis, &scaled)
    }

    /// Rational coordinates of `v` in the Hermite basis, if `v` lies in the rational span.
    pub fn rational_coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let scaled: Vec<BigRational> =
            v.iter().map(|x| x * BigRational::from_integer(self.denominator.clone())).collect();
        super::matrix::solve_rational(&self.basis, &scaled)
    }

    /// The vector with the given coordinates.
    pub fn vector(&self, coords: &[BigInt]) -> Vec<BigRational> {
        let v = self.basis.mul_vec(coords);
        v.into_iter().map(|x| BigRational::new(x, self.denominator.clone())).collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// `L1 + L2`.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut gens = self.basis_vectors();
        gens.extend(other.basis_vectors());
        Lattice::from_generators(&gens, self.ambient_rank)
    }

    /// `L1 ∩ L2`.
    pub fn intersection(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let n = self.ambient_rank;
        if self.rank() == 0 || other.rank() == 0 {
            return Lattice::zero(n);
        }
        let den = self.denominator.lcm(&other.denominator);
        let b1 = self.basis.scale(&(&den / &self.denominator));
        let b2 = other.basis.scale(&(&den / &other.denominator));
        let k = integer_kernel(&b1.hstack(&b2.scale(&BigInt::from(-1))));
        if k.cols() == 0 {
            return Lattice::zero(n);
        }
        let top: Vec<usize> = (0..b1.cols()).collect();
        let x = k.select_rows(&top);
        Lattice::from_scaled(&b1.mul(&x), den)
    }

    /// `span_Q(L) ∩ Z^n`.
    pub fn saturation(&self) -> Lattice {
        let n = self.ambient_rank;
        if self.rank() == 0 {
            return Lattice::zero(n);
        }
        let left = integer_kernel(&self.basis.transpose());
        if left.cols() == 0 {
            return Lattice::standard(n);
        }
        Lattice::from_integer_columns(&integer_kernel(&left.transpose()))
    }

    /// The image of the lattice under an integer matrix.
    pub fn image(&self, m: &IntMatrix) -> Lattice {
        assert_eq!(m.cols(), self.ambient_rank);
        Lattice::from_scaled(&m.mul(&self.basis), self.denominator.clone())
    }

    /// The image under a rational matrix given as `m / den`.
    pub fn image_scaled(&self, m: &IntMatrix, den: &BigInt) -> Lattice {
        Lattice::from_scaled(&m.mul(&self.basis), &self.denominator * den)
    }

    /// The dual lattice `{y : y·x ∈ Z for all x ∈ L}` of a full-rank lattice.
    pub fn dual(&self) -> Result<Lattice, ZmodError> {
        if !self.is_full_rank() {
            return Err(ZmodError::RankMismatch);
        }
        let inv = self.basis.rational_inverse().ok_or(ZmodError::RankMismatch)?;
        // dual basis = d · B^{-T}
        let n = self.ambient_rank;
        let gens: Vec<Vec<BigRational>> = (0..n)
            .map(|j| (0..n).map(|i| &inv[j][i] * BigRational::from_integer(self.denominator.clone())).collect())
            .collect();
        Ok(Lattice::from_generators(&gens, n))
    }

    /// `big / small` for sublattices of equal rank.
    pub fn finite_quotient(big: &Lattice, small: &Lattice) -> Result<FinAbGroup, ZmodError> {
        Ok(Self::quotient_coordinates(big, small)?.0)
    }

    /// Quotient group together with the coordinate matrix of `small` in `big`.
    pub fn quotient_coordinates(big: &Lattice, small: &Lattice) -> Result<(FinAbGroup, IntMatrix), ZmodError> {
        if big.ambient_rank != small.ambient_rank || big.rank() != small.rank() {
            return Err(ZmodError::RankMismatch);
        }
        let mut coords = IntMatrix::zeros(big.rank(), small.rank());
        for (j, v) in small.basis_vectors().iter().enumerate() {
            let c = big.coordinates(v).ok_or(ZmodError::NotSublattice)?;
            for (i, x) in c.into_iter().enumerate() {
                coords[(i, j)] = x;
            }
        }
        let g = cokernel_with_maps(&coords).group;
        if !g.is_finite() {
            return Err(ZmodError::RankMismatch);
        }
        Ok((g, coords))
    }

    /// Index `[big : small]`.
    pub fn index_in(&self, big: &Lattice) -> Result<BigInt, ZmodError> {
        Ok(Self::finite_quotient(big, self)?.order())
    }

    /// Direct sum `L1 ⊕ L2` in `Q^{n1+n2}`.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let n = self.ambient_rank + other.ambient_rank;
        let mut gens: Vec<Vec<BigRational>> = Vec::new();
        for v in self.basis_vectors() {
            let mut w = v;
            w.extend(std::iter::repeat_n(BigRational::zero(), other.ambient_rank));
            gens.push(w);
        }
        for v in other.basis_vectors() {
            let mut w = vec![BigRational::zero(); self.ambient_rank];
            w.extend(v);
            gens.push(w);
        }
        Lattice::from_generators(&gens, n)
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({:?} / {})", self.basis, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::matrix::{big_vec, rat_vec};
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn quotient_of_z2_by_2z2() {
        let big = Lattice::standard(2);
        let small = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2, 0], [0, 2]]));
        assert_eq!(Lattice::finite_quotient(&big, &small).unwrap(), FinAbGroup::from_orders(&[2, 2]));
        assert!(Lattice::finite_quotient(&small, &big).is_err());
        assert_eq!(Lattice::finite_quotient(&big, &big).unwrap(), FinAbGroup::trivial());
        assert!(matches!(
            Lattice::finite_quotient(&big, &Lattice::from_integer_columns(&IntMatrix::from_rows(&[[1], [0]]))),
            Err(ZmodError::RankMismatch)
        ));
    }

    #[test]
    fn intersection_with_containment() {
        let a = Lattice::standard(2);
        let b = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(a.intersection(&b), b);
        let c = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[4, 0], [0, 2]]));
        let expect = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[4, 0], [0, 6]]));
        assert_eq!(b.intersection(&c), expect);
    }

    #[test]
    fn half_integer_coweights_mod_coroots() {
        let coweights = Lattice::from_generators(&[vec![q(1, 2)]], 1);
        let coroots = Lattice::standard(1);
        assert_eq!(Lattice::finite_quotient(&coweights, &coroots).unwrap(), FinAbGroup::cyclic(2));
    }

    #[test]
    fn saturation_and_dual() {
        let l = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2], [4]]));
        assert_eq!(l.saturation(), Lattice::from_integer_columns(&IntMatrix::from_rows(&[[1], [2]])));
        let m = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2, 1], [0, 1]]));
        let d = m.dual().unwrap();
        // transpose-inverse oracle: B^{-T} = [[1/2, 0], [-1/2, 1]]
        let expect = Lattice::from_generators(&[vec![q(1, 2), q(-1, 2)], vec![q(0, 1), q(1, 1)]], 2);
        assert_eq!(d, expect);
        assert_eq!(d.dual().unwrap(), m);
    }

    #[test]
    fn coordinates_reject_outsiders() {
        let l = Lattice::from_integer_columns(&IntMatrix::from_rows(&[[2, 0], [0, 1]]));
        assert!(l.contains(&rat_vec(&big_vec(&[4, 7]))));
        assert!(!l.contains(&rat_vec(&big_vec(&[1, 0]))));
        assert!(!l.contains(&[q(1, 2), q(0, 1)]));
    }

    proptest! {
        #[test]
        fn hnf_is_basis_independent(a in -5i64..6, b in -5i64..6, c in -5i64..6, d in -5i64..6, u in -3i64..4) {
            let m = IntMatrix::from_rows(&[[a, b], [c, d]]);
            let change = IntMatrix::from_rows(&[[1, u], [0, 1]]);
            prop_assert_eq!(Lattice::from_integer_columns(&m), Lattice::from_integer_columns(&m.mul(&change)));
        }

        #[test]
        fn self_quotient_trivial(a in 1i64..6, b in -5i64..6, d in 1i64..6, den in 1i64..5) {
            let l = Lattice::from_scaled(&IntMatrix::from_rows(&[[a, b], [0, d]]), BigInt::from(den));
            prop_assert!(Lattice::finite_quotient(&l, &l).unwrap().is_trivial());
            let doubled = l.image(&IntMatrix::from_rows(&[[2, 0], [0, 2]]));
            prop_assert_eq!(Lattice::finite_quotient(&l, &doubled).unwrap(), FinAbGroup::from_orders(&[2, 2]));
            prop_assert_eq!(l.intersection(&doubled), doubled.clone());
            prop_assert_eq!(l.sum(&doubled), l.clone());
        }
    }
}
