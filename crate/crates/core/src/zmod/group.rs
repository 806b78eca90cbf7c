use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::phase::Phase;
use super::snf::{integer_kernel, smith_normal_form, solve_integer};
use super::ZmodError;

/// A finitely generated abelian group `Z/d_1 ⊕ … ⊕ Z/d_k ⊕ Z^free_rank` with
/// `d_1 | d_2 | … | d_k` and every `d_i >= 2`.
///
/// Elements are coordinate vectors of length `ngens()`: torsion coordinates
/// first (reduced into `[0, d_i)`), then free coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinAbGroup {
    #[serde(with = "factor_serde")]
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

mod factor_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Num {
        Small(u64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<Num> = v
            .iter()
            .map(|x| match u64::try_from(x) {
                Ok(n) => Num::Small(n),
                Err(_) => Num::Big(x.to_string()),
            })
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<Num> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|n| match n {
                Num::Small(k) => Ok(BigInt::from(k)),
                Num::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[n])
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { invariant_factors: vec![], free_rank: rank }
    }

    /// Normalizes a product of cyclic groups of the given orders (0 means Z).
    pub fn from_orders(orders: &[u64]) -> Self {
        let big: Vec<BigInt> = orders.iter().map(|&n| BigInt::from(n)).collect();
        Self::from_big_orders(&big)
    }

    pub fn from_big_orders(orders: &[BigInt]) -> Self {
        Self::cokernel(&IntMatrix::diagonal(orders))
    }

    /// Builds the group from factors already known to form a valid chain.
    pub fn from_chain(factors: Vec<BigInt>, free_rank: usize) -> Result<Self, ZmodError> {
        let ok = factors.iter().all(|d| d >= &BigInt::from(2))
            && factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !ok {
            return Err(ZmodError::InvalidFactors);
        }
        Ok(FinAbGroup { invariant_factors: factors, free_rank })
    }

    /// `Z^rows / image(m)`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        cokernel_with_maps(m).group
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn ngens(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// Order of the torsion part (the whole group when finite).
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Order as a machine integer; panics on overflow or infinite groups.
    pub fn order_u64(&self) -> u64 {
        assert!(self.is_finite(), "order of an infinite group");
        self.order().to_u64().expect("group order overflows u64")
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Factors as machine integers, used by enumeration code.
    pub fn factors_u64(&self) -> Vec<u64> {
        self.invariant_factors.iter().map(|d| d.to_u64().expect("factor overflows u64")).collect()
    }

    /// The relation matrix `ngens × torsion_rank` whose cokernel is this group.
    pub fn relations(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.ngens(), self.torsion_rank());
        for (i, d) in self.invariant_factors.iter().enumerate() {
            r[(i, i)] = d.clone();
        }
        r
    }

    /// Canonical coordinates of an element given by arbitrary integer coordinates.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ngens(), "element has wrong length");
        x.iter()
            .enumerate()
            .map(|(i, v)| match self.invariant_factors.get(i) {
                Some(d) => v.mod_floor(d),
                None => v.clone(),
            })
            .collect()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.ngens()]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero();
        e[i] = BigInt::one();
        e
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = x.iter().map(|a| -a).collect();
        self.reduce(&s)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    /// Order of an element of the torsion part.
    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        let x = self.reduce(x);
        if x[self.torsion_rank()..].iter().any(|v| !v.is_zero()) {
            return BigInt::zero();
        }
        self.invariant_factors
            .iter()
            .zip(&x)
            .fold(BigInt::one(), |acc, (d, v)| acc.lcm(&(d / d.gcd(v))))
    }

    /// Every element of a finite group in mixed-radix order (last coordinate fastest).
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let f = self.factors_u64();
        let total: u64 = f.iter().product();
        (0..total).map(|idx| self.element_at(idx, &f)).collect()
    }

    fn element_at(&self, mut idx: u64, f: &[u64]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); f.len()];
        for i in (0..f.len()).rev() {
            out[i] = BigInt::from(idx % f[i]);
            idx /= f[i];
        }
        out
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        orders.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank));
        Self::from_big_orders(&orders)
    }

    /// `self^k`.
    pub fn power(&self, k: usize) -> FinAbGroup {
        (0..k).fold(FinAbGroup::trivial(), |acc, _| acc.direct_sum(self))
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// A cokernel together with coordinate maps.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FinAbGroup,
    /// `ngens × rows`: sends ambient integer vectors to group coordinates (before reduction).
    pub projection: IntMatrix,
    /// `rows × ngens`: lifts of the group generators to the ambient lattice.
    pub lifts: IntMatrix,
}

impl Cokernel {
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.projection.mul_vec(x))
    }
}

/// `Z^rows / image(m)` with explicit projection and generator lifts.
pub fn cokernel_with_maps(m: &IntMatrix) -> Cokernel {
    let rows = m.rows();
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let uinv = snf.u.unimodular_inverse().expect("SNF transform is unimodular");
    let mut torsion = Vec::new();
    let mut free = Vec::new();
    for i in 0..rows {
        match diag.get(i) {
            Some(d) if d.is_one() => {}
            Some(d) if !d.is_zero() => torsion.push(i),
            _ => free.push(i),
        }
    }
    let factors: Vec<BigInt> = torsion.iter().map(|&i| diag[i].clone()).collect();
    let group = FinAbGroup { invariant_factors: factors, free_rank: free.len() };
    let idx: Vec<usize> = torsion.iter().chain(free.iter()).copied().collect();
    let projection = if idx.is_empty() { IntMatrix::zeros(0, rows) } else { snf.u.select_rows(&idx) };
    let lifts = if idx.is_empty() { IntMatrix::zeros(rows, 0) } else { uinv.select_columns(&idx) };
    Cokernel { group, projection, lifts }
}

/// A homomorphism of finitely generated abelian groups in generator coordinates.
/// `matrix` is `target.ngens() × source.ngens()`; column `j` is the image of generator `j`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FinAbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: IntMatrix,
}

impl FinAbHom {
    /// Validates well-definedness and reduces torsion rows modulo the target factors.
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: IntMatrix) -> Result<Self, ZmodError> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(ZmodError::DimensionMismatch);
        }
        let mut m = matrix;
        for i in 0..target.torsion_rank() {
            let d = &target.invariant_factors[i];
            for j in 0..m.cols() {
                m[(i, j)] = m[(i, j)].mod_floor(d);
            }
        }
        for (j, dj) in source.invariant_factors.iter().enumerate() {
            let col: Vec<BigInt> = m.col(j).iter().map(|x| x * dj).collect();
            if !target.is_zero_element(&col) {
                return Err(ZmodError::NotWellDefined);
            }
        }
        Ok(FinAbHom { source, target, matrix: m })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        FinAbHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.ngens()) }
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        FinAbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinAbHom) -> Result<FinAbHom, ZmodError> {
        if self.target != other.source {
            return Err(ZmodError::DimensionMismatch);
        }
        FinAbHom::new(self.source.clone(), other.target.clone(), other.matrix.mul(&self.matrix))
    }

    /// Generators (as columns of source coordinates) of a lattice whose image in the
    /// source is the kernel.
    pub fn kernel_lifts(&self) -> IntMatrix {
        let n = self.source.ngens();
        let stacked = self.matrix.hstack(&self.target.relations());
        let k = integer_kernel(&stacked);
        let top: Vec<usize> = (0..n).collect();
        if k.cols() == 0 {
            return IntMatrix::zeros(n, 0);
        }
        k.select_rows(&top)
    }

    /// The image subgroup's cokernel `target / image`.
    pub fn cokernel(&self) -> FinAbGroup {
        FinAbGroup::cokernel(&self.matrix.hstack(&self.target.relations()))
    }

    /// The kernel as an abstract group.
    pub fn kernel(&self) -> FinAbGroup {
        let lifts = self.kernel_lifts();
        let gens = lifts.hstack(&self.source.relations());
        // kernel = span(gens) / span(relations): coordinates of relations in terms of gens
        let basis = super::snf::column_hnf(&gens);
        let rel = self.source.relations();
        let mut coords = IntMatrix::zeros(basis.cols(), rel.cols());
        for j in 0..rel.cols() {
            let c = solve_integer(&basis, &rel.col(j)).expect("relations lie in the kernel lattice");
            for (i, v) in c.into_iter().enumerate() {
                coords[(i, j)] = v;
            }
        }
        FinAbGroup::cokernel(&coords)
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_trivial()
    }

    pub fn is_injective(&self) -> bool {
        let lifts = self.kernel_lifts();
        let rel = self.source.relations();
        (0..lifts.cols()).all(|j| {
            let v = lifts.col(j);
            if rel.cols() == 0 {
                v.iter().all(Zero::is_zero)
            } else {
                solve_integer(&rel, &v).is_some()
            }
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Is `self` the zero map?
    pub fn is_zero(&self) -> bool {
        (0..self.source.ngens()).all(|j| self.target.is_zero_element(&self.matrix.col(j)))
    }
}

/// A bilinear Q/Z-valued pairing between two finite groups, given by its Gram matrix on generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PhasePairing {
    pub left: FinAbGroup,
    pub right: FinAbGroup,
    pub gram: Vec<Vec<Phase>>,
}

impl PhasePairing {
    pub fn eval(&self, x: &[BigInt], y: &[BigInt]) -> Phase {
        let mut acc = Phase::ZERO;
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc += self.gram[i][j].times_big(&(xi * yj));
            }
        }
        acc
    }

    /// The adjoint `left → right^∨`, with `right^∨` identified with `right` via the
    /// standard factor-wise duality. `None` when the Gram data is not well defined.
    pub fn left_adjoint(&self) -> Option<FinAbHom> {
        let d = self.right.invariant_factors();
        let mut m = IntMatrix::zeros(self.right.ngens(), self.left.ngens());
        for i in 0..self.left.ngens() {
            for (j, dj) in d.iter().enumerate() {
                let v = self.gram[i][j].to_rational() * num_rational::BigRational::from_integer(dj.clone());
                if !v.is_integer() {
                    return None;
                }
                m[(j, i)] = v.to_integer();
            }
        }
        FinAbHom::new(self.left.clone(), self.right.clone(), m).ok()
    }

    /// Perfect iff the adjoint is an isomorphism (both groups finite).
    pub fn is_perfect(&self) -> bool {
        self.left.is_finite()
            && self.right.is_finite()
            && self.left_adjoint().is_some_and(|h| h.is_isomorphism())
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right
            && (0..self.left.ngens()).all(|i| (0..self.left.ngens()).all(|j| self.gram[i][j] == self.gram[j][i]))
    }
}

/// Standard evaluation pairing `A × A^∨ → Q/Z`, `(x, χ) ↦ Σ x_i χ_i / d_i`.
pub fn standard_pairing(a: &FinAbGroup) -> PhasePairing {
    assert!(a.is_finite());
    let n = a.ngens();
    let gram = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Phase::from_big(&BigInt::one(), &a.invariant_factors()[i]) } else { Phase::ZERO })
                .collect()
        })
        .collect();
    PhasePairing { left: a.clone(), right: a.clone(), gram }
}

/// Pontryagin dual of a finite group with its evaluation pairing.
pub fn pontryagin_dual(a: &FinAbGroup) -> (FinAbGroup, PhasePairing) {
    (a.clone(), standard_pairing(a))
}

/// Double-dual evaluation `A → (A^∨)^∨`, as a hom in dual coordinates.
/// `x` goes to the character `χ ↦ ⟨x, χ⟩` of `A^∨`.
pub fn double_dual_evaluation(a: &FinAbGroup) -> FinAbHom {
    let (dual, pairing) = pontryagin_dual(a);
    // characters of A^∨ read through the standard pairing of A^∨ with itself
    let swapped = PhasePairing {
        left: a.clone(),
        right: dual,
        gram: (0..a.ngens()).map(|i| (0..a.ngens()).map(|j| pairing.gram[j][i]).collect()).collect(),
    };
    swapped.left_adjoint().expect("evaluation pairing is well defined")
}

/// `Tor_1(A, U(1))` for a finitely generated group: the torsion subgroup, with its
/// identification map into `A`.
pub fn tor1_with_circle(a: &FinAbGroup) -> (FinAbGroup, FinAbHom) {
    let t = FinAbGroup { invariant_factors: a.invariant_factors.clone(), free_rank: 0 };
    let mut m = IntMatrix::zeros(a.ngens(), t.ngens());
    for i in 0..t.ngens() {
        m[(i, i)] = BigInt::one();
    }
    let inclusion = FinAbHom::new(t.clone(), a.clone(), m).expect("torsion inclusion is well defined");
    (t, inclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(g: &FinAbGroup) -> Vec<u64> {
        g.factors_u64()
    }

    #[test]
    fn cokernels_of_cartan_matrices() {
        assert_eq!(factors(&FinAbGroup::cokernel(&IntMatrix::from_rows(&[[2]]))), vec![2]);
        assert!(FinAbGroup::cokernel(&IntMatrix::identity(3)).is_trivial());
        let d4 = IntMatrix::from_rows(&[[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]);
        assert_eq!(factors(&FinAbGroup::cokernel(&d4)), vec![2, 2]);
        let g = FinAbGroup::cokernel(&IntMatrix::from_rows(&[[2, 0], [0, 0], [0, 0]]));
        assert_eq!(g.free_rank(), 2);
        assert_eq!(factors(&g), vec![2]);
    }

    #[test]
    fn normalization_merges_coprime_factors() {
        assert_eq!(FinAbGroup::from_orders(&[2, 3]), FinAbGroup::cyclic(6));
        assert_eq!(factors(&FinAbGroup::from_orders(&[4, 2, 1])), vec![2, 4]);
        assert!(FinAbGroup::from_chain(vec![4.into(), 2.into()], 0).is_err());
    }

    #[test]
    fn json_shape() {
        let g = FinAbGroup::from_orders(&[2, 4]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"invariant_factors":[2,4],"free_rank":0}"#);
        assert_eq!(serde_json::from_str::<FinAbGroup>(&s).unwrap(), g);
    }

    #[test]
    fn pontryagin_dual_of_z6() {
        let (d, p) = pontryagin_dual(&FinAbGroup::cyclic(6));
        assert_eq!(d, FinAbGroup::cyclic(6));
        assert_eq!(p.eval(&[BigInt::from(1)], &[BigInt::from(1)]), Phase::new(1, 6));
        assert_eq!(p.eval(&[BigInt::from(2)], &[BigInt::from(5)]), Phase::new(10, 6));
        assert!(p.is_perfect());
        let (t, tp) = pontryagin_dual(&FinAbGroup::trivial());
        assert!(t.is_trivial() && tp.is_perfect());
    }

    #[test]
    fn pontryagin_dual_of_z2_z4_factorwise() {
        let a = FinAbGroup::from_orders(&[2, 4]);
        let (d, p) = pontryagin_dual(&a);
        assert_eq!(factors(&d), vec![2, 4]);
        // factor-wise oracle: ⟨x, χ⟩ = x0 χ0 / 2 + x1 χ1 / 4
        for x in a.elements() {
            for c in d.elements() {
                let x0 = x[0].to_i64().unwrap();
                let x1 = x[1].to_i64().unwrap();
                let c0 = c[0].to_i64().unwrap();
                let c1 = c[1].to_i64().unwrap();
                assert_eq!(p.eval(&x, &c), Phase::new(2 * x0 * c0 + x1 * c1, 4));
            }
        }
        assert!(p.is_perfect());
    }

    #[test]
    fn tor_is_torsion_part() {
        let (t, inc) = tor1_with_circle(&FinAbGroup::cyclic(4));
        assert_eq!(t, FinAbGroup::cyclic(4));
        assert!(inc.is_isomorphism());
        let (t, inc) = tor1_with_circle(&FinAbGroup::from_orders(&[2, 0]));
        assert_eq!(t, FinAbGroup::cyclic(2));
        assert!(inc.is_injective() && !inc.is_surjective());
    }

    #[test]
    fn hom_kernel_and_image() {
        let z4 = FinAbGroup::cyclic(4);
        let z2 = FinAbGroup::cyclic(2);
        let proj = FinAbHom::new(z4.clone(), z2.clone(), IntMatrix::from_rows(&[[1]])).unwrap();
        assert!(proj.is_surjective());
        assert!(!proj.is_injective());
        assert_eq!(proj.kernel(), z2);
        assert!(FinAbHom::new(z2.clone(), z4.clone(), IntMatrix::from_rows(&[[1]])).is_err());
        let inc = FinAbHom::new(z2, z4, IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(inc.is_injective());
        assert_eq!(inc.cokernel(), FinAbGroup::cyclic(2));
    }

    #[test]
    fn double_dual_is_bijective_on_all_elements() {
        for orders in [&[2u64, 4][..], &[3, 3], &[6], &[2, 2, 2], &[16, 16]] {
            let a = FinAbGroup::from_orders(orders);
            let ev = double_dual_evaluation(&a);
            let mut images: Vec<Vec<BigInt>> = a.elements().iter().map(|x| ev.apply(x)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len() as u64, a.order_u64());
        }
    }

    proptest! {
        #[test]
        fn dual_has_same_factors_and_perfect_pairing(orders in proptest::collection::vec(1u64..13, 0..4)) {
            let a = FinAbGroup::from_orders(&orders);
            let (d, p) = pontryagin_dual(&a);
            prop_assert_eq!(&d, &a);
            prop_assert!(p.is_perfect());
            prop_assert_eq!(a.order(), orders.iter().map(|&x| BigInt::from(x)).product::<BigInt>());
        }

        #[test]
        fn double_dual_evaluation_is_iso(orders in proptest::collection::vec(2u64..9, 0..3)) {
            let a = FinAbGroup::from_orders(&orders);
            prop_assert!(double_dual_evaluation(&a).is_isomorphism());
        }
    }
}
