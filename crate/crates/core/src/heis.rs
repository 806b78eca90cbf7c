//! Finite Heisenberg groups of a symplectic module, their Schrödinger models for
//! Lagrangians with splittings, partition vectors and Fourier intertwiners.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::symp::{is_lagrangian, Subgroup, SymplecticModule};
use crate::zmod::Phase;

/// Tolerance for floating-point comparisons of representation matrices.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeisError {
    #[error("pairing is degenerate")]
    Degenerate,
    #[error("polarization is not a pair of complementary Lagrangians")]
    NotComplementaryLagrangians,
    #[error("subgroup is not Lagrangian")]
    NotLagrangian,
    #[error("splitting is not a homomorphism")]
    InvalidSplitting,
    #[error("splittings disagree on the intersection of the Lagrangians")]
    IncompatibleSplittings,
    #[error("space of invariants has dimension {0:.3}, expected 1")]
    InvariantsNotOneDimensional(f64),
    #[error("composite is not scalar (residual {0:e})")]
    CompositeNotScalar(f64),
    #[error("intertwining check failed (residual {0:e})")]
    IntertwiningFailed(f64),
}

/// An element `(t, k)` of the extension `1 → U(1) → H → K → 0`, with `t` a phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HElement {
    pub phase: Phase,
    pub k: u32,
}

/// `H(K, ω)` with cocycle `β(x, y) = ω(y_A, x_B)`, so that lifts satisfy
/// `Φ(y)Φ(x) = ω(x, y) Φ(x)Φ(y)`.
#[derive(Clone, Debug)]
pub struct HeisenbergGroup {
    pub module: SymplecticModule,
    pub a: Subgroup,
    pub b: Subgroup,
    /// `k ↦ (k_A, k_B)`.
    parts: Vec<(u32, u32)>,
}

impl HeisenbergGroup {
    /// Standard polarization: A-cycle coordinates and B-cycle coordinates.
    pub fn new(module: SymplecticModule) -> Result<Self, HeisError> {
        let half = module.width() / 2;
        let a = module.make(module.span_of_units(0..half));
        let b = module.make(module.span_of_units(half..module.width()));
        Self::with_polarization(module, a, b)
    }

    pub fn with_polarization(module: SymplecticModule, a: Subgroup, b: Subgroup) -> Result<Self, HeisError> {
        if !module.is_nondegenerate() {
            return Err(HeisError::Degenerate);
        }
        if !is_lagrangian(&module, &a) || !is_lagrangian(&module, &b) || a.order() * b.order() != module.order() {
            return Err(HeisError::NotComplementaryLagrangians);
        }
        let mut parts = vec![(u32::MAX, u32::MAX); module.order() as usize];
        for &x in a.elements() {
            for &y in b.elements() {
                let s = module.add(x, y);
                if parts[s as usize].0 != u32::MAX {
                    return Err(HeisError::NotComplementaryLagrangians);
                }
                parts[s as usize] = (x, y);
            }
        }
        Ok(HeisenbergGroup { module, a, b, parts })
    }

    pub fn order_of_base(&self) -> u64 {
        self.module.order()
    }

    pub fn omega(&self, x: u32, y: u32) -> Phase {
        self.module.omega(x, y)
    }

    pub fn beta(&self, x: u32, y: u32) -> Phase {
        self.module.omega(self.parts[y as usize].0, self.parts[x as usize].1)
    }

    pub fn mul(&self, g: HElement, h: HElement) -> HElement {
        HElement { phase: g.phase + h.phase + self.beta(g.k, h.k), k: self.module.add(g.k, h.k) }
    }

    pub fn inverse(&self, g: HElement) -> HElement {
        let k = self.module.neg(g.k);
        HElement { phase: -(g.phase + self.beta(g.k, k)), k }
    }

    pub fn lift(&self, k: u32) -> HElement {
        HElement { phase: Phase::ZERO, k }
    }

    pub fn central(&self, t: Phase) -> HElement {
        HElement { phase: t, k: 0 }
    }

    /// Checks `Φ(b)Φ(a) = ω(a, b) Φ(a)Φ(b)` for every pair of lifts.
    pub fn commutation_relations_hold(&self) -> bool {
        let n = self.module.order() as u32;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = self.mul(self.lift(y), self.lift(x));
                let rhs = self.mul(self.central(self.omega(x, y)), self.mul(self.lift(x), self.lift(y)));
                lhs == rhs
            })
        })
    }

    /// The subgroup `U(1) × {0}` is central and the commutator pairing is nondegenerate,
    /// so the center of the extension is the circle alone.
    pub fn center_is_circle(&self) -> bool {
        let n = self.module.order() as u32;
        (1..n).all(|x| (0..n).any(|y| !self.omega(x, y).is_zero()))
    }
}

/// A section `σ(l) = (s(l), l)` over a Lagrangian that is a homomorphism into `H`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Splitting {
    pub lagrangian: Subgroup,
    /// Twist by the character `l ↦ ω(k, l)`, `k = twist`.
    pub twist: u32,
    #[serde(skip)]
    values: HashMap<u32, Phase>,
}

impl Splitting {
    /// The quadratic refinement of `β` on `L`: zero when `β` vanishes on `L`.
    pub fn canonical(h: &HeisenbergGroup, l: &Subgroup) -> Result<Self, HeisError> {
        Self::twisted(h, l, 0)
    }

    pub fn twisted(h: &HeisenbergGroup, l: &Subgroup, twist: u32) -> Result<Self, HeisError> {
        let m = &h.module;
        if !is_lagrangian(m, l) {
            return Err(HeisError::NotLagrangian);
        }
        let gens = l.gens.clone();
        let k = gens.len();
        // rational lifts b_ij of β(l_i, l_j), with n² b_ii even for odd-order generators
        let mut b = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                b[i][j] = h.beta(gens[i], gens[j]).to_rational();
            }
        }
        // Q(c) = Σ c_i² b_ii / 2 + Σ_{i<j} c_i c_j b_ij on Z^k
        let quad = |c: &[BigInt], b: &Vec<Vec<BigRational>>| -> BigRational {
            let mut q = BigRational::zero();
            for i in 0..k {
                let ci = BigRational::from_integer(c[i].clone());
                q += &ci * &ci * &b[i][i] / BigRational::from_integer(2.into());
                for j in i + 1..k {
                    q += &ci * BigRational::from_integer(c[j].clone()) * &b[i][j];
                }
            }
            q
        };
        // a linear correction λ makes Q + λ vanish on the relation lattice
        let rel = l.relation_basis(m);
        let rhs: Vec<BigRational> = (0..rel.cols()).map(|j| -quad(&rel.col(j), &b)).collect();
        let lambda = crate::zmod::solve_rational(&rel.transpose(), &rhs).ok_or(HeisError::InvalidSplitting)?;
        // coordinates of every element by breadth-first search over the generators
        let mut coords: HashMap<u32, Vec<BigInt>> = HashMap::from([(0u32, vec![BigInt::zero(); k])]);
        let mut frontier = vec![0u32];
        while let Some(x) = frontier.pop() {
            for (i, &g) in gens.iter().enumerate() {
                let y = m.add(x, g);
                if !coords.contains_key(&y) {
                    let mut c = coords[&x].clone();
                    c[i] += BigInt::one();
                    coords.insert(y, c);
                    frontier.push(y);
                }
            }
        }
        let values = coords
            .iter()
            .map(|(&x, c)| {
                let lin = c.iter().zip(&lambda).fold(BigRational::zero(), |a, (ci, li)| a + BigRational::from_integer(ci.clone()) * li);
                (x, Phase::from_rational(&(quad(c, &b) + lin)) + m.omega(twist, x))
            })
            .collect();
        let s = Splitting { lagrangian: l.clone(), twist, values };
        if !s.is_homomorphism(h) {
            return Err(HeisError::InvalidSplitting);
        }
        Ok(s)
    }

    pub fn value(&self, l: u32) -> Phase {
        self.values[&l]
    }

    pub fn section(&self, l: u32) -> HElement {
        HElement { phase: self.value(l), k: l }
    }

    pub fn is_homomorphism(&self, h: &HeisenbergGroup) -> bool {
        let el = self.lagrangian.elements();
        el.iter().all(|&x| el.iter().all(|&y| h.mul(self.section(x), self.section(y)) == self.section(h.module.add(x, y))))
    }
}

fn e(p: Phase) -> Complex64 {
    p.to_unit()
}

/// The model on `{F : F(σ(l) x) = F(x), F(t x) = e(t) F(x)}` with right translation,
/// basis `F_r` for coset representatives `r` of `K / L` (smallest element of each coset).
#[derive(Clone, Debug)]
pub struct SvnRep {
    pub splitting: Splitting,
    pub reps: Vec<u32>,
    index: HashMap<u32, usize>,
    /// `k ↦ (l, r)` with `k = l + r`.
    decomposition: Vec<(u32, u32)>,
}

impl SvnRep {
    pub fn new(h: &HeisenbergGroup, splitting: Splitting) -> Result<Self, HeisError> {
        let m = &h.module;
        let l = &splitting.lagrangian;
        if !is_lagrangian(m, l) {
            return Err(HeisError::NotLagrangian);
        }
        if !splitting.is_homomorphism(h) {
            return Err(HeisError::InvalidSplitting);
        }
        let n = m.order() as usize;
        let mut decomposition = vec![(u32::MAX, u32::MAX); n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if decomposition[x as usize].0 != u32::MAX {
                continue;
            }
            reps.push(x);
            for &y in l.elements() {
                decomposition[m.add(x, y) as usize] = (y, x);
            }
        }
        let index = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        Ok(SvnRep { splitting, reps, index, decomposition })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Index of the basis vector `F_r`.
    pub fn basis_index(&self, r: u32) -> Option<usize> {
        self.index.get(&r).copied()
    }

    /// `F_r(x)` for the basis function attached to the representative at `col`.
    fn eval(&self, h: &HeisenbergGroup, col: usize, x: HElement) -> Complex64 {
        let (l, r) = self.decomposition[x.k as usize];
        if self.index[&r] != col {
            return Complex64::zero();
        }
        // x = (t − s(l) − β(l, r)) · σ(l) · (0, r)
        e(x.phase - self.splitting.value(l) - h.beta(l, r))
    }

    pub fn matrix(&self, h: &HeisenbergGroup, g: HElement) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut out = DMatrix::zeros(d, d);
        for (row, &rp) in self.reps.iter().enumerate() {
            let x = h.mul(h.lift(rp), g);
            let (_, r) = self.decomposition[x.k as usize];
            let col = self.index[&r];
            out[(row, col)] = self.eval(h, col, x);
        }
        out
    }

    /// Matrices of the lifts of the coordinate generators and of a central element.
    pub fn generator_matrices(&self, h: &HeisenbergGroup) -> Vec<DMatrix<Complex64>> {
        let mut v: Vec<DMatrix<Complex64>> =
            (0..h.module.width()).map(|j| self.matrix(h, h.lift(h.module.unit(j)))).collect();
        v.push(self.matrix(h, h.central(Phase::new(1, 7))));
        v
    }
}

pub fn svn_representation(h: &HeisenbergGroup, l: &Subgroup) -> Result<SvnRep, HeisError> {
    SvnRep::new(h, Splitting::canonical(h, l)?)
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

/// Unitarity defect `max |ρ(g)ρ(g)* − 1|`.
pub fn unitarity_defect(m: &DMatrix<Complex64>) -> f64 {
    max_abs(&(m * m.adjoint() - DMatrix::identity(m.nrows(), m.ncols())))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    pub dimension: usize,
    pub commutant_dimension: usize,
    /// Smallest singular value of the commutant equations (zero on scalars).
    pub residue: f64,
    /// Next singular value; bounded away from zero when the commutant is the scalars.
    pub gap: f64,
    pub max_unitarity_defect: f64,
    pub central_scalar_defect: f64,
}

impl IrreducibilityReport {
    pub fn irreducible(&self) -> bool {
        self.commutant_dimension == 1 && self.residue < TOL && self.max_unitarity_defect < TOL && self.central_scalar_defect < TOL
    }
}

/// Solves `Xρ(g) = ρ(g)X` on generators and counts the solutions.
pub fn irreducibility(h: &HeisenbergGroup, rep: &SvnRep) -> IrreducibilityReport {
    let d = rep.dim();
    let gens = rep.generator_matrices(h);
    let eye = DMatrix::<Complex64>::identity(d, d);
    let mut stacked = DMatrix::<Complex64>::zeros(d * d * gens.len(), d * d);
    for (t, g) in gens.iter().enumerate() {
        // vec(Xg − gX) = (gᵀ ⊗ 1 − 1 ⊗ g) vec(X)
        let block = g.transpose().kronecker(&eye) - eye.kronecker(g);
        stacked.view_mut((t * d * d, 0), (d * d, d * d)).copy_from(&block);
    }
    let mut sv: Vec<f64> = stacked.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let commutant_dimension = sv.iter().filter(|&&s| s < TOL).count();
    let central = rep.matrix(h, h.central(Phase::new(1, 5)));
    let scalar = eye.map(|z| z * e(Phase::new(1, 5)));
    IrreducibilityReport {
        dimension: d,
        commutant_dimension,
        residue: sv.first().copied().unwrap_or(0.0),
        gap: sv.get(1).copied().unwrap_or(f64::INFINITY),
        max_unitarity_defect: gens.iter().map(unitarity_defect).fold(0.0, f64::max),
        central_scalar_defect: max_abs(&(central - scalar)),
    }
}

/// `(Z_b)_{b ∈ B}` in the model for `L = A`, where `Z_b = F_{(0,b)}`. The canonical
/// vector has every coefficient equal to one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionVector {
    pub labels: Vec<Vec<u64>>,
    #[serde(with = "complex_pairs")]
    pub coefficients: Vec<Complex64>,
}

mod complex_pairs {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<[f64; 2]>::deserialize(d)?.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

/// The model attached to the A-polarization.
pub fn a_model(h: &HeisenbergGroup) -> Result<SvnRep, HeisError> {
    svn_representation(h, &h.a)
}

pub fn partition_vector(h: &HeisenbergGroup) -> Result<PartitionVector, HeisError> {
    let rep = a_model(h)?;
    Ok(PartitionVector {
        labels: rep.reps.iter().map(|&r| h.module.decode(r)).collect(),
        coefficients: vec![Complex64::one(); rep.dim()],
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Absolution {
    /// `⟨w, v⟩` with `w` the invariant vector scaled to have first nonzero entry 1.
    pub partition_function: [f64; 2],
    /// `⟨w/|w|, v⟩`.
    pub unit_coefficient: [f64; 2],
    pub invariant_vector: Vec<[f64; 2]>,
    pub invariant_dimension: f64,
}

/// Projects `v` onto the `σ(L)`-invariant line of the A-model.
pub fn absolve(h: &HeisenbergGroup, v: &PartitionVector, splitting: &Splitting) -> Result<Absolution, HeisError> {
    let rep = a_model(h)?;
    let d = rep.dim();
    let l = &splitting.lagrangian;
    let mut p = DMatrix::<Complex64>::zeros(d, d);
    for &x in l.elements() {
        p += rep.matrix(h, splitting.section(x));
    }
    p /= Complex64::new(l.order() as f64, 0.0);
    let trace = p.trace().re;
    if (trace - 1.0).abs() > 1e-6 || max_abs(&(&p * &p - &p)) > 1e-6 {
        return Err(HeisError::InvariantsNotOneDimensional(trace));
    }
    let col = (0..d).max_by(|&i, &j| p.column(i).norm().partial_cmp(&p.column(j).norm()).unwrap()).unwrap_or(0);
    let w: Vec<Complex64> = p.column(col).iter().copied().collect();
    let first = w.iter().copied().find(|z| z.norm() > 1e-6).unwrap_or(Complex64::one());
    let w: Vec<Complex64> = w.iter().map(|z| z / first).collect();
    let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let dot: Complex64 = w.iter().zip(&v.coefficients).map(|(a, b)| a.conj() * b).sum();
    let unit = dot / norm;
    Ok(Absolution {
        partition_function: [dot.re, dot.im],
        unit_coefficient: [unit.re, unit.im],
        invariant_vector: w.iter().map(|z| [z.re, z.im]).collect(),
        invariant_dimension: trace,
    })
}

/// `T : model(L₁) → model(L₂)`, `(TF)(x) = N Σ_{l ∈ L₂/(L₁∩L₂)} F(σ₂(l) x)` with
/// `N = |L₂/(L₁∩L₂)|^{-1/2}`.
pub fn fourier_intertwiner(h: &HeisenbergGroup, r1: &SvnRep, r2: &SvnRep) -> Result<DMatrix<Complex64>, HeisError> {
    let m = &h.module;
    let (s1, s2) = (&r1.splitting, &r2.splitting);
    let inter: Vec<u32> = s1.lagrangian.elements().iter().copied().filter(|&x| s2.lagrangian.contains(x)).collect();
    if inter.iter().any(|&x| s1.value(x) != s2.value(x)) {
        return Err(HeisError::IncompatibleSplittings);
    }
    // representatives of L₂ / (L₁ ∩ L₂)
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for &x in s2.lagrangian.elements() {
        if seen.contains(&x) {
            continue;
        }
        reps.push(x);
        for &y in &inter {
            seen.insert(m.add(x, y));
        }
    }
    let norm = 1.0 / (reps.len() as f64).sqrt();
    let d = r1.dim();
    let mut t = DMatrix::<Complex64>::zeros(r2.dim(), d);
    for (row, &rr) in r2.reps.iter().enumerate() {
        for &l in &reps {
            let x = h.mul(s2.section(l), h.lift(rr));
            let (_, r) = r1.decomposition[x.k as usize];
            let col = r1.index[&r];
            t[(row, col)] += r1.eval(h, col, x) * norm;
        }
    }
    let mut resid = unitarity_defect(&t);
    for (a, b) in r1.generator_matrices(h).iter().zip(r2.generator_matrices(h)) {
        resid = resid.max(max_abs(&(&t * a - b * &t)));
    }
    if resid > TOL {
        return Err(HeisError::IntertwiningFailed(resid));
    }
    Ok(t)
}

/// `c(L₁, L₂, L₃)`: the scalar by which `model(L₁) → model(L₂) → model(L₃) → model(L₁)` acts.
pub fn maslov_scalar(h: &HeisenbergGroup, s1: &Splitting, s2: &Splitting, s3: &Splitting) -> Result<Complex64, HeisError> {
    let r1 = SvnRep::new(h, s1.clone())?;
    let r2 = SvnRep::new(h, s2.clone())?;
    let r3 = SvnRep::new(h, s3.clone())?;
    let t21 = fourier_intertwiner(h, &r1, &r2)?;
    let t32 = fourier_intertwiner(h, &r2, &r3)?;
    let t13 = fourier_intertwiner(h, &r3, &r1)?;
    let comp = t13 * t32 * t21;
    let c = comp[(0, 0)];
    let resid = max_abs(&(&comp - DMatrix::identity(comp.nrows(), comp.ncols()).map(|z: Complex64| z * c)));
    if resid > TOL || (c.norm() - 1.0).abs() > TOL {
        return Err(HeisError::CompositeNotScalar(resid));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symp::{enumerate_lagrangians, DEFAULT_CAP};
    use crate::zmod::{FinAbGroup, PhasePairing};

    fn heis(n: u64) -> HeisenbergGroup {
        let a = FinAbGroup::cyclic(n);
        let gram = vec![vec![Phase::new(1, n as i64)]];
        let m = SymplecticModule::new(a.clone(), PhasePairing { left: a.clone(), right: a, gram }, 1).unwrap();
        HeisenbergGroup::new(m).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < TOL
    }

    #[test]
    fn commutation_relations() {
        for n in [2, 3, 4] {
            let h = heis(n);
            assert!(h.commutation_relations_hold());
            assert!(h.center_is_circle());
        }
        // the generators with ω(a, b) = 1/2 anticommute
        let h = heis(2);
        let (a, b) = (h.module.unit(0), h.module.unit(1));
        assert_eq!(h.omega(a, b), Phase::new(1, 2));
        let ba = h.mul(h.lift(b), h.lift(a));
        let ab = h.mul(h.lift(a), h.lift(b));
        assert_eq!(ba, h.mul(h.central(Phase::new(1, 2)), ab));
    }

    #[test]
    fn group_axioms() {
        let h = heis(3);
        let n = h.module.order() as u32;
        for x in 0..n {
            let g = HElement { phase: Phase::new(1, 3), k: x };
            let gi = h.inverse(g);
            assert_eq!(h.mul(g, gi), h.central(Phase::ZERO));
            for y in 0..n {
                for z in 0..n {
                    let (a, b, c) = (h.lift(x), h.lift(y), h.lift(z));
                    assert_eq!(h.mul(h.mul(a, b), c), h.mul(a, h.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn trivial_base() {
        let m = SymplecticModule::for_algebra(&crate::rootdata::parse_algebra("E8").unwrap(), 1).unwrap();
        let h = HeisenbergGroup::new(m).unwrap();
        let rep = a_model(&h).unwrap();
        assert_eq!(rep.dim(), 1);
        let c = rep.matrix(&h, h.central(Phase::new(1, 3)));
        assert!(close(c[(0, 0)], Phase::new(1, 3).to_unit()));
        let v = partition_vector(&h).unwrap();
        let s = Splitting::canonical(&h, &h.a).unwrap();
        let ab = absolve(&h, &v, &s).unwrap();
        assert!((ab.partition_function[0] - 1.0).abs() < TOL);
    }

    #[test]
    fn basis_action_in_the_a_model() {
        let h = heis(4);
        let rep = a_model(&h).unwrap();
        assert_eq!(rep.dim(), 4);
        for &a in h.a.elements() {
            let pa = rep.matrix(&h, h.lift(a));
            for (i, &b) in rep.reps.iter().enumerate() {
                // Φ_A(a) Z_b = ω(a, b) Z_b
                assert!(close(pa[(i, i)], h.omega(a, b).to_unit()));
            }
        }
        for &b in h.b.elements() {
            let pb = rep.matrix(&h, h.lift(b));
            for (j, &b2) in rep.reps.iter().enumerate() {
                // Φ_B(b) Z_{b'} = Z_{b' − b}
                let target = rep.basis_index(h.module.add(b2, h.module.neg(b))).unwrap();
                assert!(close(pb[(target, j)], Complex64::one()));
            }
        }
    }

    #[test]
    fn models_are_irreducible() {
        for n in [2, 3, 4] {
            let h = heis(n);
            for l in enumerate_lagrangians(&h.module, DEFAULT_CAP).unwrap() {
                let rep = svn_representation(&h, &l).unwrap();
                assert_eq!(rep.dim() as u64 * rep.dim() as u64, h.module.order());
                let r = irreducibility(&h, &rep);
                assert!(r.irreducible(), "{r:?}");
                assert!(r.gap > 1e-3);
            }
        }
    }

    #[test]
    fn absolution_examples() {
        for n in [2, 3, 4] {
            let h = heis(n);
            let v = partition_vector(&h).unwrap();
            let sa = Splitting::canonical(&h, &h.a).unwrap();
            let sb = Splitting::canonical(&h, &h.b).unwrap();
            let za = absolve(&h, &v, &sa).unwrap();
            let zb = absolve(&h, &v, &sb).unwrap();
            assert!((za.partition_function[0] - 1.0).abs() < TOL && za.partition_function[1].abs() < TOL);
            assert!((zb.partition_function[0] - n as f64).abs() < TOL && zb.partition_function[1].abs() < TOL);
            assert!((zb.unit_coefficient[0] - (n as f64).sqrt()).abs() < TOL);
        }
    }

    #[test]
    fn fourier_between_a_and_b() {
        let h = heis(2);
        let ra = a_model(&h).unwrap();
        let rb = svn_representation(&h, &h.b).unwrap();
        let t = fourier_intertwiner(&h, &ra, &rb).unwrap();
        let s = 1.0 / 2f64.sqrt();
        // proportional to the 2 × 2 Fourier matrix
        let ratio = t[(0, 0)] / s;
        let dft = [[1.0, 1.0], [1.0, -1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(t[(i, j)], ratio * s * dft[i][j]), "{t}");
            }
        }
        let same = fourier_intertwiner(&h, &ra, &ra).unwrap();
        assert!(max_abs(&(same - DMatrix::identity(2, 2))) < TOL);
        let h3 = heis(3);
        let t3 = fourier_intertwiner(&h3, &a_model(&h3).unwrap(), &svn_representation(&h3, &h3.b).unwrap()).unwrap();
        for z in t3.iter() {
            assert!((z.norm() - 1.0 / 3f64.sqrt()).abs() < TOL);
        }
    }

    #[test]
    fn maslov_scalars() {
        let h = heis(2);
        let lags = enumerate_lagrangians(&h.module, DEFAULT_CAP).unwrap();
        assert_eq!(lags.len(), 3);
        let s: Vec<Splitting> = lags.iter().map(|l| Splitting::canonical(&h, l).unwrap()).collect();
        assert!(close(maslov_scalar(&h, &s[0], &s[0], &s[0]).unwrap(), Complex64::one()));
        assert!(close(maslov_scalar(&h, &s[0], &s[0], &s[1]).unwrap(), Complex64::one()));
        let c = maslov_scalar(&h, &s[0], &s[1], &s[2]).unwrap();
        assert!((c.norm() - 1.0).abs() < TOL);
        assert!(close(c.powi(8), Complex64::one()), "{c}");
        // simultaneous conjugation by a fixed element leaves c unchanged
        for k in 0..h.module.order() as u32 {
            let t: Vec<Splitting> = lags.iter().map(|l| Splitting::twisted(&h, l, k).unwrap()).collect();
            assert!(close(maslov_scalar(&h, &t[0], &t[1], &t[2]).unwrap(), c));
        }
    }
}
