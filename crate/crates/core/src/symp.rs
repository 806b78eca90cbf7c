//! The module `H¹(C; A) ≅ A^{2g}` with its cup-product pairing, subgroups,
//! annihilators and Lagrangians.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{center, center_pairing, RootDataError, RootDatum, SimpleType};
use crate::zmod::{integer_kernel, FinAbGroup, IntMatrix, Lattice, Phase, PhasePairing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SympError {
    #[error("carrier has {size} elements, above the cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("first subgroup is not contained in the second")]
    NotContained,
    #[error("pairing on the coefficient group is not perfect")]
    Degenerate,
    #[error("genus must be at least 1")]
    InvalidGenus,
    #[error("element has the wrong number of coordinates")]
    DimensionMismatch,
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

pub const DEFAULT_CAP: u64 = 1 << 16;
/// Carriers up to this size get a precomputed annihilator table.
const TABLE_LIMIT: u64 = 1 << 12;

/// `A^{2g}` laid out as `g` A-cycle copies of `A` followed by `g` B-cycle copies, with
/// `ω((a,b),(a',b')) = Σ υ(aᵢ,b'ᵢ) − υ(a'ᵢ,bᵢ)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymplecticModule {
    pub coefficient: FinAbGroup,
    pub pairing: PhasePairing,
    pub genus: usize,
    pub layout: String,
    moduli: Vec<u64>,
    strides: Vec<u64>,
    size: u64,
    /// `υ` on generators as integers over `den`.
    den: u64,
    gram: Vec<Vec<u64>>,
    /// Every modulus is 2, so addition is XOR.
    #[serde(skip)]
    binary: bool,
    #[serde(skip)]
    ann_table: Option<Arc<Vec<Vec<u64>>>>,
}

impl SymplecticModule {
    pub fn new(coefficient: FinAbGroup, pairing: PhasePairing, genus: usize) -> Result<Self, SympError> {
        if genus == 0 {
            return Err(SympError::InvalidGenus);
        }
        if !coefficient.is_finite() || !pairing.is_perfect() {
            return Err(SympError::Degenerate);
        }
        let k = coefficient.ngens();
        let factors = coefficient.factors_u64();
        let moduli: Vec<u64> = (0..2 * genus).flat_map(|_| factors.iter().copied()).collect();
        let binary = moduli.iter().all(|&m| m == 2);
        let mut strides = vec![1u64; moduli.len()];
        let mut size: u64 = 1;
        for (i, m) in moduli.iter().enumerate() {
            strides[i] = size;
            size = size.saturating_mul(*m);
        }
        let den = pairing.gram.iter().flatten().fold(1u64, |a, p| a.lcm(&(p.denominator() as u64)));
        let gram = (0..k)
            .map(|i| (0..k).map(|j| (pairing.gram[i][j].numerator() as u64) * (den / pairing.gram[i][j].denominator() as u64)).collect())
            .collect();
        let mut m = SymplecticModule {
            coefficient,
            pairing,
            genus,
            layout: format!("{genus} A-cycles then {genus} B-cycles"),
            moduli,
            strides,
            size,
            den,
            gram,
            binary: false,
            ann_table: None,
        };
        m.binary = binary;
        if size <= TABLE_LIMIT {
            let words = (size as usize).div_ceil(64);
            let table = (0..size as u32)
                .map(|y| {
                    let mut bits = vec![0u64; words];
                    for x in 0..size as u32 {
                        if m.omega_raw(x, y) == 0 {
                            bits[x as usize / 64] |= 1 << (x % 64);
                        }
                    }
                    bits
                })
                .collect();
            m.ann_table = Some(Arc::new(table));
        }
        Ok(m)
    }

    /// `H¹(C; Z(G̃))` for the simply connected group with the given simple factors.
    pub fn for_algebra(types: &[SimpleType], genus: usize) -> Result<Self, SympError> {
        let d = RootDatum::semisimple(types, &crate::rootdata::Form::SimplyConnected)?;
        let z = center(&d)?;
        let p = center_pairing(&d)?;
        Self::new(z.group, p, genus)
    }

    pub fn order(&self) -> u64 {
        self.size
    }

    /// Number of coordinates, `2g` times the number of generators of `A`.
    pub fn width(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn encode(&self, digits: &[u64]) -> Result<u32, SympError> {
        if digits.len() != self.moduli.len() {
            return Err(SympError::DimensionMismatch);
        }
        Ok(digits.iter().zip(&self.moduli).zip(&self.strides).map(|((d, m), s)| (d % m) * s).sum::<u64>() as u32)
    }

    pub fn decode(&self, x: u32) -> Vec<u64> {
        self.moduli.iter().zip(&self.strides).map(|(m, s)| (x as u64 / s) % m).collect()
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.binary {
            return x ^ y;
        }
        let mut out = 0u64;
        for (m, s) in self.moduli.iter().zip(&self.strides) {
            let a = (x as u64 / s) % m;
            let b = (y as u64 / s) % m;
            out += ((a + b) % m) * s;
        }
        out as u32
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.binary {
            return x;
        }
        let mut out = 0u64;
        for (m, s) in self.moduli.iter().zip(&self.strides) {
            let a = (x as u64 / s) % m;
            out += ((m - a) % m) * s;
        }
        out as u32
    }

    /// `k · x`.
    pub fn scale(&self, x: u32, k: u64) -> u32 {
        if self.binary {
            return if k.is_multiple_of(2) { 0 } else { x };
        }
        let mut out = 0u64;
        for (m, s) in self.moduli.iter().zip(&self.strides) {
            let a = (x as u64 / s) % m;
            out += (a * (k % m) % m) * s;
        }
        out as u32
    }

    /// Structure of `big / small` read off from how many elements each prime power
    /// pushes into `small`: the number of cyclic `p`-factors of order at least `p^k` is
    /// `log_p` of `|{x : p^k x ∈ small}| / |{x : p^{k-1} x ∈ small}|`.
    fn subquotient_structure(&self, big: &[u32], small: &[u32]) -> FinAbGroup {
        let small_order = small.len() as u64;
        let mut member = vec![false; self.size as usize];
        for &e in small {
            member[e as usize] = true;
        }
        let n = big.len() as u64 / small_order;
        // largest-first factor lists, one per prime; the i-th invariant factor from the
        // top is the product of the i-th entries
        let mut top: Vec<u64> = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while rest > 1 {
            if !rest.is_multiple_of(p) {
                p += 1;
                continue;
            }
            let mut part = 1u64;
            while rest.is_multiple_of(p) {
                rest /= p;
                part *= p;
            }
            // at_least[k-1] = number of cyclic factors of order ≥ p^k
            let mut at_least = Vec::new();
            let mut images = big.to_vec();
            let mut prev = 1u64;
            while prev < part {
                for y in images.iter_mut() {
                    *y = self.scale(*y, p);
                }
                let killed = images.iter().filter(|&&y| member[y as usize]).count() as u64 / small_order;
                let killed_p = part.gcd(&killed);
                let mut r = 0;
                let mut ratio = killed_p / prev;
                while ratio > 1 {
                    ratio /= p;
                    r += 1;
                }
                at_least.push(r);
                prev = killed_p;
            }
            let mut primary = Vec::new();
            for k in (0..at_least.len()).rev() {
                let exact = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
                primary.extend(std::iter::repeat_n(p.pow(k as u32 + 1), exact));
            }
            if top.len() < primary.len() {
                top.resize(primary.len(), 1);
            }
            for (t, q) in top.iter_mut().zip(primary) {
                *t *= q;
            }
            p += 1;
        }
        let factors = top.into_iter().rev().map(BigInt::from).collect();
        FinAbGroup::from_chain(factors, 0).expect("divisibility chain")
    }

    /// `ω(x, y)` as an integer modulo `den`.
    pub(crate) fn omega_raw(&self, x: u32, y: u32) -> u64 {
        let k = self.coefficient.ngens();
        let g = self.genus;
        let digit = |z: u32, i: usize| (z as u64 / self.strides[i]) % self.moduli[i];
        // υ between the copies starting at coordinates `u` of `x` and `v` of `y`
        let ups = |x: u32, u: usize, y: u32, v: usize| -> u64 {
            let mut s = 0u64;
            for p in 0..k {
                for q in 0..k {
                    s = (s + digit(x, u + p) * digit(y, v + q) % self.den * self.gram[p][q]) % self.den;
                }
            }
            s
        };
        let mut acc = 0u64;
        for i in 0..g {
            let (a, b) = (i * k, (g + i) * k);
            acc = (acc + ups(x, a, y, b) + self.den - ups(y, a, x, b)) % self.den;
        }
        acc
    }

    pub fn omega(&self, x: u32, y: u32) -> Phase {
        Phase::new(self.omega_raw(x, y) as i64, self.den as i64)
    }

    pub fn omega_digits(&self, x: &[u64], y: &[u64]) -> Result<Phase, SympError> {
        Ok(self.omega(self.encode(x)?, self.encode(y)?))
    }

    /// The coordinate basis element `e_j`.
    pub(crate) fn unit(&self, j: usize) -> u32 {
        self.strides[j] as u32
    }

    /// `base + ⟨x⟩` for a sorted subgroup `base`.
    pub(crate) fn extend(&self, base: &[u32], x: u32) -> Vec<u32> {
        if base.binary_search(&x).is_ok() {
            return base.to_vec();
        }
        let mut out: Vec<u32> = base.to_vec();
        let mut shift = x;
        while base.binary_search(&shift).is_err() {
            out.extend(base.iter().map(|&h| self.add(h, shift)));
            shift = self.add(shift, x);
        }
        out.sort_unstable();
        out
    }

    fn span(&self, gens: &[u32]) -> Vec<u32> {
        gens.iter().fold(vec![0u32], |acc, &g| self.extend(&acc, g))
    }

    /// Span of the coordinate vectors `e_j`, `j ∈ range`.
    pub(crate) fn span_of_units(&self, range: std::ops::Range<usize>) -> Vec<u32> {
        let gens: Vec<u32> = range.map(|j| self.unit(j)).collect();
        self.span(&gens)
    }

    pub(crate) fn ann_of(&self, gens: &[u32]) -> Vec<u32> {
        if let Some(t) = &self.ann_table {
            let words = t[0].len();
            let mut bits = vec![u64::MAX; words];
            for &g in gens {
                for (b, w) in bits.iter_mut().zip(&t[g as usize]) {
                    *b &= w;
                }
            }
            return (0..self.size as u32).filter(|&x| bits[x as usize / 64] >> (x % 64) & 1 == 1).collect();
        }
        (0..self.size as u32).filter(|&x| gens.iter().all(|&g| self.omega_raw(x, g) == 0)).collect()
    }

    /// Same carrier and the same `ω` on coordinate vectors. `den` and `gram` come from
    /// reduced phases, so comparing them is comparing the forms.
    pub fn same_form(&self, other: &SymplecticModule) -> bool {
        self.genus == other.genus && self.moduli == other.moduli && self.den == other.den && self.gram == other.gram
    }

    /// `ω` is nondegenerate: only `0` pairs trivially with every coordinate vector.
    pub fn is_nondegenerate(&self) -> bool {
        let units: Vec<u32> = (0..self.width()).map(|j| self.unit(j)).collect();
        self.ann_of(&units) == vec![0]
    }

    fn check_cap(&self, cap: u64) -> Result<(), SympError> {
        if self.size > cap {
            return Err(SympError::CapExceeded { size: self.size, cap });
        }
        Ok(())
    }

    pub(crate) fn make(&self, elements: Vec<u32>) -> Subgroup {
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        for &e in &elements {
            if span.len() == elements.len() {
                break;
            }
            if span.binary_search(&e).is_err() {
                gens.push(e);
                span = self.extend(&span, e);
            }
        }
        Subgroup { generators: gens.iter().map(|&g| self.decode(g)).collect(), elements, gens }
    }

    pub fn subgroup(&self, generators: &[Vec<u64>]) -> Result<Subgroup, SympError> {
        let gens: Vec<u32> = generators.iter().map(|g| self.encode(g)).collect::<Result<_, _>>()?;
        Ok(self.make(self.span(&gens)))
    }

    pub fn zero_subgroup(&self) -> Subgroup {
        self.make(vec![0])
    }

    pub fn full(&self) -> Subgroup {
        self.make((0..self.size as u32).collect())
    }

    /// `H¹(C; B)` for a subgroup `B ⊆ A` given by generators in `A`'s coordinates: the
    /// elements whose every cycle coordinate lies in `B`.
    pub fn cohomology_of_subgroup(&self, b_gens: &[Vec<u64>]) -> Result<Subgroup, SympError> {
        let k = self.coefficient.ngens();
        let mut gens = Vec::new();
        for slot in 0..2 * self.genus {
            for g in b_gens {
                if g.len() != k {
                    return Err(SympError::DimensionMismatch);
                }
                let mut d = vec![0u64; self.width()];
                d[slot * k..(slot + 1) * k].copy_from_slice(g);
                gens.push(d);
            }
        }
        self.subgroup(&gens)
    }
}

/// A subgroup stored as its sorted element list (its canonical form) together with
/// the greedy generating set read off in that order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    #[serde(skip)]
    elements: Vec<u32>,
    #[serde(skip)]
    pub(crate) gens: Vec<u32>,
    /// Canonical generators in carrier coordinates.
    pub generators: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Basis (as columns) of the relations among the canonical generators.
    pub(crate) fn relation_basis(&self, m: &SymplecticModule) -> IntMatrix {
        let w = m.width();
        let k = self.gens.len();
        // kernel of [G | diag(moduli)] projected to the first k coordinates
        let mut big = IntMatrix::zeros(w, k + w);
        for (j, g) in self.generators.iter().enumerate() {
            for i in 0..w {
                big[(i, j)] = BigInt::from(g[i]);
            }
        }
        for i in 0..w {
            big[(i, k + i)] = BigInt::from(m.moduli[i]);
        }
        let ker = integer_kernel(&big);
        let rel = ker.select_rows(&(0..k).collect::<Vec<_>>());
        Lattice::from_integer_columns(&rel).integer_basis().clone()
    }

    /// Abstract structure, by counting elements killed by prime powers.
    pub fn structure(&self, m: &SymplecticModule) -> FinAbGroup {
        m.subquotient_structure(&self.elements, &[0])
    }

    /// Abstract structure as `Z^k` modulo the relations among the generators.
    pub fn structure_from_relations(&self, m: &SymplecticModule) -> FinAbGroup {
        FinAbGroup::cokernel(&self.relation_basis(m))
    }
}

pub fn annihilator(m: &SymplecticModule, gamma: &Subgroup) -> Subgroup {
    m.make(m.ann_of(&gamma.gens))
}

pub fn is_isotropic(m: &SymplecticModule, gamma: &Subgroup) -> bool {
    gamma.gens.iter().all(|&x| gamma.gens.iter().all(|&y| m.omega_raw(x, y) == 0))
}

pub fn is_lagrangian(m: &SymplecticModule, gamma: &Subgroup) -> bool {
    is_isotropic(m, gamma) && gamma.order() * gamma.order() == m.order()
}

/// Every subgroup whose greedy generators are drawn from `allowed`, each produced once.
/// Greedy generators are `g_i = min(K \\ ⟨g_1..g_{i-1}⟩)`, so the children of `H` are the
/// `⟨H, x⟩` with `x` above the last generator of `H` and `x = min(⟨H, x⟩ \\ H)`.
fn canonical_search<F>(m: &SymplecticModule, allowed: F) -> Vec<Vec<u32>>
where
    F: Fn(&[u32]) -> Vec<u32>,
{
    let mut out = Vec::new();
    let mut stack = vec![(vec![0u32], Vec::<u32>::new())];
    // rep[y] = min(y + H) for the node H being expanded
    let mut rep = vec![u32::MAX; m.size as usize];
    while let Some((h, gens)) = stack.pop() {
        let last = gens.last().copied().unwrap_or(0);
        rep.fill(u32::MAX);
        for y in 0..m.size as u32 {
            if rep[y as usize] == u32::MAX {
                for &e in &h {
                    rep[m.add(y, e) as usize] = y;
                }
            }
        }
        for x in allowed(&gens) {
            if x <= last || rep[x as usize] != x || x == 0 {
                continue;
            }
            // the other new cosets jx + H must start above x
            let mut shift = m.add(x, x);
            let mut minimal = true;
            while rep[shift as usize] != 0 {
                if rep[shift as usize] < x {
                    minimal = false;
                    break;
                }
                shift = m.add(shift, x);
            }
            if minimal {
                let mut g2 = gens.clone();
                g2.push(x);
                stack.push((m.extend(&h, x), g2));
            }
        }
        out.push(h);
    }
    out
}

fn sorted(m: &SymplecticModule, sets: Vec<Vec<u32>>) -> Vec<Subgroup> {
    let mut v: Vec<Subgroup> = sets.into_iter().map(|e| m.make(e)).collect();
    v.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    v
}

/// Every subgroup of the carrier, sorted by order then elements.
pub fn all_subgroups(m: &SymplecticModule, cap: u64) -> Result<Vec<Subgroup>, SympError> {
    m.check_cap(cap)?;
    let all: Vec<u32> = (0..m.size as u32).collect();
    Ok(sorted(m, canonical_search(m, |_| all.clone())))
}

/// Every Lagrangian, found by growing isotropic subgroups inside their annihilators.
pub fn enumerate_lagrangians(m: &SymplecticModule, cap: u64) -> Result<Vec<Subgroup>, SympError> {
    m.check_cap(cap)?;
    let iso = canonical_search(m, |gens| m.ann_of(gens));
    let lag: Vec<Vec<u32>> = iso.into_iter().filter(|h| (h.len() as u64).pow(2) == m.size).collect();
    let out = sorted(m, lag);
    debug_assert!(out.iter().all(|l| is_lagrangian(m, l)));
    Ok(out)
}

/// `Γ₂ / Γ₁` for `Γ₁ ⊆ Γ₂`.
pub fn subgroup_quotient(m: &SymplecticModule, g1: &Subgroup, g2: &Subgroup) -> Result<FinAbGroup, SympError> {
    if !g1.is_subgroup_of(g2) {
        return Err(SympError::NotContained);
    }
    Ok(m.subquotient_structure(&g2.elements, &g1.elements))
}

/// `(carrier / Γ)^∨ ≅ ann(Γ)` through `x ↦ ω(x, ·)`: the map is well defined on
/// `ann(Γ)`, injective by nondegeneracy, and the two groups have the same structure.
pub fn quotient_dual_matches_annihilator(m: &SymplecticModule, gamma: &Subgroup) -> bool {
    let ann = m.ann_of(&gamma.gens);
    let units: Vec<u32> = (0..m.width()).map(|j| m.unit(j)).collect();
    let radical = m.ann_of(&units);
    let injective = ann.iter().all(|&x| x == 0 || radical.binary_search(&x).is_err());
    let well_defined = ann.iter().all(|&x| gamma.gens.iter().all(|&g| m.omega_raw(x, g) == 0));
    let carrier: Vec<u32> = (0..m.size as u32).collect();
    injective && well_defined && m.subquotient_structure(&carrier, &gamma.elements) == m.subquotient_structure(&ann, &[0])
}

/// Orders of all subgroups, for quick reporting.
pub fn subgroup_orders(subs: &[Subgroup]) -> BTreeSet<u64> {
    subs.iter().map(Subgroup::order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_algebra;
    use num_traits::ToPrimitive;

    fn cyclic_module(n: u64, g: usize) -> SymplecticModule {
        let a = FinAbGroup::cyclic(n);
        let gram = vec![vec![Phase::new(1, n as i64)]];
        SymplecticModule::new(a.clone(), PhasePairing { left: a.clone(), right: a, gram }, g).unwrap()
    }

    /// Independent filter: subsets closed under addition, found by brute force over
    /// all subsets of a carrier of at most 16 elements.
    fn brute_subgroups(m: &SymplecticModule) -> Vec<Vec<u32>> {
        let n = m.order() as u32;
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let set: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if set.iter().all(|&x| set.iter().all(|&y| mask >> m.add(x, y) & 1 == 1)) {
                out.push(set);
            }
        }
        out
    }

    fn brute_lagrangian_count(m: &SymplecticModule) -> usize {
        brute_subgroups(m)
            .into_iter()
            .filter(|s| {
                let iso = s.iter().all(|&x| s.iter().all(|&y| m.omega(x, y).is_zero()));
                iso && (s.len() as u64).pow(2) == m.order()
            })
            .count()
    }

    #[test]
    fn small_lagrangian_counts() {
        let m1 = cyclic_module(2, 1);
        assert_eq!(enumerate_lagrangians(&m1, DEFAULT_CAP).unwrap().len(), 3);
        assert_eq!(brute_lagrangian_count(&m1), 3);
        let m2 = cyclic_module(2, 2);
        let l2 = enumerate_lagrangians(&m2, DEFAULT_CAP).unwrap();
        assert_eq!(l2.len(), 15);
        assert_eq!(l2.len(), (2 + 1) * (4 + 1));
        assert_eq!(brute_lagrangian_count(&m2), 15);
        for l in &l2 {
            assert!(is_lagrangian(&m2, l));
            assert_eq!(l.order(), 4);
        }
    }

    #[test]
    fn trivial_coefficients() {
        let m = SymplecticModule::for_algebra(&parse_algebra("E8").unwrap(), 2).unwrap();
        assert_eq!(m.order(), 1);
        let l = enumerate_lagrangians(&m, DEFAULT_CAP).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].order(), 1);
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        let m = cyclic_module(2, 1);
        assert_eq!(all_subgroups(&m, DEFAULT_CAP).unwrap().len(), 5);
        let m3 = cyclic_module(3, 1);
        assert_eq!(all_subgroups(&m3, DEFAULT_CAP).unwrap().len(), brute_subgroups(&m3).len());
        let m4 = cyclic_module(4, 1);
        assert_eq!(all_subgroups(&m4, DEFAULT_CAP).unwrap().len(), brute_subgroups(&m4).len());
    }

    #[test]
    fn annihilator_basics() {
        let m = cyclic_module(2, 1);
        let zero = m.zero_subgroup();
        assert_eq!(annihilator(&m, &zero), m.full());
        assert_eq!(annihilator(&m, &m.full()), zero);
        assert!(is_isotropic(&m, &zero) && !is_lagrangian(&m, &zero));
        let g = m.subgroup(&[vec![1, 0]]).unwrap();
        assert!(is_lagrangian(&m, &g));
    }

    #[test]
    fn counted_structure_matches_relations() {
        for (n, g) in [(4, 1), (6, 1), (8, 1), (2, 2)] {
            let m = cyclic_module(n, g);
            for h in all_subgroups(&m, DEFAULT_CAP).unwrap() {
                assert_eq!(h.structure(&m), h.structure_from_relations(&m), "Z/{n} g={g}");
            }
        }
    }

    #[test]
    fn quotient_of_cyclic_chain() {
        let m = cyclic_module(8, 1);
        let g1 = m.subgroup(&[vec![4, 0]]).unwrap();
        let g2 = m.subgroup(&[vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(subgroup_quotient(&m, &g1, &g2).unwrap(), FinAbGroup::from_orders(&[4, 4]));
        assert_eq!(subgroup_quotient(&m, &g1, &m.full()).unwrap(), FinAbGroup::from_orders(&[4, 8]));
        assert!(subgroup_quotient(&m, &g2, &g1).is_err());
    }

    #[test]
    fn spin4_diagonal_is_lagrangian() {
        for g in 1..3 {
            let m = SymplecticModule::for_algebra(&parse_algebra("D2").unwrap(), g).unwrap();
            let z = center(&RootDatum::semisimple(&parse_algebra("D2").unwrap(), &crate::rootdata::Form::SimplyConnected).unwrap()).unwrap();
            // the diagonal element of Z(Spin(4)) = Z/2 × Z/2, via the A1 × A1 coweights
            let half = num_rational::BigRational::new(1.into(), 2.into());
            let diag = z.classify(&[half.clone(), half]).unwrap();
            let d: Vec<u64> = diag.iter().map(|x| x.to_u64().unwrap()).collect();
            let gamma = m.cohomology_of_subgroup(&[d]).unwrap();
            assert!(is_lagrangian(&m, &gamma), "g = {g}");
            assert_eq!(annihilator(&m, &gamma), gamma);
        }
    }

    #[test]
    fn double_annihilator_and_duals() {
        for (n, g) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2)] {
            let m = cyclic_module(n, g);
            for s in all_subgroups(&m, DEFAULT_CAP).unwrap() {
                let a = annihilator(&m, &s);
                assert_eq!(annihilator(&m, &a), s);
                assert_eq!(s.order() * a.order(), m.order());
                assert!(quotient_dual_matches_annihilator(&m, &s));
                assert!(subgroup_quotient(&m, &s, &s).unwrap().is_trivial());
            }
        }
    }

    #[test]
    fn omega_is_skew_and_nondegenerate() {
        for types in ["A1", "A2", "A3", "D2", "D4"] {
            let m = SymplecticModule::for_algebra(&parse_algebra(types).unwrap(), 1).unwrap();
            assert!(m.is_nondegenerate());
            for x in 0..m.order() as u32 {
                for y in 0..m.order() as u32 {
                    assert!((m.omega(x, y) + m.omega(y, x)).is_zero());
                }
            }
        }
    }

    #[test]
    fn cap_and_containment_errors() {
        let m = cyclic_module(2, 2);
        assert!(matches!(all_subgroups(&m, 8), Err(SympError::CapExceeded { .. })));
        let a = m.subgroup(&[vec![1, 0, 0, 0]]).unwrap();
        let b = m.subgroup(&[vec![0, 1, 0, 0]]).unwrap();
        assert!(matches!(subgroup_quotient(&m, &a, &b), Err(SympError::NotContained)));
    }
}
