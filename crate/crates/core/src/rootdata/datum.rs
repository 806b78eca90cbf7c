use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cartan::{block_cartan, SimpleType};
use super::RootDataError;
use crate::zmod::{big_vec, integer_kernel, rat_vec, IntMatrix, Lattice};

/// A root datum `(X^•, R, X_•, R^∨)` realized in `Q^n` (cocharacters) and its dual
/// `Q^n` (characters) with the standard pairing.
///
/// Roots and coroots are integer vectors. The first `semisimple_rank` roots are the
/// simple roots, in the order of `types`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RootDatum {
    rank: usize,
    cochar: Lattice,
    char_lattice: Lattice,
    roots: Vec<Vec<BigInt>>,
    coroots: Vec<Vec<BigInt>>,
    semisimple_rank: usize,
    types: Vec<SimpleType>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Form {
    SimplyConnected,
    Adjoint,
    /// Quotient of the simply connected form by the subgroup generated by these
    /// coweights (rational vectors in simple-coroot coordinates).
    QuotientBy(Vec<Vec<BigRational>>),
}

/// Full root system `(roots, coroots)` in simple-root / simple-coroot coordinates.
pub fn root_system(cartan: &[Vec<i64>]) -> Vec<(Vec<i64>, Vec<i64>)> {
    let r = cartan.len();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut out: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        seen.insert(e.clone(), out.len());
        out.push((e.clone(), e));
        queue.push_back(out.len() - 1);
    }
    while let Some(idx) = queue.pop_front() {
        for i in 0..r {
            let (c, d) = out[idx].clone();
            // s_i(β) = β - ⟨β, α_i^∨⟩ α_i ;  s_i(β^∨) = β^∨ - ⟨α_i, β^∨⟩ α_i^∨
            let pb: i64 = (0..r).map(|k| c[k] * cartan[k][i]).sum();
            let pc: i64 = (0..r).map(|k| cartan[i][k] * d[k]).sum();
            let mut c2 = c;
            c2[i] -= pb;
            let mut d2 = d;
            d2[i] -= pc;
            if !seen.contains_key(&c2) {
                seen.insert(c2.clone(), out.len());
                out.push((c2, d2));
                queue.push_back(out.len() - 1);
            }
        }
    }
    out
}

impl RootDatum {
    /// Builds a datum from a simple system: `simple_roots` is `r × n` (rows are roots in
    /// character coordinates), `simple_coroots` is `n × r` (columns are coroots).
    pub fn from_simple_system(
        types: &[SimpleType],
        simple_roots: &IntMatrix,
        simple_coroots: &IntMatrix,
        cochar: Lattice,
    ) -> Result<Self, RootDataError> {
        let cartan = block_cartan(types);
        let r = cartan.len();
        let n = cochar.ambient_rank();
        if simple_roots.rows() != r || simple_roots.cols() != n || simple_coroots.rows() != n || simple_coroots.cols() != r {
            return Err(RootDataError::DimensionMismatch);
        }
        if !cochar.is_full_rank() {
            return Err(RootDataError::DimensionMismatch);
        }
        let pairing = simple_roots.mul(simple_coroots);
        if pairing != IntMatrix::from_rows(&cartan) {
            return Err(RootDataError::CartanMismatch);
        }
        let sys = root_system(&cartan);
        let st = simple_roots.transpose();
        let roots: Vec<Vec<BigInt>> = sys.iter().map(|(c, _)| st.mul_vec(&big_vec(c))).collect();
        let coroots: Vec<Vec<BigInt>> = sys.iter().map(|(_, d)| simple_coroots.mul_vec(&big_vec(d))).collect();
        Self::new(cochar, roots, coroots, r, types.to_vec())
    }

    /// Validating constructor.
    pub fn new(
        cochar: Lattice,
        roots: Vec<Vec<BigInt>>,
        coroots: Vec<Vec<BigInt>>,
        semisimple_rank: usize,
        types: Vec<SimpleType>,
    ) -> Result<Self, RootDataError> {
        let n = cochar.ambient_rank();
        let char_lattice = cochar.dual().map_err(|_| RootDataError::DimensionMismatch)?;
        if roots.len() != coroots.len() {
            return Err(RootDataError::DimensionMismatch);
        }
        for (a, c) in roots.iter().zip(&coroots) {
            if a.len() != n || c.len() != n {
                return Err(RootDataError::DimensionMismatch);
            }
            if !char_lattice.contains(&rat_vec(a)) {
                return Err(RootDataError::RootNotInLattice);
            }
            if !cochar.contains(&rat_vec(c)) {
                return Err(RootDataError::RootNotInLattice);
            }
            let p: BigInt = a.iter().zip(c).map(|(x, y)| x * y).sum();
            if p != BigInt::from(2) {
                return Err(RootDataError::CartanMismatch);
            }
        }
        let d = RootDatum { rank: n, cochar, char_lattice, roots, coroots, semisimple_rank, types };
        if d.cartan_matrix() != IntMatrix::from_rows(&block_cartan(&d.types)) {
            return Err(RootDataError::CartanMismatch);
        }
        Ok(d)
    }

    /// Simply connected, adjoint or intermediate form of a semisimple algebra, in
    /// simple-coroot coordinates.
    pub fn semisimple(types: &[SimpleType], form: &Form) -> Result<Self, RootDataError> {
        let c = IntMatrix::from_rows(&block_cartan(types));
        let r = c.rows();
        let coweights = coweight_lattice_of(&c);
        let cochar = match form {
            Form::SimplyConnected => Lattice::standard(r),
            Form::Adjoint => coweights,
            Form::QuotientBy(gens) => {
                for g in gens {
                    if g.len() != r || !coweights.contains(g) {
                        return Err(RootDataError::NotCentralSubgroup);
                    }
                }
                let mut all = gens.clone();
                all.extend(Lattice::standard(r).basis_vectors());
                Lattice::from_generators(&all, r)
            }
        };
        Self::from_simple_system(types, &c, &IntMatrix::identity(r), cochar)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.semisimple_rank
    }

    pub fn types(&self) -> &[SimpleType] {
        &self.types
    }

    pub fn is_semisimple(&self) -> bool {
        self.semisimple_rank == self.rank
    }

    pub fn cochar_lattice(&self) -> &Lattice {
        &self.cochar
    }

    pub fn char_lattice(&self) -> &Lattice {
        &self.char_lattice
    }

    pub fn roots(&self) -> &[Vec<BigInt>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<BigInt>] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// `r × n` matrix of simple roots.
    pub fn simple_roots(&self) -> IntMatrix {
        IntMatrix::from_big_rows(self.roots[..self.semisimple_rank].to_vec(), self.rank)
    }

    /// `n × r` matrix whose columns are the simple coroots.
    pub fn simple_coroots(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.coroots[..self.semisimple_rank], self.rank)
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        self.simple_roots().mul(&self.simple_coroots())
    }

    /// `⟨α, x⟩` for a root index and a rational cocharacter.
    pub fn pair_root(&self, root: usize, x: &[BigRational]) -> BigRational {
        self.roots[root]
            .iter()
            .zip(x)
            .fold(BigRational::zero(), |acc, (a, b)| acc + BigRational::from_integer(a.clone()) * b)
    }

    /// Matrix of the reflection `x ↦ x - ⟨α, x⟩ α^∨` on cocharacters.
    pub fn reflection_matrix(&self, root: usize) -> IntMatrix {
        let n = self.rank;
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = &self.coroots[root][i] * &self.roots[root][j];
                m[(i, j)] -= v;
            }
        }
        m
    }

    /// The root lattice, spanned by the roots in character coordinates.
    pub fn root_lattice(&self) -> Lattice {
        Lattice::from_integer_columns(&self.simple_roots().transpose())
    }

    /// The coroot lattice.
    pub fn coroot_lattice(&self) -> Lattice {
        Lattice::from_integer_columns(&self.simple_coroots())
    }

    /// Coweight lattice `{x : ⟨α, x⟩ ∈ Z for all roots}` (semisimple only).
    pub fn coweight_lattice(&self) -> Result<Lattice, RootDataError> {
        self.root_lattice().dual().map_err(|_| RootDataError::NotSemisimple)
    }

    /// Weight lattice `{λ : ⟨λ, α^∨⟩ ∈ Z}` (semisimple only).
    pub fn weight_lattice(&self) -> Result<Lattice, RootDataError> {
        self.coroot_lattice().dual().map_err(|_| RootDataError::NotSemisimple)
    }

    pub fn is_simply_connected(&self) -> bool {
        self.is_semisimple() && self.cochar == self.coroot_lattice()
    }

    pub fn is_adjoint(&self) -> bool {
        self.is_semisimple() && self.coweight_lattice().is_ok_and(|l| l == self.cochar)
    }

    /// Same roots and coroots with cocharacters replaced by the coroot lattice.
    pub fn simply_connected_cover(&self) -> Result<RootDatum, RootDataError> {
        if !self.is_semisimple() {
            return Err(RootDataError::NotSemisimple);
        }
        let mut d = self.clone();
        d.cochar = self.coroot_lattice();
        d.char_lattice = d.cochar.dual().map_err(|_| RootDataError::NotSemisimple)?;
        Ok(d)
    }

    /// Same roots and coroots with cocharacters replaced by the coweight lattice.
    pub fn adjoint_quotient(&self) -> Result<RootDatum, RootDataError> {
        let mut d = self.clone();
        d.cochar = self.coweight_lattice()?;
        d.char_lattice = d.cochar.dual().map_err(|_| RootDataError::NotSemisimple)?;
        Ok(d)
    }

    /// Swaps characters with cocharacters and roots with coroots.
    ///
    /// Transposing the Cartan matrix of `F4` or `G2` reverses Bourbaki numbering, so the
    /// simple roots of those blocks are listed in reverse order.
    pub fn langlands_dual(&self) -> RootDatum {
        let mut perm: Vec<usize> = (0..self.roots.len()).collect();
        for (t, range) in self.types.iter().zip(super::cartan::block_ranges(&self.types)) {
            if matches!(t.family, super::cartan::Family::F | super::cartan::Family::G) {
                perm[range.clone()].reverse();
            }
        }
        RootDatum {
            rank: self.rank,
            cochar: self.char_lattice.clone(),
            char_lattice: self.cochar.clone(),
            roots: perm.iter().map(|&i| self.coroots[i].clone()).collect(),
            coroots: perm.iter().map(|&i| self.roots[i].clone()).collect(),
            semisimple_rank: self.semisimple_rank,
            types: self.types.iter().map(SimpleType::dual).collect(),
        }
    }

    /// Basis of `X_• ∩ (annihilator of the roots)`.
    pub fn radical_cocharacters(&self) -> Vec<Vec<BigRational>> {
        let k = integer_kernel(&self.simple_roots().mul(self.cochar.integer_basis()));
        (0..k.cols()).map(|j| self.cochar.vector(&k.col(j))).collect()
    }

    /// Integer vectors identifying the simple roots, used by diagram-automorphism search.
    pub fn simple_index_of_root(&self, root: &[BigInt]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }
}

/// Coweight lattice for a square Cartan matrix in simple-coroot coordinates:
/// the span of the columns of `C^{-1}`.
pub fn coweight_lattice_of(c: &IntMatrix) -> Lattice {
    let r = c.rows();
    let inv = c.rational_inverse().expect("Cartan matrix is invertible");
    let gens: Vec<Vec<BigRational>> = (0..r).map(|j| (0..r).map(|i| inv[i][j].clone()).collect()).collect();
    Lattice::from_generators(&gens, r)
}

/// Convenience: `1/den * v`.
pub fn scaled(v: &[i64], den: i64) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::new(x.into(), den.into())).collect()
}
