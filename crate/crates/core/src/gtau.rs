//! General embeddings of a center into a torus, the extended groups they define,
//! and the dual construction on the Langlands side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{
    center, de_rat_vecs, root_datum_isomorphic, ser_rat_vecs, CenterData, RootDataError, RootDatum, RootDatumIso,
};
use crate::zmod::{
    cokernel_with_maps, gl_plus_minus_one, is_plus_minus_one, lift_to_gl, mod_inverse, FinAbGroup, FinAbHom,
    IntMatrix, Lattice,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GtauError {
    #[error("determinant is not a unit modulo N")]
    NotInvertible,
    #[error("embedding does not lift to GL_s(Z)")]
    NotGeneral,
    #[error("embedding was built for a different center")]
    CenterMismatch,
    #[error("matrix has the wrong shape")]
    DimensionMismatch,
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// Decides generality of an `s × s` matrix over `Z/N`. Returns the `GL_s(Z)` lift when
/// it exists. For `s >= 2` the criterion is `det ≡ ±1 (mod N)`, since `SL_s(Z)` surjects
/// onto `SL_s(Z/N)`; for `s = 1` the entry must be `±1`. The lift is always constructed
/// and checked, never assumed.
pub fn is_general_embedding(matrix: &IntMatrix, n: u64, s: usize) -> Result<Option<IntMatrix>, GtauError> {
    if matrix.rows() != s || matrix.cols() != s {
        return Err(GtauError::DimensionMismatch);
    }
    let big_n = BigInt::from(n.max(1));
    if mod_inverse(&matrix.det(), &big_n).is_none() {
        return Err(GtauError::NotInvertible);
    }
    if s > 0 && !is_plus_minus_one(&matrix.det(), &big_n) {
        return Ok(None);
    }
    Ok(lift_to_gl(matrix, &big_n))
}

/// `τ : Z(G̃) → T`, generator `z_j` (order `N_j`) going to `A[:, j] / N_j mod Z^s`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneralEmbedding {
    pub center: CenterData,
    pub orders: Vec<u64>,
    pub modulus: u64,
    pub matrix: IntMatrix,
    pub lift: IntMatrix,
}

impl GeneralEmbedding {
    pub fn new(center: CenterData, matrix: IntMatrix) -> Result<Self, GtauError> {
        let orders = center.group.factors_u64();
        if !center.group.is_finite() {
            return Err(GtauError::CenterMismatch);
        }
        let s = orders.len();
        let modulus = orders.iter().fold(1u64, |a, &b| a.lcm(&b));
        let matrix = matrix.mod_floor(&BigInt::from(modulus));
        let lift = is_general_embedding(&matrix, modulus, s)?.ok_or(GtauError::NotGeneral)?;
        Ok(GeneralEmbedding { center, orders, modulus, matrix, lift })
    }

    /// The identity matrix embedding.
    pub fn standard(center: CenterData) -> Self {
        let s = center.group.ngens();
        Self::new(center, IntMatrix::identity(s)).expect("identity is general")
    }

    /// Every general embedding of the center, one per distinct map.
    pub fn all(center: &CenterData) -> Vec<GeneralEmbedding> {
        let orders = center.group.factors_u64();
        let s = orders.len();
        if s == 0 {
            return vec![Self::standard(center.clone())];
        }
        let modulus = orders.iter().fold(1u64, |a, &b| a.lcm(&b));
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for m in gl_plus_minus_one(s, modulus) {
            let Ok(e) = Self::new(center.clone(), m) else { continue };
            let key = e.images();
            if !seen.contains(&key) {
                seen.push(key);
                out.push(e);
            }
        }
        out
    }

    pub fn torus_rank(&self) -> usize {
        self.orders.len()
    }

    /// `τ(z_j)` as rational vectors in `Q^s`, reduced into `[0, 1)`.
    pub fn images(&self) -> Vec<Vec<BigRational>> {
        (0..self.torus_rank())
            .map(|j| {
                let nj = BigInt::from(self.orders[j]);
                self.matrix.col(j).iter().map(|a| BigRational::new(a.mod_floor(&nj), nj.clone())).collect()
            })
            .collect()
    }

    /// `X_•(T/Z) = Z^s + span τ(z_j)`.
    pub fn quotient_torus_cocharacters(&self) -> Lattice {
        let s = self.torus_rank();
        let mut gens = Lattice::standard(s).basis_vectors();
        gens.extend(self.images());
        Lattice::from_generators(&gens, s)
    }
}

/// A lattice map `Q^n → Q^m` given by an integer matrix, with source and target lattices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeMap {
    pub matrix: IntMatrix,
    pub source: Lattice,
    pub target: Lattice,
}

impl LatticeMap {
    pub fn is_surjective(&self) -> bool {
        self.source.image(&self.matrix) == self.target
    }
}

/// `(G̃ × T) / Z(G̃)` with `Z(G̃)` embedded as `z ↦ (z, τ(z))`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedGroupDatum {
    pub base: RootDatum,
    pub torus: Lattice,
    pub tau: GeneralEmbedding,
    pub result: RootDatum,
    /// `p : G̃_τ → G_ad`.
    pub to_adjoint: LatticeMap,
    /// `∂ : G̃_τ → T / Z(G̃)`.
    pub to_torus_quotient: LatticeMap,
    pub convention: String,
}

const CONVENTION: &str = "quotient by {(z, tau(z))}";

/// Root datum of `(G × T) / Z` for a semisimple `base` with cocharacter lattice `X_•(G)`,
/// a torus with cocharacter lattice `torus` in `Q^s`, and central elements given by
/// coweight lifts `centrals[j]` of `base` glued to torus points `images[j]`.
pub fn glued_datum(
    base: &RootDatum,
    torus: &Lattice,
    centrals: &[Vec<BigRational>],
    images: &[Vec<BigRational>],
) -> Result<RootDatum, GtauError> {
    let r = base.rank();
    let s = torus.ambient_rank();
    let n = r + s;
    let mut gens = base.cochar_lattice().direct_sum(torus).basis_vectors();
    for (c, t) in centrals.iter().zip(images) {
        let mut v = c.clone();
        v.extend(t.iter().cloned());
        gens.push(v);
    }
    let cochar = Lattice::from_generators(&gens, n);
    let pad = |v: &Vec<BigInt>| {
        let mut w = v.clone();
        w.extend(std::iter::repeat_n(BigInt::zero(), s));
        w
    };
    let roots = base.roots().iter().map(pad).collect();
    let coroots = base.coroots().iter().map(pad).collect();
    Ok(RootDatum::new(cochar, roots, coroots, base.semisimple_rank(), base.types().to_vec())?)
}

fn block_projection(r: usize, s: usize, first: bool) -> IntMatrix {
    let (rows, off) = if first { (r, 0) } else { (s, r) };
    let mut m = IntMatrix::zeros(rows, r + s);
    for i in 0..rows {
        m[(i, off + i)] = BigInt::one();
    }
    m
}

/// Builds `G̃_τ` from a simply connected semisimple base.
pub fn build_g_tau(base: &RootDatum, tau: &GeneralEmbedding) -> Result<ExtendedGroupDatum, GtauError> {
    if !base.is_simply_connected() {
        return Err(GtauError::RootData(RootDataError::NotSimplyConnected));
    }
    let z = center(base)?;
    if z.group != tau.center.group || z.generators != tau.center.generators {
        return Err(GtauError::CenterMismatch);
    }
    if !tau.lift.is_unimodular() {
        return Err(GtauError::NotGeneral);
    }
    let s = tau.torus_rank();
    let torus = Lattice::standard(s);
    let result = glued_datum(base, &torus, &z.generators, &tau.images())?;
    let r = base.rank();
    let to_adjoint = LatticeMap {
        matrix: block_projection(r, s, true),
        source: result.cochar_lattice().clone(),
        target: base.coweight_lattice()?,
    };
    let to_torus_quotient = LatticeMap {
        matrix: block_projection(r, s, false),
        source: result.cochar_lattice().clone(),
        target: tau.quotient_torus_cocharacters(),
    };
    Ok(ExtendedGroupDatum {
        base: base.clone(),
        torus,
        tau: tau.clone(),
        result,
        to_adjoint,
        to_torus_quotient,
        convention: CONVENTION.into(),
    })
}

impl ExtendedGroupDatum {
    /// `X^•(G̃_τ) / root lattice` is free of rank `s`, i.e. the center is a torus.
    pub fn center_is_torus(&self) -> bool {
        let x = self.result.char_lattice();
        let roots = self.result.root_lattice();
        let basis = x.basis_vectors();
        // coordinates of the roots in the character basis
        let mut coords = IntMatrix::zeros(x.rank(), roots.rank());
        for (j, v) in roots.basis_vectors().iter().enumerate() {
            let Some(c) = x.coordinates(v) else { return false };
            for (i, val) in c.into_iter().enumerate() {
                coords[(i, j)] = val;
            }
        }
        let q = crate::zmod::cokernel(&coords);
        basis.len() == self.result.rank() && q.torsion_rank() == 0 && q.free_rank() == self.tau.torus_rank()
    }
}

/// A matrix `B ∈ GL_s(Z)` with `B·A₁ ≡ A₂ (mod N)`, with the induced isomorphism.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TauWitness {
    pub b: IntMatrix,
    pub isomorphism: RootDatumIso,
}

pub fn tau_independence_witness(
    base: &RootDatum,
    t1: &GeneralEmbedding,
    t2: &GeneralEmbedding,
) -> Result<TauWitness, GtauError> {
    if t1.center.group != t2.center.group || t1.orders != t2.orders {
        return Err(GtauError::CenterMismatch);
    }
    let inv = t1.lift.unimodular_inverse().ok_or(GtauError::NotGeneral)?;
    let b = t2.lift.mul(&inv);
    let n = BigInt::from(t1.modulus);
    if b.mul(&t1.matrix).mod_floor(&n) != t2.matrix.mod_floor(&n) || !b.is_unimodular() {
        return Err(GtauError::VerificationFailed("B·A1 ≢ A2".into()));
    }
    let g1 = build_g_tau(base, t1)?;
    let g2 = build_g_tau(base, t2)?;
    let r = base.rank();
    let phi = IntMatrix::identity(r).direct_sum(&b);
    let phi_inv = IntMatrix::identity(r).direct_sum(&b.unimodular_inverse().ok_or(GtauError::NotGeneral)?);
    let to_rat = |m: &IntMatrix| -> Vec<Vec<BigRational>> {
        (0..m.rows()).map(|i| m.row(i).into_iter().map(BigRational::from_integer).collect()).collect()
    };
    let iso = RootDatumIso {
        node_map: (0..base.semisimple_rank()).collect(),
        cochar_map: to_rat(&phi),
        char_map: to_rat(&phi_inv.transpose()),
    };
    if !iso.verify(&g1.result, &g2.result) {
        return Err(GtauError::VerificationFailed("id x B is not an isomorphism".into()));
    }
    if root_datum_isomorphic(&g1.result, &g2.result).is_none() {
        return Err(GtauError::VerificationFailed("isomorphism search failed".into()));
    }
    Ok(TauWitness { b, isomorphism: iso })
}

/// The dual embedding `^Lτ : Z(^LG̃) → ^L(T/Z)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualEmbedding {
    /// Center of the simply connected cover of the dual group.
    pub dual_center: CenterData,
    /// `X^•(T/Z) = X_•(^L(T/Z))` in `Q^s`.
    pub dual_torus: Lattice,
    /// `X^•(T) = Z^s`, the cocharacters of `^LT`.
    pub dual_torus_cover: Lattice,
    /// `^Lτ(w_k)` as characters `χ_k ∈ Z^s`, read modulo `X^•(T/Z)`.
    #[serde(serialize_with = "ser_rat_vecs", deserialize_with = "de_rat_vecs")]
    pub images: Vec<Vec<BigRational>>,
    /// `Z(^LG̃) → X^•(T) / X^•(T/Z)` in quotient coordinates; an isomorphism.
    pub to_character_quotient: FinAbHom,
}

/// Pairing `⟨λ, x⟩ mod 1` between a weight of the base and a coweight.
fn rat_pair(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Computes `^Lτ`. `base` is the simply connected base of `τ`.
pub fn dual_tau(base: &RootDatum, tau: &GeneralEmbedding) -> Result<DualEmbedding, GtauError> {
    let s = tau.torus_rank();
    let dual_base = base.langlands_dual().simply_connected_cover()?;
    let dual_center = center(&dual_base)?;
    let xt = Lattice::standard(s);
    let dual_torus = tau.quotient_torus_cocharacters().dual().map_err(|_| GtauError::DimensionMismatch)?;
    let images_tau = tau.images();
    let mut images = Vec::new();
    for w in &dual_center.generators {
        // solve Σ_i χ_i A_ij / N_j ≡ ⟨w, c_j⟩ (mod 1) for χ ∈ Z^s
        let mut m = IntMatrix::zeros(s, 2 * s);
        let mut rhs = vec![BigInt::zero(); s];
        for j in 0..s {
            let nj = BigInt::from(tau.orders[j]);
            for i in 0..s {
                m[(j, i)] = (&images_tau[j][i] * BigRational::from_integer(nj.clone())).to_integer();
            }
            m[(j, s + j)] = -nj.clone();
            let target = rat_pair(w, &tau.center.generators[j]) * BigRational::from_integer(nj.clone());
            if !target.is_integer() {
                return Err(GtauError::VerificationFailed("pairing of centers is not well defined".into()));
            }
            rhs[j] = target.to_integer();
        }
        let sol = if s == 0 {
            vec![]
        } else {
            crate::zmod::solve_integer(&m, &rhs)
                .ok_or_else(|| GtauError::VerificationFailed("character not in the image of X^•(T)".into()))?
        };
        images.push(sol[..s].iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>());
    }
    // Z(^LG̃) → X^•(T)/X^•(T/Z)
    let (q, coords) = Lattice::quotient_coordinates(&xt, &dual_torus).map_err(|_| GtauError::DimensionMismatch)?;
    let ck = cokernel_with_maps(&coords);
    let mut hm = IntMatrix::zeros(q.ngens(), dual_center.group.ngens());
    for (k, chi) in images.iter().enumerate() {
        let c = xt.coordinates(chi).expect("integral character");
        for (i, v) in ck.project(&c).into_iter().enumerate() {
            hm[(i, k)] = v;
        }
    }
    let to_character_quotient = FinAbHom::new(dual_center.group.clone(), q, hm)
        .map_err(|_| GtauError::VerificationFailed("dual embedding is not well defined".into()))?;
    if !to_character_quotient.is_isomorphism() {
        return Err(GtauError::VerificationFailed("dual embedding is not injective".into()));
    }
    Ok(DualEmbedding { dual_center, dual_torus, dual_torus_cover: xt, images, to_character_quotient })
}

/// `(^LG̃)_{^Lτ}` built from the dual base and `^Lτ`.
pub fn build_dual_side(base: &RootDatum, dual: &DualEmbedding) -> Result<RootDatum, GtauError> {
    let dual_base = base.langlands_dual().simply_connected_cover()?;
    glued_datum(&dual_base, &dual.dual_torus, &dual.dual_center.generators, &dual.images)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    pub certificate: serde_json::Value,
}

/// Report comparing `^L(G̃_τ)` with `(^LG̃)_{^Lτ}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedDualReport {
    pub base: String,
    pub tau_matrix: IntMatrix,
    pub convention: String,
    pub lhs_datum: RootDatum,
    pub rhs_datum: RootDatum,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<RootDatumIso>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_certificate: Option<String>,
    pub checks: Vec<CheckRecord>,
}

impl ExtendedDualReport {
    pub fn passed(&self) -> bool {
        self.isomorphism.is_some() && self.checks.iter().all(|c| c.pass)
    }
}

/// Verifies `^L(G̃_τ) ≅ (^LG̃)_{^Lτ}` and the dual exact sequence at the lattice level.
pub fn verify_dual_extended_group(base: &RootDatum, tau: &GeneralEmbedding) -> Result<ExtendedDualReport, GtauError> {
    let ext = build_g_tau(base, tau)?;
    let lhs = ext.result.langlands_dual();
    let dual = dual_tau(base, tau)?;
    let rhs = build_dual_side(base, &dual)?;
    let isomorphism = root_datum_isomorphic(&lhs, &rhs);
    let mut checks = Vec::new();

    // 0 → X^•(G̃_τ) → Λ_W ⊕ X^•(T) → Z(^LG̃) → 0
    let weights = base.weight_lattice()?;
    let ambient = weights.direct_sum(&Lattice::standard(tau.torus_rank()));
    let quotient = Lattice::finite_quotient(&ambient, ext.result.char_lattice());
    let ok = quotient.as_ref() == Ok(&dual.dual_center.group);
    checks.push(CheckRecord {
        name: "dual_sequence_quotient".into(),
        pass: ok,
        certificate: serde_json::json!({
            "quotient": quotient.as_ref().map(|q| q.to_string()).unwrap_or_else(|e| e.to_string()),
            "dual_center": dual.dual_center.group.to_string(),
        }),
    });
    checks.push(CheckRecord {
        name: "dual_embedding_injective".into(),
        pass: dual.to_character_quotient.is_isomorphism(),
        certificate: serde_json::json!({ "images": dual.images.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>() }),
    });
    checks.push(CheckRecord {
        name: "dual_center_matches_character_dual".into(),
        pass: dual.dual_center.group == tau.center.group,
        certificate: serde_json::json!({ "center": tau.center.group.to_string(), "dual_center": dual.dual_center.group.to_string() }),
    });
    let failure_certificate = isomorphism.is_none().then(|| {
        format!(
            "no isomorphism: lhs has {} roots, cochar {:?}; rhs cochar {:?}",
            lhs.num_roots(),
            lhs.cochar_lattice(),
            rhs.cochar_lattice()
        )
    });
    Ok(ExtendedDualReport {
        base: crate::rootdata::algebra_label(base.types()),
        tau_matrix: tau.matrix.clone(),
        convention: CONVENTION.into(),
        lhs_datum: lhs,
        rhs_datum: rhs,
        isomorphism,
        failure_certificate,
        checks,
    })
}

/// `X_•(T/Z) / X_•(T)` with its isomorphism from the center.
pub fn component_group(tau: &GeneralEmbedding) -> Result<(FinAbGroup, FinAbHom), GtauError> {
    let s = tau.torus_rank();
    let big = tau.quotient_torus_cocharacters();
    let small = Lattice::standard(s);
    let (q, coords) = Lattice::quotient_coordinates(&big, &small).map_err(|_| GtauError::DimensionMismatch)?;
    let ck = cokernel_with_maps(&coords);
    let mut m = IntMatrix::zeros(q.ngens(), tau.center.group.ngens());
    for (j, img) in tau.images().iter().enumerate() {
        let c = big.coordinates(img).expect("image lies in X_•(T/Z)");
        for (i, v) in ck.project(&c).into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    let hom = FinAbHom::new(tau.center.group.clone(), q.clone(), m)
        .map_err(|_| GtauError::VerificationFailed("component map is not well defined".into()))?;
    if !hom.is_isomorphism() {
        return Err(GtauError::VerificationFailed("component group is not the center".into()));
    }
    Ok((q, hom))
}

/// Order of the center as an integer, for reporting.
pub fn center_order(tau: &GeneralEmbedding) -> u64 {
    tau.center.group.order().to_u64().unwrap_or(0)
}
