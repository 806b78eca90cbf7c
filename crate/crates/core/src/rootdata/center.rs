use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cartan::block_ranges;
use super::datum::RootDatum;
use super::RootDataError;
use crate::zmod::{cokernel_with_maps, Cokernel, FinAbGroup, IntMatrix, Lattice, Phase, PhasePairing};

/// The center `X_•(adjoint) / X_•(d)` with rational coweight representatives.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CenterData {
    pub group: FinAbGroup,
    /// Coweight lifts of the group generators, in the datum's cocharacter coordinates.
    #[serde(serialize_with = "ser_rat_vecs", deserialize_with = "de_rat_vecs")]
    pub generators: Vec<Vec<BigRational>>,
    #[serde(skip_serializing, default = "empty_lattice")]
    coweights: Lattice,
    #[serde(skip)]
    cokernel: Option<Cokernel>,
}

fn empty_lattice() -> Lattice {
    Lattice::zero(0)
}

pub(crate) fn ser_rat_vecs<S: serde::Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    let out: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    out.serialize(s)
}

pub(crate) fn de_rat_vecs<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
    let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|r| r.into_iter().map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom)).collect())
        .collect()
}

impl CenterData {
    /// Group coordinates of a coweight, or `None` when `x` is not a coweight.
    pub fn classify(&self, x: &[BigRational]) -> Option<Vec<BigInt>> {
        let c = self.coweights.coordinates(x)?;
        let ck = self.cokernel.as_ref()?;
        Some(ck.project(&c))
    }

    /// A coweight lift of a group element.
    pub fn lift(&self, z: &[BigInt]) -> Vec<BigRational> {
        let n = self.coweights.ambient_rank();
        let mut acc = vec![BigRational::zero(); n];
        for (k, g) in z.iter().zip(&self.generators) {
            for (a, b) in acc.iter_mut().zip(g) {
                *a += BigRational::from_integer(k.clone()) * b;
            }
        }
        acc
    }

    pub fn coweights(&self) -> &Lattice {
        &self.coweights
    }
}

/// `Z(G) = X_•(G_ad) / X_•(G)` for a semisimple datum.
pub fn center(d: &RootDatum) -> Result<CenterData, RootDataError> {
    if !d.is_semisimple() {
        return Err(RootDataError::NotSemisimple);
    }
    let coweights = d.coweight_lattice()?;
    let (_, coords) =
        Lattice::quotient_coordinates(&coweights, d.cochar_lattice()).map_err(|_| RootDataError::NotSemisimple)?;
    let ck = cokernel_with_maps(&coords);
    let generators = (0..ck.group.ngens()).map(|j| coweights.vector(&ck.lifts.col(j))).collect();
    Ok(CenterData { group: ck.group.clone(), generators, coweights, cokernel: Some(ck) })
}

/// Pairing of two coweights of a simply connected datum: `v^T C w` on simply laced
/// blocks, the unique perfect pairing on the `Z/2` center of a `B`/`C` block.
fn block_pairing(d: &RootDatum, x: &[BigRational], y: &[BigRational]) -> Phase {
    let k = d.simple_coroots();
    let to_coroot_coords = |v: &[BigRational]| crate::zmod::solve_rational(&k, v).expect("coweight in coroot span");
    let (u, w) = (to_coroot_coords(x), to_coroot_coords(y));
    let c = d.cartan_matrix();
    let mut acc = Phase::ZERO;
    for (t, range) in d.types().iter().zip(block_ranges(d.types())) {
        if t.is_simply_laced() {
            let mut s = BigRational::zero();
            for i in range.clone() {
                for j in range.clone() {
                    s += &u[i] * BigRational::from_integer(c[(i, j)].clone()) * &w[j];
                }
            }
            acc += Phase::from_rational(&s);
        } else {
            let nontrivial = |v: &[BigRational]| range.clone().any(|i| !v[i].is_integer());
            if nontrivial(&u) && nontrivial(&w) {
                acc += Phase::new(1, 2);
            }
        }
    }
    acc
}

/// The symmetric perfect pairing on the center of a simply connected datum.
pub fn center_pairing(d: &RootDatum) -> Result<PhasePairing, RootDataError> {
    if !d.is_simply_connected() {
        return Err(RootDataError::NotSimplyConnected);
    }
    let z = center(d)?;
    let n = z.group.ngens();
    let gram: Vec<Vec<Phase>> = (0..n)
        .map(|i| (0..n).map(|j| block_pairing(d, &z.generators[i], &z.generators[j])).collect())
        .collect();
    let p = PhasePairing { left: z.group.clone(), right: z.group.clone(), gram };
    if !p.is_symmetric() || !p.is_perfect() {
        return Err(RootDataError::PairingNotPerfect);
    }
    Ok(p)
}

/// Quotient of the center of a simply connected datum by a subgroup, given by
/// generators in center coordinates.
pub fn center_quotient(z: &CenterData, subgroup: &[Vec<BigInt>]) -> FinAbGroup {
    let rel = z.group.relations();
    let gens = IntMatrix::from_columns(subgroup, z.group.ngens());
    FinAbGroup::cokernel(&rel.hstack(&gens))
}
