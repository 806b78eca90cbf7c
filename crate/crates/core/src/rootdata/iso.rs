use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::center::{de_rat_vecs, ser_rat_vecs};
use super::datum::RootDatum;
use crate::zmod::{gl_plus_minus_one, integer_kernel, lift_to_gl, IntMatrix, Lattice};

/// An isomorphism of root data: `cochar_map` sends `X_•(d1)` onto `X_•(d2)` and
/// coroots to coroots; `char_map` is its inverse transpose, sending roots to roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumIso {
    /// Simple root `i` of `d1` goes to simple root `node_map[i]` of `d2`.
    pub node_map: Vec<usize>,
    #[serde(serialize_with = "ser_rat_vecs", deserialize_with = "de_rat_vecs")]
    pub cochar_map: Vec<Vec<BigRational>>,
    #[serde(serialize_with = "ser_rat_vecs", deserialize_with = "de_rat_vecs")]
    pub char_map: Vec<Vec<BigRational>>,
}

type RatMat = Vec<Vec<BigRational>>;

fn rat_mul_vec(m: &RatMat, v: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(v).fold(BigRational::zero(), |a, (x, y)| a + x * y)).collect()
}

fn rat_inverse(m: &RatMat) -> Option<RatMat> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let v = &a[c][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn transpose(m: &RatMat) -> RatMat {
    let n = m.len();
    let k = m.first().map_or(0, Vec::len);
    (0..k).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

impl RootDatumIso {
    /// Checks every defining property against the two data.
    pub fn verify(&self, d1: &RootDatum, d2: &RootDatum) -> bool {
        if d1.rank() != d2.rank() || d1.num_roots() != d2.num_roots() {
            return false;
        }
        let img = Lattice::from_generators(
            &d1.cochar_lattice().basis_vectors().iter().map(|v| rat_mul_vec(&self.cochar_map, v)).collect::<Vec<_>>(),
            d2.rank(),
        );
        if &img != d2.cochar_lattice() {
            return false;
        }
        let mut cor2: Vec<Vec<BigRational>> = d2.coroots().iter().map(|c| to_rat(c)).collect();
        let mut cor1: Vec<Vec<BigRational>> = d1.coroots().iter().map(|c| rat_mul_vec(&self.cochar_map, &to_rat(c))).collect();
        let mut r2: Vec<Vec<BigRational>> = d2.roots().iter().map(|c| to_rat(c)).collect();
        let mut r1: Vec<Vec<BigRational>> = d1.roots().iter().map(|c| rat_mul_vec(&self.char_map, &to_rat(c))).collect();
        for v in [&mut cor1, &mut cor2, &mut r1, &mut r2] {
            v.sort();
        }
        if cor1 != cor2 || r1 != r2 {
            return false;
        }
        // root-coroot bijection preserved
        d1.roots().iter().zip(d1.coroots()).all(|(a, c)| {
            let a2 = rat_mul_vec(&self.char_map, &to_rat(a));
            let c2 = rat_mul_vec(&self.cochar_map, &to_rat(c));
            d2.roots().iter().zip(d2.coroots()).any(|(b, e)| to_rat(b) == a2 && to_rat(e) == c2)
        })
    }
}

/// Bijections of simple nodes preserving the Cartan matrix.
pub fn diagram_isomorphisms(c1: &IntMatrix, c2: &IntMatrix) -> Vec<Vec<usize>> {
    let r = c1.rows();
    if c2.rows() != r {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    let mut used = vec![false; r];
    extend(c1, c2, &mut cur, &mut used, &mut out);
    out
}

fn extend(c1: &IntMatrix, c2: &IntMatrix, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let i = cur.len();
    let r = c1.rows();
    if i == r {
        out.push(cur.clone());
        return;
    }
    for j in 0..r {
        if used[j] {
            continue;
        }
        let ok = (0..i).all(|k| c1[(i, k)] == c2[(j, cur[k])] && c1[(k, i)] == c2[(cur[k], j)]);
        if ok {
            cur.push(j);
            used[j] = true;
            extend(c1, c2, cur, used, out);
            used[j] = false;
            cur.pop();
        }
    }
}

/// Cap on the number of gluing matrices tried per diagram isomorphism.
const MAX_GLUING: u128 = 1 << 20;

/// Searches for an isomorphism `d1 ≅ d2`.
pub fn root_datum_isomorphic(d1: &RootDatum, d2: &RootDatum) -> Option<RootDatumIso> {
    let n = d1.rank();
    let r = d1.semisimple_rank();
    if d2.rank() != n || d2.semisimple_rank() != r || d1.num_roots() != d2.num_roots() {
        return None;
    }
    let s = n - r;
    let (k1, k2) = (d1.simple_coroots(), d2.simple_coroots());
    let rad1 = d1.radical_cocharacters();
    let rad2 = d2.radical_cocharacters();
    if rad1.len() != s || rad2.len() != s {
        return None;
    }
    let exponent = gluing_exponent(d1)?;
    if exponent != gluing_exponent(d2)? {
        return None;
    }
    let m = exponent.to_u64()?;
    if (m as u128).saturating_pow((s * s) as u32) > MAX_GLUING {
        return None;
    }
    let glue: Vec<IntMatrix> = if s == 0 { vec![IntMatrix::identity(0)] } else { gl_plus_minus_one(s, m.max(1)) };
    // source basis P1 = [simple coroots | radical basis]
    let mut p1: Vec<Vec<BigRational>> = (0..r).map(|j| to_rat(&k1.col(j))).collect();
    p1.extend(rad1.iter().cloned());
    let p1 = transpose(&p1);
    let p1_inv = rat_inverse(&p1)?;
    for sigma in diagram_isomorphisms(&d1.cartan_matrix(), &d2.cartan_matrix()) {
        for a in &glue {
            let lift = lift_to_gl(a, &BigInt::from(m.max(1)))?;
            let mut p2: Vec<Vec<BigRational>> = sigma.iter().map(|&j| to_rat(&k2.col(j))).collect();
            for j in 0..s {
                let mut v = vec![BigRational::zero(); n];
                for (i, b) in rad2.iter().enumerate() {
                    for (vv, bb) in v.iter_mut().zip(b) {
                        *vv += BigRational::from_integer(lift[(i, j)].clone()) * bb;
                    }
                }
                p2.push(v);
            }
            let p2 = transpose(&p2);
            let phi: RatMat = (0..n)
                .map(|i| (0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &p2[i][k] * &p1_inv[k][j])).collect())
                .collect();
            let Some(phi_inv) = rat_inverse(&phi) else { continue };
            let iso = RootDatumIso { node_map: sigma.clone(), cochar_map: phi, char_map: transpose(&phi_inv) };
            if iso.verify(d1, d2) {
                return Some(iso);
            }
        }
    }
    None
}

/// Exponent of `X_• / ((X_• ∩ coroot span) ⊕ (X_• ∩ radical))`.
fn gluing_exponent(d: &RootDatum) -> Option<BigInt> {
    let n = d.rank();
    let x = d.cochar_lattice();
    let mut gens = d.radical_cocharacters();
    // X_• ∩ span(coroots): integer vectors of X_• killed by the annihilator of the coroots
    let ann = integer_kernel(&d.simple_coroots().transpose());
    if ann.cols() == 0 {
        gens.extend(x.basis_vectors());
    } else {
        let k = integer_kernel(&ann.transpose().mul(x.integer_basis()));
        gens.extend((0..k.cols()).map(|j| x.vector(&k.col(j))));
    }
    if gens.is_empty() {
        return Some(BigInt::from(1));
    }
    let inner = Lattice::from_generators(&gens, n);
    Lattice::finite_quotient(x, &inner).ok().map(|g| g.exponent())
}
