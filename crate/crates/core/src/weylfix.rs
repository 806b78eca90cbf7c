//! Torus points fixed by Weyl reflections, the values of roots on them, lifting
//! through the simply connected cover, and sections over constant cameral data.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rootdata::{center, RootDataError, RootDatum};
use crate::zmod::{rat_vec, smith_normal_form, FinAbGroup, FinAbHom, IntMatrix, Lattice, Phase};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("root index {0} out of range")]
    InvalidRoot(usize),
    #[error("point is not fixed by the reflection")]
    NotFixed,
    #[error("datum is not semisimple")]
    NotSemisimple,
    #[error("root subset is not stable under the reflection group")]
    NotWeylStable,
    #[error("fixed locus is not finite")]
    InfiniteInvariants,
    #[error("point has {0} coordinates, datum has rank {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

/// A point of `X_• ⊗ C^× = X_• ⊗ Q/Z` (torsion points), stored as a rational
/// cocharacter reduced so its coordinates in the Hermite basis lie in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusPoint {
    #[serde(skip)]
    datum: Option<RootDatum>,
    /// Coordinates in `[0, 1)` with respect to the cocharacter basis.
    #[serde(with = "rat_strings")]
    pub basis_coords: Vec<BigRational>,
    /// The reduced representative in ambient coordinates.
    #[serde(with = "rat_strings")]
    pub coords: Vec<BigRational>,
}

mod rat_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl TorusPoint {
    pub fn new(datum: &RootDatum, x: &[BigRational]) -> Result<Self, WeylError> {
        if x.len() != datum.rank() {
            return Err(WeylError::DimensionMismatch(x.len(), datum.rank()));
        }
        let lat = datum.cochar_lattice();
        let c = lat.rational_coordinates(x).expect("full-rank cocharacter lattice");
        let basis_coords: Vec<BigRational> = c.iter().map(frac).collect();
        let b = lat.basis_vectors();
        let mut coords = vec![BigRational::zero(); x.len()];
        for (k, v) in basis_coords.iter().zip(&b) {
            for (a, e) in coords.iter_mut().zip(v) {
                *a += k * e;
            }
        }
        Ok(TorusPoint { datum: Some(datum.clone()), basis_coords, coords })
    }

    pub fn identity(datum: &RootDatum) -> Self {
        Self::new(datum, &vec![BigRational::zero(); datum.rank()]).unwrap()
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum.as_ref().expect("torus point carries its datum")
    }

    pub fn is_identity(&self) -> bool {
        self.basis_coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        let s: Vec<BigRational> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Self::new(self.datum(), &s).unwrap()
    }

    pub fn scale(&self, k: &BigInt) -> TorusPoint {
        let s: Vec<BigRational> = self.coords.iter().map(|a| a * BigRational::from_integer(k.clone())).collect();
        Self::new(self.datum(), &s).unwrap()
    }

    /// Same rational representative, reduced in another datum on the same ambient space.
    pub fn in_datum(&self, d: &RootDatum) -> Result<TorusPoint, WeylError> {
        Self::new(d, &self.coords)
    }
}

fn check_root(d: &RootDatum, alpha: usize) -> Result<(), WeylError> {
    if alpha >= d.num_roots() {
        return Err(WeylError::InvalidRoot(alpha));
    }
    Ok(())
}

/// `x ↦ x − ⟨α, x⟩ α^∨`.
pub fn weyl_reflect(p: &TorusPoint, alpha: usize) -> Result<TorusPoint, WeylError> {
    let d = p.datum();
    check_root(d, alpha)?;
    let k = d.pair_root(alpha, &p.coords);
    let cor = rat_vec(&d.coroots()[alpha]);
    let x: Vec<BigRational> = p.coords.iter().zip(&cor).map(|(a, c)| a - &k * c).collect();
    TorusPoint::new(d, &x)
}

/// `s_α(x) ∈ x + X_•`, i.e. `⟨α, x⟩ α^∨ ∈ X_•`.
pub fn is_fixed(p: &TorusPoint, alpha: usize) -> Result<bool, WeylError> {
    let d = p.datum();
    check_root(d, alpha)?;
    let k = d.pair_root(alpha, &p.coords);
    let v: Vec<BigRational> = d.coroots()[alpha].iter().map(|c| &k * BigRational::from_integer(c.clone())).collect();
    Ok(d.cochar_lattice().contains(&v))
}

/// `⟨α, x⟩ mod 1`, the value `α(exp x)` as a phase.
pub fn root_value(p: &TorusPoint, alpha: usize) -> Result<Phase, WeylError> {
    let d = p.datum();
    check_root(d, alpha)?;
    Ok(Phase::from_rational(&d.pair_root(alpha, &p.coords)))
}

/// Searches the preimages of `p` in the simply connected cover for one fixed by every
/// reflection in `roots`. Preimages differ by `X_•(d) / X_•(sc)`.
pub fn fixed_lift(p: &TorusPoint, roots: &[usize]) -> Result<Option<TorusPoint>, WeylError> {
    let d = p.datum();
    for &a in roots {
        if !is_fixed(p, a)? {
            return Err(WeylError::NotFixed);
        }
    }
    let sc = d.simply_connected_cover()?;
    let z = center(&sc)?;
    // coset representatives of X_•(d) / X_•(sc): central lifts lying in X_•(d)
    for e in z.group.elements() {
        let c = z.lift(&e);
        if !d.cochar_lattice().contains(&c) {
            continue;
        }
        let x: Vec<BigRational> = p.coords.iter().zip(&c).map(|(a, b)| a + b).collect();
        let cand = TorusPoint::new(&sc, &x)?;
        let mut ok = true;
        for &a in roots {
            ok &= is_fixed(&cand, a)?;
        }
        if ok {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Decides whether a point fixed by `s_α` has a fixed preimage in the simply connected
/// cover, returning it. Agrees with `α(h) = 1`.
pub fn lifts_to_simply_connected(p: &TorusPoint, alpha: usize) -> Result<Option<TorusPoint>, WeylError> {
    let lift = fixed_lift(p, &[alpha])?;
    debug_assert_eq!(lift.is_some(), root_value(p, alpha)?.is_zero());
    Ok(lift)
}

/// A finite group of torus points with chosen generators of the given orders.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointGroup {
    pub group: FinAbGroup,
    pub generators: Vec<TorusPoint>,
    pub identity: TorusPoint,
}

impl PointGroup {
    pub fn point(&self, e: &[BigInt]) -> TorusPoint {
        let mut acc = self.identity.clone();
        for (k, g) in e.iter().zip(&self.generators) {
            acc = acc.add(&g.scale(k));
        }
        acc
    }

    pub fn elements(&self) -> Vec<TorusPoint> {
        self.group.elements().iter().map(|e| self.point(e)).collect()
    }

    pub fn order(&self) -> u64 {
        self.group.order_u64()
    }
}

/// Cocharacter-basis matrix of the reflection in root `a`.
fn reflection_in_basis(d: &RootDatum, a: usize) -> IntMatrix {
    let b = d.cochar_lattice();
    let s = d.reflection_matrix(a);
    let n = d.rank();
    let mut m = IntMatrix::zeros(n, n);
    for (j, v) in b.basis_vectors().iter().enumerate() {
        let img: Vec<BigRational> = s.mul_rat_vec(v);
        let c = b.coordinates(&img).expect("reflections preserve X_•");
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

/// Points fixed by the reflections in `roots`: solves `(s − 1)x ∈ X_•` for all of them
/// at once through the Smith form of the stacked matrices.
pub fn fixed_points_of(d: &RootDatum, roots: &[usize]) -> Result<PointGroup, WeylError> {
    for &a in roots {
        check_root(d, a)?;
    }
    let n = d.rank();
    let mut stacked = IntMatrix::zeros(0, n);
    for &a in roots {
        let mut m = reflection_in_basis(d, a);
        for i in 0..n {
            m[(i, i)] -= BigInt::one();
        }
        stacked = stacked.vstack(&m);
    }
    let snf = smith_normal_form(&stacked);
    let diag = snf.diagonal();
    if diag.len() < n || diag.iter().any(Zero::is_zero) {
        return Err(WeylError::InfiniteInvariants);
    }
    // y = V z with d_i z_i ∈ Z; generators V e_i / d_i in basis coordinates
    let basis = d.cochar_lattice().basis_vectors();
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for (i, di) in diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        let col = snf.v.col(i);
        let mut x = vec![BigRational::zero(); n];
        for (k, v) in col.iter().zip(&basis) {
            let c = BigRational::new(k.clone(), di.clone());
            for (a, e) in x.iter_mut().zip(v) {
                *a += &c * e;
            }
        }
        orders.push(di.clone());
        generators.push(TorusPoint::new(d, &x)?);
    }
    Ok(PointGroup { group: FinAbGroup::from_big_orders(&orders), generators, identity: TorusPoint::identity(d) })
}

/// `(X_• ⊗ C^×)^W` for a semisimple datum.
pub fn torus_weyl_invariants(d: &RootDatum) -> Result<PointGroup, WeylError> {
    if !d.is_semisimple() {
        return Err(WeylError::NotSemisimple);
    }
    let simple: Vec<usize> = (0..d.semisimple_rank()).collect();
    fixed_points_of(d, &simple)
}

/// Image of root `b` under the reflection in root `a`, as a root index.
pub fn reflect_root(d: &RootDatum, a: usize, b: usize) -> usize {
    let alpha = &d.roots()[a];
    let k: BigInt = d.roots()[b].iter().zip(&d.coroots()[a]).map(|(x, y)| x * y).sum();
    let img: Vec<BigInt> = d.roots()[b].iter().zip(alpha).map(|(x, y)| x - &k * y).collect();
    d.roots().iter().position(|r| *r == img).expect("reflections permute the roots")
}

/// Root indices in the orbit of `a` under the group generated by `reflections`.
pub fn root_orbit(d: &RootDatum, a: usize, reflections: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::from([a]);
    let mut stack = vec![a];
    while let Some(b) = stack.pop() {
        for &s in reflections {
            let c = reflect_root(d, s, b);
            if seen.insert(c) {
                stack.push(c);
            }
        }
    }
    seen.into_iter().collect()
}

/// Global sections over constant cameral data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JSections {
    pub group: FinAbGroup,
    pub elements: Vec<TorusPoint>,
    pub invariants: PointGroup,
    /// For full ramification: the comparison with `H̃^W / Z`.
    pub cover_comparison: Option<CoverComparison>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverComparison {
    pub cover_invariants_order: u64,
    pub center_order: u64,
    /// `H̃^W → (H̃/Z)^W` hits exactly the sections.
    pub image_matches: bool,
    pub orders_match: bool,
}

/// `{t ∈ (H̃/Z)^S : α(t) = 1 for α ramified}`, with `S` the group generated by
/// `reflections` (all simple reflections by default).
pub fn j_global_sections(
    d: &RootDatum,
    ramified: &[usize],
    reflections: Option<&[usize]>,
) -> Result<JSections, WeylError> {
    if !d.is_semisimple() {
        return Err(WeylError::NotSemisimple);
    }
    let simple: Vec<usize> = (0..d.semisimple_rank()).collect();
    let refl = reflections.unwrap_or(&simple);
    let m = d.num_roots();
    let ram: BTreeSet<usize> = ramified.iter().copied().collect();
    for &a in &ram {
        check_root(d, a)?;
        for &s in refl {
            if !ram.contains(&reflect_root(d, s, a)) {
                return Err(WeylError::NotWeylStable);
            }
        }
    }
    let inv = fixed_points_of(d, refl)?;
    let ram: Vec<usize> = ram.into_iter().collect();
    // t ↦ (e·α(t))_α into (Z/e)^{|ram|}, e the exponent of the invariants
    let e = inv.group.exponent().max(BigInt::from(2));
    let target = FinAbGroup::from_big_orders(&vec![e.clone(); ram.len()]);
    let mut hm = IntMatrix::zeros(ram.len(), inv.group.ngens());
    for (j, g) in inv.generators.iter().enumerate() {
        for (i, &a) in ram.iter().enumerate() {
            let v = root_value(g, a)?.to_rational() * BigRational::from_integer(e.clone());
            hm[(i, j)] = v.to_integer();
        }
    }
    let hom = FinAbHom::new(inv.group.clone(), target, hm).map_err(|_| WeylError::NotFixed)?;
    let group = hom.kernel();
    let elements: Vec<TorusPoint> = inv
        .elements()
        .into_iter()
        .filter(|t| ram.iter().all(|&a| root_value(t, a).is_ok_and(|v| v.is_zero())))
        .collect();
    let full = ram.len() == m && reflections.is_none();
    let cover_comparison = if full {
        let sc = d.simply_connected_cover()?;
        let cover = torus_weyl_invariants(&sc)?;
        let z = Lattice::finite_quotient(d.cochar_lattice(), sc.cochar_lattice()).map_err(|_| WeylError::NotSemisimple)?;
        let image: BTreeSet<Vec<BigRational>> =
            cover.elements().iter().map(|t| t.in_datum(d).map(|p| p.basis_coords)).collect::<Result<_, _>>()?;
        let ours: BTreeSet<Vec<BigRational>> = elements.iter().map(|t| t.basis_coords.clone()).collect();
        Some(CoverComparison {
            cover_invariants_order: cover.order(),
            center_order: z.order_u64(),
            image_matches: image == ours,
            orders_match: cover.order() == z.order_u64() * group.order_u64(),
        })
    } else {
        None
    };
    Ok(JSections { group, elements, invariants: inv, cover_comparison })
}
