//! Named groups such as `SL(5)`, `SO(8)`, `GSp(4)` or `E6_sc`, resolved to root data.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gtau::{build_g_tau, ExtendedGroupDatum, GeneralEmbedding, GtauError};
use crate::rootdata::{center, Family, Form, RootDataError, RootDatum, SimpleType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown group name {0:?}")]
    Unknown(String),
    #[error("{0} is not defined for n = {1}")]
    BadIndex(String, usize),
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    Gtau(#[from] GtauError),
}

/// A resolved name: its root datum, the simply connected datum it is built from, and
/// the extended-group construction when it is not semisimple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedGroup {
    pub name: String,
    pub types: Vec<SimpleType>,
    pub form: String,
    pub datum: RootDatum,
    pub simply_connected: RootDatum,
    pub extended: Option<ExtendedGroupDatum>,
}

fn t(f: Family, r: usize) -> Result<SimpleType, RootDataError> {
    SimpleType::new(f, r)
}

/// Orthogonal groups of dimension `n`: `B_m` or `D_m`, with `Spin(3) = A1`.
fn orthogonal_type(n: usize) -> Result<SimpleType, RegistryError> {
    match n {
        3 => Ok(t(Family::A, 1)?),
        n if n >= 5 && n % 2 == 1 => Ok(t(Family::B, n / 2)?),
        n if n >= 4 && n % 2 == 0 => Ok(t(Family::D, n / 2)?),
        _ => Err(RegistryError::BadIndex("orthogonal group".into(), n)),
    }
}

fn symplectic_type(n: usize) -> Result<SimpleType, RegistryError> {
    match n {
        2 => Ok(t(Family::A, 1)?),
        n if n >= 4 && n % 2 == 0 => Ok(t(Family::C, n / 2)?),
        _ => Err(RegistryError::BadIndex("symplectic group".into(), n)),
    }
}

/// Coweight lift of the kernel of `Spin(2m) → SO(2m)`: the nontrivial central element
/// acting trivially on the vector representation.
pub fn vector_kernel_generator(ty: SimpleType) -> Result<Vec<BigRational>, RegistryError> {
    if ty.family != Family::D {
        return Err(RegistryError::BadIndex("vector kernel".into(), ty.rank));
    }
    let d = RootDatum::semisimple(&[ty], &Form::SimplyConnected)?;
    let z = center(&d)?;
    // vector weight ω₁ (ω₁ + ω₂ for D₂) in simple-coroot coordinates
    let weight: Vec<i64> = (0..ty.rank).map(|i| i64::from(i == 0 || (ty.rank == 2 && i == 1))).collect();
    for e in z.group.elements() {
        if z.group.is_zero_element(&e) {
            continue;
        }
        let x = z.lift(&e);
        let pairing: BigRational = x.iter().zip(&weight).map(|(a, &w)| a * BigRational::from_integer(w.into())).sum();
        if pairing.is_integer() {
            return Ok(x);
        }
    }
    Err(RegistryError::BadIndex("vector kernel".into(), ty.rank))
}

fn semisimple(name: &str, ty: SimpleType, form: Form, label: &str) -> Result<NamedGroup, RegistryError> {
    let datum = RootDatum::semisimple(&[ty], &form)?;
    let simply_connected = RootDatum::semisimple(&[ty], &Form::SimplyConnected)?;
    Ok(NamedGroup { name: name.into(), types: vec![ty], form: label.into(), datum, simply_connected, extended: None })
}

fn extended(name: &str, ty: SimpleType) -> Result<NamedGroup, RegistryError> {
    let base = RootDatum::semisimple(&[ty], &Form::SimplyConnected)?;
    let tau = GeneralEmbedding::standard(center(&base)?);
    let ext = build_g_tau(&base, &tau)?;
    Ok(NamedGroup {
        name: name.into(),
        types: vec![ty],
        form: "extended by the standard central embedding".into(),
        datum: ext.result.clone(),
        simply_connected: base,
        extended: Some(ext),
    })
}

fn split_call(s: &str) -> Option<(&str, usize)> {
    let (head, rest) = s.split_once('(')?;
    let n = rest.strip_suffix(')')?.trim().parse().ok()?;
    Some((head.trim(), n))
}

/// Resolves `SL(n)`, `PGL(n)`, `GL(n)`, `Spin(n)`, `SO(n)`, `Spin^c(n)` (odd `n`),
/// `Sp(2n)`, `PSp(2n)`, `GSp(2n)`, and Dynkin labels `E6`, `E6_sc`, `E6_ad`, `B2_ad`.
pub fn resolve(name: &str) -> Result<NamedGroup, RegistryError> {
    let s = name.trim();
    let unknown = || RegistryError::Unknown(name.to_string());
    if let Some((head, n)) = split_call(s) {
        return match head {
            "SL" | "PGL" | "GL" if n >= 2 => {
                let ty = t(Family::A, n - 1)?;
                match head {
                    "SL" => semisimple(s, ty, Form::SimplyConnected, "simply connected"),
                    "PGL" => semisimple(s, ty, Form::Adjoint, "adjoint"),
                    _ => extended(s, ty),
                }
            }
            "Spin" => semisimple(s, orthogonal_type(n)?, Form::SimplyConnected, "simply connected"),
            "SO" => {
                let ty = orthogonal_type(n)?;
                if ty.family == Family::D {
                    let gen = vector_kernel_generator(ty)?;
                    semisimple(s, ty, Form::QuotientBy(vec![gen]), "quotient by the vector kernel")
                } else {
                    semisimple(s, ty, Form::Adjoint, "adjoint")
                }
            }
            "Spin^c" | "Spinc" if n % 2 == 1 => extended(s, orthogonal_type(n)?),
            "Sp" => semisimple(s, symplectic_type(n)?, Form::SimplyConnected, "simply connected"),
            "PSp" => semisimple(s, symplectic_type(n)?, Form::Adjoint, "adjoint"),
            "GSp" => extended(s, symplectic_type(n)?),
            _ => Err(RegistryError::BadIndex(head.to_string(), n)),
        };
    }
    let (label, form) = match s.rsplit_once('_') {
        Some((l, "sc")) => (l, Form::SimplyConnected),
        Some((l, "ad")) => (l, Form::Adjoint),
        Some(_) => return Err(unknown()),
        None => (s, Form::SimplyConnected),
    };
    let ty: SimpleType = label.parse().map_err(|_| unknown())?;
    let form_label = if form == Form::Adjoint { "adjoint" } else { "simply connected" };
    semisimple(s, ty, form, form_label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::root_datum_isomorphic;
    use num_traits::ToPrimitive;

    fn order(name: &str) -> u64 {
        let g = resolve(name).unwrap();
        center(&g.datum).unwrap().group.order().to_u64().unwrap()
    }

    #[test]
    fn centers_of_named_groups() {
        assert_eq!(order("SL(5)"), 5);
        assert_eq!(order("PGL(5)"), 1);
        assert_eq!(order("Spin(7)"), 2);
        assert_eq!(order("SO(7)"), 1);
        assert_eq!(order("Spin(8)"), 4);
        assert_eq!(order("SO(8)"), 2);
        assert_eq!(order("SO(6)"), 2);
        assert_eq!(order("SO(4)"), 2);
        assert_eq!(order("Sp(6)"), 2);
        assert_eq!(order("PSp(6)"), 1);
        assert_eq!(order("E6_sc"), 3);
        assert_eq!(order("E6_ad"), 1);
        assert_eq!(order("E8_sc"), 1);
        assert_eq!(order("A3"), 4);
    }

    #[test]
    fn so_six_is_sl_four_mod_two() {
        // SO(6) ≅ SL(4)/μ₂
        let so6 = resolve("SO(6)").unwrap();
        let a3 = RootDatum::semisimple(&[t(Family::A, 3).unwrap()], &Form::QuotientBy(vec![vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::from_integer(1.into()),
            BigRational::new(1.into(), 2.into()),
        ]]))
        .unwrap();
        assert!(root_datum_isomorphic(&so6.datum, &a3).is_some());
    }

    #[test]
    fn extended_groups_have_torus_centers() {
        for name in ["GL(3)", "GSp(4)", "Spin^c(5)"] {
            let g = resolve(name).unwrap();
            let ext = g.extended.as_ref().unwrap();
            assert!(ext.center_is_torus(), "{name}");
            assert_eq!(g.datum.rank(), g.simply_connected.rank() + 1);
        }
    }

    #[test]
    fn rejects_bad_names() {
        assert!(resolve("SL(1)").is_err());
        assert!(resolve("Sp(5)").is_err());
        assert!(resolve("Spin^c(6)").is_err());
        assert!(resolve("H4").is_err());
        assert!(resolve("E6_xx").is_err());
    }
}
