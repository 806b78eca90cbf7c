//! Root data of semisimple and reductive groups, centers, Langlands duality and
//! isomorphism testing.

mod cartan;
mod center;
mod datum;
mod iso;

pub use cartan::{algebra_label, block_cartan, block_ranges, parse_algebra, Family, SimpleType};
pub use center::{center, center_pairing, center_quotient, CenterData};
pub(crate) use center::{de_rat_vecs, ser_rat_vecs};
pub use datum::{coweight_lattice_of, root_system, scaled, Form, RootDatum};
pub use iso::{diagram_isomorphisms, root_datum_isomorphic, RootDatumIso};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("invalid Dynkin type {0}")]
    InvalidType(String),
    #[error("generators do not lie in the coweight lattice")]
    NotCentralSubgroup,
    #[error("root datum is not semisimple")]
    NotSemisimple,
    #[error("root datum is not simply connected")]
    NotSimplyConnected,
    #[error("dimensions of the supplied data do not agree")]
    DimensionMismatch,
    #[error("pairings of roots and coroots do not give the Cartan matrix")]
    CartanMismatch,
    #[error("a root or coroot lies outside its lattice")]
    RootNotInLattice,
    #[error("center pairing is not perfect")]
    PairingNotPerfect,
}

/// Simple root datum of the given type and form.
pub fn simple_root_datum(t: SimpleType, form: &Form) -> Result<RootDatum, RootDataError> {
    RootDatum::semisimple(&[t], form)
}

/// Langlands dual datum.
pub fn langlands_dual(d: &RootDatum) -> RootDatum {
    d.langlands_dual()
}
