//! Integer lattices, Smith/Hermite normal forms and finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod modular;
mod phase;
mod ses;
mod snf;

pub use group::{
    cokernel_with_maps, double_dual_evaluation, pontryagin_dual, standard_pairing, tor1_with_circle, Cokernel,
    FinAbGroup, FinAbHom, PhasePairing,
};
pub use lattice::Lattice;
pub use matrix::{big_vec, common_denominator, rat_dot, rat_vec, solve_rational, IntMatrix};
pub use modular::{gl_plus_minus_one, is_plus_minus_one, lift_to_gl, mod_inverse};
pub use phase::Phase;
pub use ses::{double_dual_comparison, dualize_ses, kummer_sequence, square_commutes, ShortExactSequence};
pub use snf::{column_hnf, integer_kernel, row_hnf, smith_normal_form, solve_integer, Snf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZmodError {
    #[error("sequence is not exact")]
    NotExact,
    #[error("lattice is not contained in the larger lattice")]
    NotSublattice,
    #[error("lattice ranks differ")]
    RankMismatch,
    #[error("matrix dimensions do not match the groups")]
    DimensionMismatch,
    #[error("map is not well defined on the torsion generators")]
    NotWellDefined,
    #[error("invariant factors must be >= 2 and form a divisibility chain")]
    InvalidFactors,
    #[error("unsupported short exact sequence shape")]
    UnsupportedShape,
}

/// Cokernel of an integer matrix: `Z^rows / image(m)`.
pub fn cokernel(m: &IntMatrix) -> FinAbGroup {
    FinAbGroup::cokernel(m)
}
