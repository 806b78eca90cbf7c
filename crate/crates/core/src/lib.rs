//! Exact bookkeeping for Langlands duality of Higgs-bundle moduli at the level of
//! finite groups and lattices: root data and their centers, extended groups built
//! from central embeddings, Weyl-fixed torus points, symplectic finite modules,
//! finite Heisenberg groups and the duality skeleton.

pub mod duality;
pub mod gtau;
pub mod heis;
pub mod registry;
pub mod rootdata;
pub mod symp;
pub mod weylfix;
pub mod zmod;

pub use gtau::CheckRecord;
