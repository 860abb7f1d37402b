//! Continuous symmetry-preserving transitions of icosahedral quasicrystals
//! and finite point arrays, built on a 6D crystallographic embedding.
//!
//! The library has three layers:
//!
//! * exact golden-field arithmetic and signed-permutation matrix groups
//!   ([`golden`], [`gmatrix`], [`groups`], [`constants`]);
//! * block reduction of the 6D representations and the angle-parameterized
//!   centralizer rotation families with their boundary angles
//!   ([`reduction`], [`schur`]);
//! * cut-and-project generation of model-set patches and point arrays that
//!   continuously transform along a rotation path, plus the geometric
//!   oracles used to characterize them ([`window`], [`lattice`],
//!   [`model_set`], [`geometry`], [`export`], [`verify`]).

pub mod constants;
pub mod error;
pub mod export;
pub mod geometry;
pub mod gmatrix;
pub mod golden;
pub mod groups;
pub mod lattice;
pub mod model_set;
pub mod reduction;
pub mod schur;
pub mod verify;
pub mod window;

pub use error::{Error, Result};
pub use golden::GoldenNumber;
pub use groups::{GroupTag, MatrixGroup, SignedPermMatrix, Subgroup};
pub use reduction::{BlockDecomposition, IrrepLabel, ReductionFrame, RepKind, SubgroupReducer};
pub use schur::{AngleParameter, SchurFamily};
