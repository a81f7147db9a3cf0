//! Exact computation and exhaustive verification toolkit for the Catalan
//! transform of the Catalan numbers.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactnum`]: big-integer binomials, Catalan and generalized Catalan numbers.
//! - [`transform`]: the Catalan transform in its direct and reversed summation forms.
//! - [`dyckpath`]: Dyck and nonnegative lattice paths and their statistics.
//! - [`families`]: sequences constrained by the gap condition, their enumeration,
//!   the `X` decomposition and the 231-avoiding permutation bridge.
//! - [`bijection`]: Dyck paths with forced leading upsteps to bounded sequences and back.
//! - [`oeis`]: offline-first OEIS lookup.
//! - [`verify`]: the exhaustive verification suites behind `catkit verify`.

pub mod bijection;
pub mod dyckpath;
mod error;
pub mod exactnum;
pub mod families;
pub mod oeis;
pub mod seqio;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{IntSeq, Natural};
