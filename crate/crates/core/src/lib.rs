//! Decide whether a differential-algebraic Pfaffian system
//! `dy/dx = f(x, y), g(x, y) = 0` has an analytic solution.
//!
//! The decision builds the ascending chain of radical ideals obtained by
//! alternately prolonging (applying the total derivatives induced by the
//! system) and taking radicals, and checks whether the chain ends in the
//! unit ideal. All arithmetic is exact over the rationals.

pub mod error;
pub mod groebner;
pub mod ideal;
pub mod jet;
pub mod pfaffian;
pub mod poly;
pub mod report;
pub mod sysfile;

pub use error::{Error, Result};
pub use groebner::{buchberger, eliminate, normal_form, GroebnerBasis, Limits};
pub use ideal::Ideal;
pub use jet::{jet_derivative, minimal_order, truncated_system, JetIndex, JetRing};
pub use pfaffian::{build_chain, decide, ChainReport, ChainStep, PfaffianSystem};
pub use poly::{parse, MonomialOrder, Polynomial, Rational, Ring};
pub use report::Report;
pub use sysfile::SystemFile;
