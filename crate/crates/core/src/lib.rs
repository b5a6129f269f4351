//! Absolute heights of algebraic numbers given by integer minimal polynomials,
//! the real-conjugate lower bound `B(R)` together with every auxiliary quantity
//! of its proof, and an exhaustive checker over small coefficient boxes.
//!
//! The library is organised bottom-up:
//!
//! - [`polyint`]: exact integer polynomials (parsing, Sturm counts, irreducibility).
//! - [`roots`]: numeric complex roots cross-checked against exact Sturm counts.
//! - [`heights`]: Mahler measure, absolute height and the exact product identities.
//! - [`bounds`]: closed forms `f`, `g`, `M_R`, `M_C`, `a(R)`, `B(R)` and numeric oracles.
//! - [`scan`]: enumeration of candidates, per-polynomial verification, extremal tables.

pub mod bounds;
mod error;
pub mod fmt;
pub mod heights;
pub mod polyint;
pub mod roots;
pub mod scan;

pub use error::{Error, Result};
pub use heights::HeightProfile;
pub use polyint::IntPoly;
pub use roots::RootSet;
