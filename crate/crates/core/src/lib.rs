//! Exact arithmetic for Kummer-Artin-Schreier-Witt lifting data.
//!
//! The crate computes, over `Q(ζ_{p^s})`, the deformed Artin-Hasse exponentials
//! and the polynomials `G_i`, `E_i`, `H_i` that present a flat group scheme
//! interpolating between a Kummer-type group in characteristic zero and the
//! Artin-Schreier-Witt group `W_s` in characteristic `p`. Everything is exact:
//! cyclotomic coefficients are rational vectors and valuations are rationals.

pub mod artin_hasse;
pub mod cyclotomic;
pub mod error;
pub mod fp;
pub mod group;
pub mod io;
pub mod lift;
pub mod monomial;
pub mod ring;
pub mod series;
pub mod verify;
pub mod witt;

pub use cyclotomic::{CycField, CycNum, Val};
pub use error::{Error, Result};
pub use series::MSeries;
