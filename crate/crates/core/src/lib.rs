//! Exact algebra for Carlitz cyclotomic function fields and the Kummer
//! curves that model them.

pub mod acceptance;
pub mod arith;
pub mod carlitz;
pub mod error;
pub mod ffield;
pub mod group;
pub mod kummer;
pub mod polyring;
pub mod ring;
pub mod zeta;

/// Seed for sampled checks when none is given.
pub const DEFAULT_SEED: u64 = 0xC421172;

pub use error::{Error, Result};
pub use ffield::{field_create, field_extend, nth_power_solutions, FieldCtx, Fe};
pub use polyring::{FactoredRationalFunction, FqPoly, FqPolyRing, Place, Poly, PolyRing, RationalFunction};
pub use ring::{Field, Ring};
