//! Exact enumeration of orientable hypermaps.
//!
//! Rooted counts come from two independent recurrences ([`kz`] and [`seq`]),
//! sensed counts from a Burnside-style sum over cyclic automorphism classes
//! ([`orbifold`]), and [`series`] expands the closed parametric generating
//! functions so they can be compared coefficient by coefficient.

pub mod cache;
pub mod checks;
pub mod error;
pub mod kz;
pub mod model;
pub mod orbifold;
pub mod seq;
pub mod series;
pub mod text;

pub use error::{Error, Result};
pub use kz::{HomoPoly, KzTable};
pub use orbifold::{admissible_signatures, epi0, sensed_table, OrbifoldSignature};
pub use seq::{DegreeList, SeqEngine, SeqKey};
pub use model::{
    faces_from_key, validate_hypermap_key, ArbNat, ArbRat, CountTable, EngineId, HypermapKey, MapKey, TableMeta,
};
