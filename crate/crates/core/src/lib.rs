//! Computing with monoids of product-one sequences over finite groups.
//!
//! - [`group`]: Cayley tables, standard families, structural maps, and an
//!   isomorphism oracle.
//! - [`seq`]: sequences (multisets of group elements), sets of products,
//!   product-one tests and witnesses.
//! - [`factor`]: atoms, the large Davenport constant, factorizations and sets
//!   of lengths, plus a text cache for atom catalogs.
//! - [`lab`]: product-one-preserving bijections between groups, the seven
//!   structural assertions checked on each, and pairwise verification that
//!   such bijections exist exactly between isomorphic groups.

pub mod error;
pub mod factor;
pub mod group;
pub mod lab;
pub mod par;
pub mod seq;

mod dp;

pub use error::{Error, Result};
pub use factor::{AtomCatalog, Fingerprint, LengthSet, LengthSystem};
pub use group::{ElementId, GroupMap, GroupTable};
pub use par::Parallelism;
pub use seq::{ProductSet, Sequence, TermOrdering};
