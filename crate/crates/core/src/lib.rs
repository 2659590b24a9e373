//! Exact computation of Lusternik-Schnirelmann-type invariants for finite
//! simplicial complexes and finite T0-spaces.
//!
//! The toolkit works on two sides of the classical poset/complex
//! correspondence:
//!
//! * **Simplicial side** ([`complex`], [`collapse`]): abstract simplicial
//!   complexes stored by their facets, simplicial maps, contiguity classes,
//!   strong collapses and cores, and the invariants `scat` / `gscat`.
//! * **Finite-space side** ([`poset`], [`collapse`]): finite T0-spaces as
//!   partial orders, down-sets as open sets, homotopy of monotone maps via
//!   the fence relation, beat points and Stong cores, and the invariants
//!   `cat` / `gcat`.
//! * **Functors** ([`functors`]): the order complex `K(X)` and the face
//!   poset `chi(K)` connecting the two sides, on objects and on maps.
//!
//! Every invariant computation ([`category`]) returns a [`category::CategoryResult`]
//! carrying a witness cover together with per-element certificates (contiguity
//! chains, homotopy fences, or collapse traces) that can be re-validated
//! independently through the [`verify`] module.
//!
//! Searches that are not a priori bounded (reachability in the space of
//! simplicial or monotone maps) take an explicit [`budget::SearchBudget`] and
//! return a tri-state [`budget::Reachability`]: proved, refuted, or honestly
//! exhausted.

pub mod budget;
pub mod category;
pub mod collapse;
pub mod complex;
pub mod functors;
pub mod io;
pub mod oracle;
pub mod poset;
pub mod verify;

mod error;

pub use budget::{Reachability, SearchBudget};
pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
