//! Fuzzy formal concept analysis and rough-set reducts over finite complete
//! residuated lattices.
//!
//! The crate is organized bottom-up:
//!
//! - [`lattice`]: finite residuated lattices, validated from a spec or built
//!   from the Łukasiewicz and Gödel chain families.
//! - [`context`]: L-contexts, L-subsets, subcontext selectors and the
//!   restriction, bottom-extension, negation and dual constructions.
//! - [`format`]: the text formats for lattice specs and contexts.
//! - [`derivation`]: the two derivation adjunctions, their closure operators
//!   and concept lattice enumeration.
//! - [`reduct`]: side-reducibility checks, reduct decisions, comparison maps,
//!   isomorphism verification and reduct search.
//! - [`theorem`]: the sampler that checks how FCA reducts of `phi` relate to
//!   RST reducts of `!phi` on a given lattice.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod context;
pub mod derivation;
pub mod error;
pub mod format;
pub mod lattice;
pub mod reduct;
pub mod theorem;

pub use context::{LContext, LSubset, SubcontextSelector};
pub use derivation::{ConceptLattice, Mode, Strategy};
pub use error::{Error, LatticeError, Result};
pub use lattice::{builtin_chain, validate_lattice, Builtin, Elem, Lattice, LatticeSpec, TNorm};
pub use reduct::{CheckOptions, ComparisonMapTag, Method, ReductReport};
