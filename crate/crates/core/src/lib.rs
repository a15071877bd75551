//! Finite permutation groups, subgroup lattices and σ-embedding properties.

pub mod classify;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod formations;
pub mod group;
pub mod lattice;
pub mod modularity;
pub mod perm;
pub mod sigma;
pub mod subgroup;
pub mod util;

pub use classify::{Checker, Property, Strategies, TheoremCheck, Verdict};
pub use corpus::{builtin_corpus, parse_group, CorpusEntry};
pub use error::{Error, Result};
pub use group::{Elem, Group, GroupHom, Limits, Quotient};
pub use lattice::Lattice;
pub use perm::Permutation;
pub use sigma::{SigmaClass, SigmaPartition};
pub use subgroup::Subgroup;
