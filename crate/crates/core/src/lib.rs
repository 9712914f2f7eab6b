//! Cancellative triple systems and Steiner triple systems: exact
//! predicates, bound evaluators, isomorph-free enumeration, blowups and
//! branch-and-bound extremal search.
//!
//! Everything is exact. Densities and bounds are [`BigRational`]s or
//! [`rational::Surd`]s; floats appear only when rendering.
//!
//! With the default `parallel` feature the top-level branches of the
//! searches are distributed over the current rayon pool. Results never
//! depend on the number of threads.
//!
//! [`BigRational`]: num_rational::BigRational

pub mod bitset;
pub mod budget;
pub mod cancellative;
pub mod canon;
pub mod error;
pub mod expansion;
pub mod extremal;
pub mod hypergraph;
pub mod par;
pub mod rational;
pub mod steiner;

pub use bitset::BitSet;
pub use budget::Budget;
pub use cancellative::{
    cancellative_violation, codegree_independence, is_cancellative, make_pair, BoundReport,
    CancellativePair, Violation,
};
pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use expansion::{max_clique, maximal_clique_expansion, CliqueExpansion};
pub use hypergraph::{Graph, Pair, Triple, TripleSystem, VertexId};
pub use steiner::{is_sts, SteinerTripleSystem};
