//! Arc families on the integer line, their Hom-theoretic model, maximal
//! non-crossing families and their mutation.

pub mod api;
pub mod arcs;
pub mod document;
pub mod homcalc;
pub mod lattice;
pub mod mutation;
pub mod oracle;
pub mod quiver;
pub mod render;
pub mod triangulation;

pub use arcs::{crosses, Arc, ArcError, ArcFamily, Count, FamilyError, Orbit, Window};
pub use document::{parse_family, serialize_family, ParseError};
pub use homcalc::{hom_dim, Ind};
pub use mutation::{exchange_arc, mutate, MutationError};
pub use quiver::{cluster_quiver, Quiver};
pub use triangulation::{
    certify_global_maximal, is_window_maximal, GlobalCertificate, MaximalityVerdict,
};
