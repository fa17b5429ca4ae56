//! Finite semigroup workbench: multiplication tables and Green's relations,
//! ω-term identities, presented semigroups with canonical forms, transition
//! monoids of labeled digraphs, factorization forests and the synthesis
//! construction.

pub mod closure;
pub mod construct;
pub mod families;
pub mod forest;
pub mod graphs;
pub mod green;
pub mod omega;
pub mod semigroup;
pub mod sk;
pub mod synthesis;
pub mod words;

pub use closure::{closure, Closure, DEFAULT_BUDGET};
pub use construct::{hom_check, hom_image, hom_preimage, product, rees_quotient, subsemigroup};
pub use green::{green, GreenData};
pub use semigroup::{FiniteSemigroup, SemigroupError};
