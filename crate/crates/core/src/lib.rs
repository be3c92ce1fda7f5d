//! Split metacyclic groups of odd order, their tetravalent edge-transitive
//! Cayley graphs, and the permutation-group machinery needed to classify them.

mod arith;
pub mod autparam;
pub mod autosearch;
pub mod cayley;
pub mod classify;
pub mod error;
pub mod metagroup;
pub mod perm;
pub mod permengine;

pub use autparam::{AutGroupAction, AutoMap, Automorphism};
pub use cayley::{ConnectionSet, Graph, OrbitalGraph};
pub use classify::{ClassReport, GroupReport, Mode};
pub use permengine::PermGroup;
pub use error::{Error, Result};
pub use metagroup::{Element, GroupSpec};
pub use perm::Perm;

pub mod number_theory {
    //! Integer helpers shared with the command-line front end.
    pub use crate::arith::{euler_phi, gcd, multiplicative_order, pow_mod};
}
