//! Decision procedures for finite algebras given by operation tables:
//! congruence lattices, the modular commutator, and the neutrabelian and
//! split-centralizer-at-zero conditions together with the consequences that
//! link them.

pub mod algebra;
pub mod analysis;
pub mod closure;
pub mod commutator;
pub mod congruence;
pub mod error;
pub mod harness;
pub mod limits;
pub mod partition;

pub use algebra::{Element, FiniteAlgebra, Operation};
pub use commutator::{CommutatorTable, Method};
pub use congruence::{generate_congruence, CongruenceLattice};
pub use error::{Error, Result};
pub use limits::{Budget, Limits};
pub use partition::Partition;
