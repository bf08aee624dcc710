//! Capability of finite abelian groups.
//!
//! A finite abelian group `C_{n_1} × … × C_{n_k}` (with `n_1 | … | n_k`) is
//! capable exactly when `k ≥ 2` and `n_{k-1} = n_k`. This crate decides that
//! criterion, builds explicit families of subgroups with trivial
//! intersection, covering union and isomorphic quotients, and checks the
//! equivalent lattice conditions by exhaustive search on small groups.
//!
//! Modules, bottom up:
//! - [`intlinalg`]: checked integer matrices, Hermite and Smith forms.
//! - [`abelian`]: groups, elements, and subgroups as intermediate lattices.
//! - [`capability`]: the criterion, witness families, verifiers, oracles.
//! - [`cli`]: the `abelcap` command-line front end.

pub mod abelian;
pub mod capability;
pub mod cli;
pub mod intlinalg;

pub use abelian::{AbelianGroup, GroupElement, GroupError, Subgroup};
pub use capability::{CapabilityError, FamilyReport};
pub use intlinalg::{IntMatrix, LinalgError};
