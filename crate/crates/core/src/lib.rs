//! Exact isotypical decomposition of rational representations of finite
//! abelian groups.
//!
//! An abelian variety with an action of a finite abelian group `G` is modeled,
//! up to isogeny, by the rational representation of `G` on its rational
//! homology: one rational matrix per group generator. Abelian subvarieties
//! become rational subspaces, and every computation is exact.
//!
//! The crate computes the isotypical components `A_W`, one per irreducible
//! rational representation `W`, in two independent ways: as the image of the
//! central idempotent `e_W`, and as the intersection
//! `⋂_{H ∈ 𝒫_K} P(A^K/A^H)` over the prime-index overgroups of the kernel
//! `K` of `W`. For cyclic groups it also computes Roan's decomposition and
//! matches it against the isotypical one.

pub mod abgroup;
pub mod action;
pub mod chars;
pub mod error;
pub mod fixture;
pub mod io;
pub mod ntheory;
pub mod qalgebra;
pub mod ratlinalg;
pub mod roan;

pub use abgroup::{FinAbGroup, GroupElement, Quotient, Subgroup};
pub use action::{validate_action, GAction, IsotypicalComponent, IsotypicalReport, OvergroupTerm};
pub use chars::{Character, RationalIrrep};
pub use error::{Error, Result};
pub use qalgebra::GroupAlgebraElem;
pub use ratlinalg::{MatQ, MatZ, PolyQ, Rational, SubspaceQ};
pub use roan::{roan_decomposition, verify_theorem31, RoanReport, TheoremMatching};
