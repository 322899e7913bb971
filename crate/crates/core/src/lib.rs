//! Vincular permutation statistics and the bijections that relate them.
//!
//! The crate covers:
//!
//! * [`perm`]: one-line permutations, the classical symmetries and
//!   lexicographic enumeration of `S_n`.
//! * [`stats`]: the four coordinate vincular statistics `2-13`, `2-31`,
//!   `31-2`, `13-2`, crossings/nestings with their refined kinds, and the
//!   set-valued statistics `Aba`, `Dtb`, `Ene`, `Ene~`.
//! * [`patterns`]: a matcher for patterns with position- and value-adjacency
//!   constraints, and Baxter membership.
//! * [`maps`]: `θ̂`, `θ`, `Φ_SZ` and its inverse, and the involution `φ̂`.
//! * [`laguerre`]: shifted and restricted Laguerre histories, the
//!   Françon–Viennot bijection, the involution `ξ` and prudence.
//! * [`poly`]: exact multivariate polynomials, the continued fraction
//!   series and the distribution polynomials `P_n`, `Q_n`.
//! * [`verify`]: a registry of exhaustive checks with a parallel runner.

pub mod laguerre;
pub mod maps;
pub mod patterns;
pub mod perm;
pub mod poly;
pub mod stats;
pub mod verify;

mod slots;

pub use laguerre::{LaguerreHistory, Step, StepClass};
pub use patterns::PatternDescriptor;
pub use perm::Permutation;
pub use poly::{MultiPoly, SeriesInX, Var};
pub use stats::{CrossNestKind, SetStatKind, VincularStatId};
pub use verify::{CheckReport, Status};
