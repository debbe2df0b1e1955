//! Lexicographically smallest isomorphic copies of finite magmas.
//!
//! A magma is a single binary operation on `{1, .., n}` given as its
//! multiplication table. [`canonize`] returns the copy that is least in
//! row-major order among all renamings of the elements, together with a
//! renaming producing it. Two tables are isomorphic exactly when their
//! canonical copies are equal.
//!
//! ```
//! use mlex::{canonize, EngineConfig, Magma};
//!
//! let m = Magma::from_one_based(&[[1, 2], [2, 2]]).unwrap();
//! let out = canonize(&m, &EngineConfig::default()).unwrap();
//! assert_eq!(out.lexmin, Magma::from_one_based(&[[1, 1], [1, 2]]).unwrap());
//! assert_eq!(out.witness.to_cycle_notation(), "(1 2)");
//! ```

pub mod engine;
pub mod error;
pub mod fixtures;
mod fnv;
pub mod magma;
pub mod oracle;
pub mod sat;

pub use engine::{canonize, Canonical, EngineConfig, RunStats, Strategy};
pub use error::{Error, Result};
pub use magma::{Magma, Permutation};
pub use sat::SolverKind;
