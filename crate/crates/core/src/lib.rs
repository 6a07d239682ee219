//! Noncommutative Gröbner bases over prime fields.
//!
//! The crate covers the free associative algebra over `F_p` with a
//! weighted deglex order, rewriting systems (normal forms, critical pairs,
//! completion), presentations of the Kostant form of `U(sl_n^+)` by divided
//! powers, the first levels of the Anick resolution of the trivial module,
//! and the graded linear algebra needed to minimalize it and read off Betti
//! numbers.
//!
//! ```
//! use ncgb::kostant::small_system;
//! use ncgb::rewriting::{is_complete, normal_form};
//!
//! let s = small_system(1).unwrap();
//! assert!(is_complete(s.system(), None).passed());
//! let braid = s.system().poly("b0 a0 b0 a0 + a0 b0 a0 b0").unwrap();
//! assert!(normal_form(&braid, s.system()).value.is_zero());
//! ```

pub mod anick;
pub mod error;
pub mod field;
pub mod kostant;
mod parse;
pub mod poly;
pub mod resolution;
pub mod rewriting;
pub mod suite;
pub mod word;

pub use error::{Error, Result};
pub use field::{Coeff, PrimeField};
pub use parse::ParseError;
pub use poly::{Polynomial, Terms};
pub use rewriting::{RewriteRule, RewritingSystem};
pub use word::{Alphabet, Generator, GeneratorSpec, Letter, Word};
