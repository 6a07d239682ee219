//! The chapters of the guide in `book/`, compiled so that `cargo test`
//! runs every code listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/rewriting.md")]
pub mod rewriting {}
#[doc = include_str!("../../../book/src/kostant.md")]
pub mod kostant {}
#[doc = include_str!("../../../book/src/anick.md")]
pub mod anick {}
#[doc = include_str!("../../../book/src/betti.md")]
pub mod betti {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
