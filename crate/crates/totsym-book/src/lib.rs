//! The guide's chapters (see `book/`) included as rustdoc so that
//! `cargo test` compiles and runs every code block in the book. mdbook
//! itself does not run snippets against dependencies; this crate keeps the
//! prose and the library honest with each other.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/total-symmetry.md")]
pub mod total_symmetry {}

#[doc = include_str!("../../../book/src/searching.md")]
pub mod searching {}

#[doc = include_str!("../../../book/src/theorems.md")]
pub mod theorems {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
