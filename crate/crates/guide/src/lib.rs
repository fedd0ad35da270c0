//! Runs the code samples of the `book/` guide as doc-tests, so the book
//! cannot drift from the library.

#![doc = include_str!("../../../book/src/introduction.md")]

#[doc = include_str!("../../../book/src/discs.md")]
pub mod discs {}

#[doc = include_str!("../../../book/src/chain-codes.md")]
pub mod chain_codes {}

#[doc = include_str!("../../../book/src/composition.md")]
pub mod composition {}

#[doc = include_str!("../../../book/src/automata.md")]
pub mod automata {}

#[doc = include_str!("../../../book/src/aggregation.md")]
pub mod aggregation {}

#[doc = include_str!("../../../book/src/astroid.md")]
pub mod astroid {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
