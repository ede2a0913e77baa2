//! Allocation-only core of corpuskit.
//!
//! Everything here works on in-memory values: sentence normalization and
//! fingerprinting, the sharded dedup index, reservoir sampling, WordPiece
//! training and encoding, the evaluation metrics and the significance tests.
//! File formats, the CLI and thread pools live in the `corpuskit` crate.
//!
//! The crate builds without `std` (disable default features); it only needs
//! `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod corpus;
mod error;
pub mod metrics;
pub mod report;
pub mod stats;
pub mod tokenizer;

pub use error::{Error, Result};
