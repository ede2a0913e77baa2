//! Streaming corpus preparation and evaluation: file formats, the parallel
//! dedup pipeline and the `corpuskit` command line.

pub mod cli;
pub mod error;
pub mod formats;
pub mod input;
pub mod output;
pub mod pipeline;
