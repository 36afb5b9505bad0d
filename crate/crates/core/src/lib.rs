//! Triangular peg solitaire on the boards T_n.

pub mod board;
pub mod classification;
pub mod constructive;
pub mod error;
pub mod library;
pub mod purge;
pub mod sax;
pub mod search;
pub mod service;

pub use board::{BoardShape, HoleCoord, Jump, Move, Position, Solution, Transform};
pub use error::{Error, Result};

/// Reported by the CLI and every service response.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
