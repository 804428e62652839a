//! Endpoint-scanner simulation.
//!
//! Models a messaging channel whose endpoints check every payload against a
//! database of known-bad content before sending and after receiving. Three
//! matching rules are concretized here: exact SHA-256 digests, perceptual
//! image hashes with a Hamming threshold, and case-insensitive keyword
//! substrings for text. The evaluation harness runs a scheduled matrix of
//! media types through configured channels and records what an operator
//! would see.

mod channel;
mod database;
mod dhash;
mod eval;

pub use channel::{channel_send, Channel, DeliveryReport};
pub use database::{scan, ScanDatabase, ScanVerdict, DHASH_MATCH_THRESHOLD};
pub use dhash::{dhash, dhash_distance};
pub use eval::{
    render_table, run_evaluation, EvalConfig, EvalOutcome, EvalRow, ScannerConfig, ScannerRules,
    Status,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CssError {
    /// The image is below the 2x1 minimum the difference hash needs.
    #[error("image too small to hash")]
    ImageTooSmall,
    /// The evaluation configuration cannot be run as given.
    #[error("invalid evaluation config: {0}")]
    ConfigInvalid(String),
    /// A scan database file did not parse.
    #[error("bad scan database: {0}")]
    DatabaseFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
