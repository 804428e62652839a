//! Deterministic screen-reading pipeline: render armored text to a bitmap,
//! recognize it with a whitelist-constrained template matcher, extract the
//! ciphertext, decrypt.
//!
//! The recognizer is deliberately tiny — sixteen 5x7 templates, nearest by
//! Hamming distance — because the armored alphabet is tiny. Anything that
//! can read a screenshot could be swapped in behind [`CaptureSource`] and
//! [`Recognizer`]; this one exists so the whole loop is reproducible in
//! tests.

mod capture;
mod font;
mod image;
mod pipeline;
mod recognize;
mod render;

pub use capture::{CaptureSource, FileCaptureSource};
pub use font::{GlyphFont, GLYPH_HEIGHT, GLYPH_WIDTH, HEX_CHARSET};
pub use image::{flip_pixels, GrayImage};
pub use pipeline::{auto_decrypt, MIN_ARMORED_RUN};
pub use recognize::{levenshtein, ocr_accuracy, Recognition, Recognizer};
pub use render::render_armored;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OcrError {
    /// The capture source has no frame to give (for the file-backed source:
    /// the file is missing or unreadable).
    #[error("no frame available: {0}")]
    FrameUnavailable(String),
    /// The frame bytes do not parse as a supported image.
    #[error("malformed image: {0}")]
    MalformedImage(String),
    /// No recognized hex run decoded to a well-formed envelope.
    #[error("no ciphertext found in image")]
    NoCiphertextFound,
    /// A run was a well-formed envelope but decryption failed.
    #[error(transparent)]
    Crypto(#[from] crate::crypto::CryptoError),
}
