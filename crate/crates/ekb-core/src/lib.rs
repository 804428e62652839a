//! Over-the-top end-to-end encryption for instant-messaging channels that run
//! content scanners on the endpoints.
//!
//! The pieces fit together like this: [`crypto`] seals any payload (text,
//! image, audio, voice memo, video) into a compact binary envelope under a
//! shared 128-bit key; [`armor`] turns envelopes into an OCR-safe uppercase
//! hex form that survives being displayed on a screen; [`ocr`] closes the
//! loop by recognizing armored text out of a rendered frame and decrypting it
//! automatically; [`keyring`] verifies key ownership through spoken word
//! fingerprints and stores contacts with their shared keys; [`css`] simulates
//! a scanned messaging channel end to end and produces the evaluation matrix;
//! [`analysis`] quantifies how hard it is to forge a spoken fingerprint by
//! recombining previously recorded words.

pub mod analysis;
pub mod armor;
pub mod crypto;
pub mod css;
pub mod keyring;
pub mod ocr;

pub use crypto::{MediaType, MessageEnvelope, SecretKey};
