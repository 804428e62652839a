//! Key verification and contact management.
//!
//! Public keys are verified out of band: the owner speaks the words of the
//! key's fingerprint, and the receiver compares a transcription of that
//! recording against the fingerprint recomputed from the received key. The
//! word list is built so that common recitation mistakes (skipped word,
//! repeated word, swapped neighbors) land on the wrong-parity list and are
//! caught structurally, before any comparison happens. Whether the voice on
//! the recording actually belongs to the claimed owner is a human judgment,
//! recorded here as a plain attestation flag.

mod fingerprint;
mod store;
mod transcribe;
mod wordlist;

pub use fingerprint::{
    generate_fingerprint, validate_recitation, verify_fingerprint, Finding, Fingerprint,
    Transcript, ValidationReport, VerificationResult, WordDiff,
};
pub use store::{Contact, ContactStore};
pub use transcribe::{ErrorInjectingTranscriber, MockTranscriber, RecitationEdit, Transcriber};
pub use wordlist::{Parity, WordList, FINGERPRINT_WORDS, WORDS_PER_LIST};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KeyringError {
    /// The embedded word list failed its checksum or invariants.
    #[error("corrupt word list: {0}")]
    CorruptWordList(String),
    #[error("unknown contact {0:?}")]
    UnknownContact(String),
    /// Attempt to attach a shared key before the contact's fingerprint was
    /// verified.
    #[error("contact {0:?} has no verified fingerprint")]
    UnverifiedContact(String),
    #[error("contact {0:?} already exists")]
    DuplicateContact(String),
    #[error("contact {0:?} has no shared key")]
    MissingSharedKey(String),
    #[error("contact store is corrupt: {0}")]
    StoreCorrupt(String),
    #[error("transcription failed: {0}")]
    TranscriptionFailed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
