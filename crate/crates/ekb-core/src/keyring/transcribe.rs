//! Pluggable speech-to-text boundary.
//!
//! A real deployment wires an actual transcription engine in here. The
//! built-in implementations are deterministic stand-ins: one treats the
//! audio blob as a text manifest of the spoken words, the other wraps any
//! transcriber and injects controlled recitation mistakes for testing the
//! detection machinery.

use super::fingerprint::Transcript;
use super::KeyringError;

pub trait Transcriber {
    /// A stable identifier recorded as the transcript source.
    fn id(&self) -> &str;

    fn transcribe(&self, audio: &[u8]) -> Result<Transcript, KeyringError>;
}

/// Reads the blob as a UTF-8 manifest of the spoken words.
#[derive(Debug, Default)]
pub struct MockTranscriber;

impl Transcriber for MockTranscriber {
    fn id(&self) -> &str {
        "mock"
    }

    fn transcribe(&self, audio: &[u8]) -> Result<Transcript, KeyringError> {
        let text = std::str::from_utf8(audio)
            .map_err(|e| KeyringError::TranscriptionFailed(format!("manifest is not UTF-8: {e}")))?;
        Ok(Transcript::from_text(text, self.id()))
    }
}

/// One scripted recitation mistake, applied at a word position of the
/// current sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecitationEdit {
    /// Drop the word at the position.
    Omit(usize),
    /// Repeat the word at the position, in place (the copy lands right
    /// after it).
    Duplicate(usize),
    /// Replace the word at the position.
    Substitute(usize, String),
}

/// Wraps another transcriber and applies scripted mistakes to its output,
/// in order. Positions refer to the sequence as it stands when the edit is
/// applied.
pub struct ErrorInjectingTranscriber<T: Transcriber> {
    inner: T,
    edits: Vec<RecitationEdit>,
}

impl<T: Transcriber> ErrorInjectingTranscriber<T> {
    pub fn new(inner: T, edits: Vec<RecitationEdit>) -> Self {
        ErrorInjectingTranscriber { inner, edits }
    }
}

impl<T: Transcriber> Transcriber for ErrorInjectingTranscriber<T> {
    fn id(&self) -> &str {
        "error-injecting"
    }

    fn transcribe(&self, audio: &[u8]) -> Result<Transcript, KeyringError> {
        let mut words = self.inner.transcribe(audio)?.words().to_vec();
        for edit in &self.edits {
            let check = |pos: usize| {
                if pos < words.len() {
                    Ok(())
                } else {
                    Err(KeyringError::TranscriptionFailed(format!(
                        "edit position {pos} out of range for {} words",
                        words.len()
                    )))
                }
            };
            match edit {
                RecitationEdit::Omit(pos) => {
                    check(*pos)?;
                    words.remove(*pos);
                }
                RecitationEdit::Duplicate(pos) => {
                    check(*pos)?;
                    words.insert(pos + 1, words[*pos].clone());
                }
                RecitationEdit::Substitute(pos, word) => {
                    check(*pos)?;
                    words[*pos] = word.clone();
                }
            }
        }
        Ok(Transcript::from_words(words, self.id()))
    }
}
