//! Fingerprint generation, recitation checking, and comparison.

use sha2::{Digest, Sha256};

use super::wordlist::{Parity, WordList, FINGERPRINT_WORDS};

/// A public key's spoken form: 32 words, alternating between the even and
/// odd lists, one per byte of the key's SHA-256 digest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    words: Vec<String>,
}

impl Fingerprint {
    pub fn words(&self) -> &[String] {
        &self.words
    }

    /// Renders the words `per_line` to a line, the way they are read aloud.
    pub fn to_lines(&self, per_line: usize) -> String {
        assert!(per_line > 0);
        self.words
            .chunks(per_line)
            .map(|chunk| chunk.join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.words.join(" "))
    }
}

/// A transcription of a spoken fingerprint, normalized for comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    words: Vec<String>,
    source: String,
}

impl Transcript {
    /// Normalizes free text into comparison form: tokens lowercased with
    /// punctuation stripped, empty tokens dropped.
    pub fn from_text(text: &str, source: &str) -> Transcript {
        let words = text
            .split_whitespace()
            .map(|token| {
                token
                    .chars()
                    .filter(|c| c.is_alphanumeric())
                    .flat_map(char::to_lowercase)
                    .collect::<String>()
            })
            .filter(|w| !w.is_empty())
            .collect();
        Transcript {
            words,
            source: source.to_string(),
        }
    }

    pub fn from_words(words: Vec<String>, source: &str) -> Transcript {
        Transcript {
            words,
            source: source.to_string(),
        }
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

/// Maps a public key to its 32-word fingerprint: word `i` is the entry of
/// the position-`i` parity list indexed by byte `i` of SHA-256(key). The
/// whole digest is used, nothing truncated.
pub fn generate_fingerprint(public_key: &[u8], wl: &WordList) -> Fingerprint {
    assert!(!public_key.is_empty(), "public key must be non-empty");
    let digest = Sha256::digest(public_key);
    let words = digest
        .iter()
        .enumerate()
        .map(|(i, &byte)| wl.word(Parity::of_position(i), byte).to_string())
        .collect();
    Fingerprint { words }
}

/// One structural problem found in a recited word sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// The word is in neither list.
    UnknownWord { position: usize, word: String },
    /// The word belongs to the opposite-parity list for its position.
    ParityViolation {
        position: usize,
        word: String,
        expected: Parity,
    },
    /// The sequence is not exactly 32 words long.
    LengthError { actual: usize },
}

/// Structural check of a recitation: no fingerprint needed, only the lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    /// True when the sequence is structurally a valid fingerprint.
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Checks a word sequence against the alternation structure. Every problem
/// is a report finding; a clean report means 32 words, each from the list
/// matching its position's parity.
pub fn validate_recitation<S: AsRef<str>>(words: &[S], wl: &WordList) -> ValidationReport {
    let mut findings = Vec::new();
    for (position, word) in words.iter().enumerate() {
        let word = word.as_ref();
        let expected = Parity::of_position(position);
        match wl.lookup(word) {
            Some((parity, _)) if parity == expected => {}
            Some(_) => findings.push(Finding::ParityViolation {
                position,
                word: word.to_string(),
                expected,
            }),
            None => findings.push(Finding::UnknownWord {
                position,
                word: word.to_string(),
            }),
        }
    }
    if words.len() != FINGERPRINT_WORDS {
        findings.push(Finding::LengthError {
            actual: words.len(),
        });
    }
    ValidationReport { findings }
}

/// One position where the transcript disagrees with the expected
/// fingerprint. `None` on either side means the sequence was too short to
/// have a word there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordDiff {
    pub position: usize,
    pub expected: Option<String>,
    pub heard: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationResult {
    Match,
    Mismatch { diffs: Vec<WordDiff> },
}

impl VerificationResult {
    pub fn is_match(&self) -> bool {
        matches!(self, VerificationResult::Match)
    }
}

/// Compares a transcript against the fingerprint recomputed from the
/// received public key. Every differing position is reported with both
/// words. A match binds transcript to key; whether the recording's voice
/// belongs to the key owner is attested separately.
pub fn verify_fingerprint(
    public_key: &[u8],
    transcript: &Transcript,
    wl: &WordList,
) -> VerificationResult {
    let expected = generate_fingerprint(public_key, wl);
    let heard = transcript.words();
    let len = expected.words().len().max(heard.len());
    let mut diffs = Vec::new();
    for position in 0..len {
        let e = expected.words().get(position);
        let h = heard.get(position);
        if e != h {
            diffs.push(WordDiff {
                position,
                expected: e.cloned(),
                heard: h.cloned(),
            });
        }
    }
    if diffs.is_empty() {
        VerificationResult::Match
    } else {
        VerificationResult::Mismatch { diffs }
    }
}
