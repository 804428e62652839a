//! The two 256-word phonetic alphabets used to vocalize key fingerprints.
//!
//! Byte values at even fingerprint positions index the first list, odd
//! positions the second. The lists are disjoint, which is what makes the
//! parity structure detect recitation errors. The embedded resource carries
//! a leading checksum line so a corrupted build is caught at load time.

use std::collections::HashMap;

use sha2::{Digest, Sha256};

use super::KeyringError;

/// Words per parity list.
pub const WORDS_PER_LIST: usize = 256;

/// Words in a full fingerprint (one per digest byte).
pub const FINGERPRINT_WORDS: usize = 32;

const RESOURCE: &str = include_str!("../../resources/pgp_wordlist.txt");

/// Which list a word belongs to, named after the fingerprint positions it
/// serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_position(position: usize) -> Parity {
        if position % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// The validated word lists plus a reverse index for lookups.
#[derive(Debug, Clone)]
pub struct WordList {
    even: Vec<String>,
    odd: Vec<String>,
    index: HashMap<String, (Parity, u8)>,
}

impl WordList {
    /// Loads and validates the embedded word list resource.
    pub fn load() -> Result<WordList, KeyringError> {
        Self::parse(RESOURCE)
    }

    fn parse(resource: &str) -> Result<WordList, KeyringError> {
        let corrupt = |msg: &str| KeyringError::CorruptWordList(msg.to_string());

        let (checksum_line, body) = resource
            .split_once('\n')
            .ok_or_else(|| corrupt("missing checksum line"))?;
        let expected = checksum_line
            .strip_prefix("sha256:")
            .ok_or_else(|| corrupt("malformed checksum line"))?;
        let actual = Sha256::digest(body.as_bytes());
        let actual_hex: String = actual.iter().map(|b| format!("{b:02x}")).collect();
        if actual_hex != expected.trim() {
            return Err(corrupt("checksum mismatch"));
        }

        let words: Vec<&str> = body.lines().collect();
        if words.len() != 2 * WORDS_PER_LIST {
            return Err(corrupt(&format!(
                "expected {} words, found {}",
                2 * WORDS_PER_LIST,
                words.len()
            )));
        }

        let mut index = HashMap::with_capacity(2 * WORDS_PER_LIST);
        let mut take = |range: std::ops::Range<usize>, parity: Parity| -> Result<Vec<String>, KeyringError> {
            let mut list = Vec::with_capacity(WORDS_PER_LIST);
            for (i, &w) in words[range].iter().enumerate() {
                if w.is_empty() || !w.bytes().all(|b| b.is_ascii_lowercase()) {
                    return Err(corrupt(&format!("word {w:?} is not lowercase ascii")));
                }
                if index.insert(w.to_string(), (parity, i as u8)).is_some() {
                    return Err(corrupt(&format!("duplicate word {w:?}")));
                }
                list.push(w.to_string());
            }
            Ok(list)
        };
        let even = take(0..WORDS_PER_LIST, Parity::Even)?;
        let odd = take(WORDS_PER_LIST..2 * WORDS_PER_LIST, Parity::Odd)?;

        Ok(WordList { even, odd, index })
    }

    pub fn even(&self) -> &[String] {
        &self.even
    }

    pub fn odd(&self) -> &[String] {
        &self.odd
    }

    /// The word a digest byte maps to at the given parity.
    pub fn word(&self, parity: Parity, byte: u8) -> &str {
        match parity {
            Parity::Even => &self.even[byte as usize],
            Parity::Odd => &self.odd[byte as usize],
        }
    }

    /// Which list a word belongs to, and its byte value, if it is a list
    /// word at all.
    pub fn lookup(&self, word: &str) -> Option<(Parity, u8)> {
        self.index.get(word).copied()
    }
}
