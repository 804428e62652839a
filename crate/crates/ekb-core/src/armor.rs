//! OCR-safe transport form: uppercase hexadecimal armoring.
//!
//! The armored alphabet is exactly {0-9, A-F}. Restricting the characters a
//! recognizer has to distinguish is what makes automated screen-reading of
//! ciphertext reliable, so the encoder never emits anything else. Space and
//! newline are tolerated on the way back in because screens wrap long
//! messages.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArmorError {
    /// Hex content (after separator stripping) has an odd number of digits.
    #[error("odd number of hex digits")]
    OddLength,
    /// A character is neither a hex digit nor a permitted separator.
    /// The position indexes the original input string.
    #[error("illegal character at index {position}")]
    IllegalCharacter { position: usize },
}

/// Armored text: hex digits plus the permitted separators (space, newline).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArmoredMessage(String);

impl ArmoredMessage {
    /// Validates that `text` contains only hex digits and separators and
    /// that the digit count is even.
    pub fn parse(text: &str) -> Result<Self, ArmorError> {
        let mut digits = 0usize;
        for (i, c) in text.char_indices() {
            if c.is_ascii_hexdigit() {
                digits += 1;
            } else if c != ' ' && c != '\n' {
                return Err(ArmorError::IllegalCharacter { position: i });
            }
        }
        if digits % 2 != 0 {
            return Err(ArmorError::OddLength);
        }
        Ok(ArmoredMessage(text.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl std::fmt::Display for ArmoredMessage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

const HEX_UPPER: &[u8; 16] = b"0123456789ABCDEF";

/// Encodes bytes as uppercase hex, two characters per byte, no separators.
pub fn encode(data: &[u8]) -> ArmoredMessage {
    let mut s = String::with_capacity(data.len() * 2);
    for &b in data {
        s.push(HEX_UPPER[(b >> 4) as usize] as char);
        s.push(HEX_UPPER[(b & 0x0F) as usize] as char);
    }
    ArmoredMessage(s)
}

/// Parses hex text back into bytes. Space and newline are ignored; any other
/// non-hex character is rejected with its position in the input. Input may
/// be either case.
pub fn decode_strict(text: &str) -> Result<Vec<u8>, ArmorError> {
    let mut out = Vec::with_capacity(text.len() / 2);
    let mut pending: Option<u8> = None;
    for (i, c) in text.char_indices() {
        if c == ' ' || c == '\n' {
            continue;
        }
        let v = match c {
            '0'..='9' => c as u8 - b'0',
            'a'..='f' => c as u8 - b'a' + 10,
            'A'..='F' => c as u8 - b'A' + 10,
            _ => return Err(ArmorError::IllegalCharacter { position: i }),
        };
        match pending.take() {
            Some(hi) => out.push((hi << 4) | v),
            None => pending = Some(v),
        }
    }
    if pending.is_some() {
        return Err(ArmorError::OddLength);
    }
    Ok(out)
}

/// Finds maximal runs of hex characters in free-form text, in document
/// order. A single space or newline between two hex characters does not
/// terminate a run (wrapped ciphertext), but two in a row, or any other
/// character, does. Runs shorter than `min_len` hex digits are dropped.
///
/// `min_len` must be even and at least 2; anything shorter than the
/// smallest envelope cannot decode to one.
pub fn extract_hex_runs(text: &str, min_len: usize) -> Vec<String> {
    assert!(min_len >= 2 && min_len % 2 == 0, "min_len must be even and >= 2");
    let mut runs = Vec::new();
    let mut current = String::new();
    let mut digits = 0usize;
    let mut pending_sep = false;

    let mut flush = |current: &mut String, digits: &mut usize| {
        if *digits >= min_len {
            runs.push(std::mem::take(current));
        } else {
            current.clear();
        }
        *digits = 0;
    };

    for c in text.chars() {
        if c.is_ascii_hexdigit() {
            if pending_sep {
                current.push(' ');
                pending_sep = false;
            }
            current.push(c);
            digits += 1;
        } else if (c == ' ' || c == '\n') && !current.is_empty() && !pending_sep {
            // tentatively part of the run; confirmed only by another digit
            pending_sep = true;
        } else {
            pending_sep = false;
            flush(&mut current, &mut digits);
        }
    }
    flush(&mut current, &mut digits);
    runs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_basics() {
        assert_eq!(encode(&[0x00]).as_str(), "00");
        assert_eq!(encode(&[0xDE, 0xAD]).as_str(), "DEAD");
        assert_eq!(encode(&[]).as_str(), "");
    }

    #[test]
    fn decode_tolerates_separators() {
        assert_eq!(decode_strict("DE AD\n").unwrap(), vec![0xDE, 0xAD]);
        assert_eq!(decode_strict("de\nad").unwrap(), vec![0xDE, 0xAD]);
    }

    #[test]
    fn decode_rejects_odd_length() {
        assert_eq!(decode_strict("DEA").unwrap_err(), ArmorError::OddLength);
    }

    #[test]
    fn decode_reports_illegal_character_position() {
        assert_eq!(
            decode_strict("DEAG").unwrap_err(),
            ArmorError::IllegalCharacter { position: 3 }
        );
        // Position indexes the original string, separators included.
        assert_eq!(
            decode_strict("DE AX").unwrap_err(),
            ArmorError::IllegalCharacter { position: 4 }
        );
    }

    #[test]
    fn parse_validates_alphabet_and_parity() {
        assert!(ArmoredMessage::parse("DEAD BEEF\n00").is_ok());
        assert_eq!(
            ArmoredMessage::parse("DEAD!").unwrap_err(),
            ArmorError::IllegalCharacter { position: 4 }
        );
        assert_eq!(ArmoredMessage::parse("DEA").unwrap_err(), ArmorError::OddLength);
    }

    #[test]
    fn runs_basic_extraction() {
        assert_eq!(extract_hex_runs("hello ABCD12 world", 6), vec!["ABCD12"]);
        assert!(extract_hex_runs("no runs here long enough 00", 6).is_empty());
    }

    #[test]
    fn runs_two_in_document_order() {
        // 'zz' breaks the runs; both survive the length filter.
        let runs = extract_hex_runs("xx ABCDEF zz 123456 yy", 6);
        assert_eq!(runs, vec!["ABCDEF", "123456"]);
    }

    #[test]
    fn runs_survive_a_single_wrap_separator() {
        let runs = extract_hex_runs("ABCD\nEF01", 8);
        assert_eq!(runs, vec!["ABCD EF01"]);
        assert_eq!(decode_strict(&runs[0]).unwrap(), vec![0xAB, 0xCD, 0xEF, 0x01]);
    }

    #[test]
    fn runs_split_on_double_separator() {
        let runs = extract_hex_runs("ABCD  EF0123", 4);
        assert_eq!(runs, vec!["ABCD", "EF0123"]);
    }

    #[test]
    fn run_min_len_counts_digits_not_separators() {
        assert_eq!(extract_hex_runs("AB CD", 4), vec!["AB CD"]);
        assert!(extract_hex_runs("AB CD", 6).is_empty());
    }
}
