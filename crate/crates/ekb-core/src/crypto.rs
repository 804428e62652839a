//! Message envelopes: AES-128-CBC with PKCS#7 padding under a shared key.
//!
//! Every payload, regardless of media type, is sealed the same way: a fresh
//! random 16-byte IV is drawn per message and stored in the envelope header,
//! and the padded plaintext is encrypted in CBC mode. There is deliberately
//! no MAC — tampering is detected only probabilistically through the padding
//! check, which is also what signals a wrong key. Authenticated modes are a
//! documented non-goal of this scheme.

use aes::Aes128;
use cbc::cipher::block_padding::Pkcs7;
use cbc::cipher::{BlockDecryptMut, BlockEncryptMut, KeyIvInit};
use rand::RngCore;
use thiserror::Error;

type Aes128CbcEnc = cbc::Encryptor<Aes128>;
type Aes128CbcDec = cbc::Decryptor<Aes128>;

/// Leading four bytes of every serialized envelope.
pub const ENVELOPE_MAGIC: [u8; 4] = *b"EKB1";

/// Byte length of the fixed envelope header (magic + media tag + IV).
pub const ENVELOPE_HEADER_LEN: usize = 4 + 1 + 16;

/// Smallest possible serialized envelope: header plus one ciphertext block.
pub const MIN_ENVELOPE_LEN: usize = ENVELOPE_HEADER_LEN + 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CryptoError {
    /// The leading four bytes are not the envelope magic.
    #[error("bad envelope magic")]
    BadMagic,
    /// Ciphertext is empty or not a multiple of the 16-byte block size.
    #[error("bad ciphertext length")]
    BadLength,
    /// PKCS#7 check failed: wrong key or corrupted ciphertext.
    #[error("bad padding (wrong key or corrupted ciphertext)")]
    BadPadding,
    /// The media tag byte is outside the known range.
    #[error("unknown media tag {0}")]
    UnknownMediaTag(u8),
    /// A key import was not exactly 32 hex characters.
    #[error("invalid key encoding: {0}")]
    InvalidKey(String),
}

/// 128-bit shared symmetric key for a contact pair.
///
/// The raw bytes never leave this type except through [`SecretKey::to_hex`];
/// in particular there is no serde support and `Debug` prints a placeholder.
#[derive(Clone, PartialEq, Eq)]
pub struct SecretKey([u8; 16]);

impl SecretKey {
    pub const LEN: usize = 16;

    pub fn from_bytes(bytes: [u8; 16]) -> Self {
        SecretKey(bytes)
    }

    /// Draws 16 uniformly random bytes from the given source.
    pub fn generate<R: RngCore + ?Sized>(rng: &mut R) -> Self {
        let mut bytes = [0u8; 16];
        rng.fill_bytes(&mut bytes);
        SecretKey(bytes)
    }

    /// Explicit export: 32 lowercase hex characters.
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(32);
        for b in self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    /// Inverse of [`SecretKey::to_hex`]; accepts either case.
    pub fn from_hex(s: &str) -> Result<Self, CryptoError> {
        let s = s.trim();
        if s.len() != 32 {
            return Err(CryptoError::InvalidKey(format!(
                "expected 32 hex characters, got {}",
                s.len()
            )));
        }
        let mut bytes = [0u8; 16];
        for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
            let hi = hex_val(chunk[0]);
            let lo = hex_val(chunk[1]);
            match (hi, lo) {
                (Some(h), Some(l)) => bytes[i] = (h << 4) | l,
                _ => {
                    return Err(CryptoError::InvalidKey(
                        "non-hex character in key".to_string(),
                    ))
                }
            }
        }
        Ok(SecretKey(bytes))
    }

    pub fn as_bytes(&self) -> &[u8; 16] {
        &self.0
    }
}

fn hex_val(c: u8) -> Option<u8> {
    match c {
        b'0'..=b'9' => Some(c - b'0'),
        b'a'..=b'f' => Some(c - b'a' + 10),
        b'A'..=b'F' => Some(c - b'A' + 10),
        _ => None,
    }
}

impl std::fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("SecretKey(..)")
    }
}

/// What kind of payload an envelope carries. The tag byte is part of the
/// wire format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MediaType {
    Text,
    Image,
    Audio,
    VoiceMemo,
    Video,
}

impl MediaType {
    pub const ALL: [MediaType; 5] = [
        MediaType::Text,
        MediaType::Image,
        MediaType::Audio,
        MediaType::VoiceMemo,
        MediaType::Video,
    ];

    pub fn tag(self) -> u8 {
        match self {
            MediaType::Text => 0,
            MediaType::Image => 1,
            MediaType::Audio => 2,
            MediaType::VoiceMemo => 3,
            MediaType::Video => 4,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Self, CryptoError> {
        match tag {
            0 => Ok(MediaType::Text),
            1 => Ok(MediaType::Image),
            2 => Ok(MediaType::Audio),
            3 => Ok(MediaType::VoiceMemo),
            4 => Ok(MediaType::Video),
            other => Err(CryptoError::UnknownMediaTag(other)),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MediaType::Text => "text",
            MediaType::Image => "image",
            MediaType::Audio => "audio",
            MediaType::VoiceMemo => "voice-memo",
            MediaType::Video => "video",
        }
    }
}

impl std::str::FromStr for MediaType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(MediaType::Text),
            "image" => Ok(MediaType::Image),
            "audio" => Ok(MediaType::Audio),
            "voice-memo" | "voicememo" | "voice_memo" => Ok(MediaType::VoiceMemo),
            "video" => Ok(MediaType::Video),
            other => Err(format!("unknown media type {other:?}")),
        }
    }
}

impl std::fmt::Display for MediaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Versioned binary container for one encrypted message.
///
/// Wire layout, bit-exact: bytes 0-3 magic `"EKB1"`, byte 4 media tag,
/// bytes 5-20 IV, bytes 21.. ciphertext (a positive multiple of 16).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageEnvelope {
    pub media: MediaType,
    pub iv: [u8; 16],
    pub ciphertext: Vec<u8>,
}

impl MessageEnvelope {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(ENVELOPE_HEADER_LEN + self.ciphertext.len());
        out.extend_from_slice(&ENVELOPE_MAGIC);
        out.push(self.media.tag());
        out.extend_from_slice(&self.iv);
        out.extend_from_slice(&self.ciphertext);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CryptoError> {
        if bytes.len() >= 4 && bytes[..4] != ENVELOPE_MAGIC {
            return Err(CryptoError::BadMagic);
        }
        if bytes.len() < MIN_ENVELOPE_LEN {
            return Err(CryptoError::BadLength);
        }
        let media = MediaType::from_tag(bytes[4])?;
        let mut iv = [0u8; 16];
        iv.copy_from_slice(&bytes[5..21]);
        let ciphertext = bytes[21..].to_vec();
        if ciphertext.is_empty() || ciphertext.len() % 16 != 0 {
            return Err(CryptoError::BadLength);
        }
        Ok(MessageEnvelope {
            media,
            iv,
            ciphertext,
        })
    }
}

/// Seals `plaintext` into an envelope with a fresh random IV drawn from `rng`.
///
/// The ciphertext length is always `16 * ((plaintext.len() + 1) / 16 + 1)`
/// rounded to whole blocks: PKCS#7 adds a full block when the plaintext is
/// already block-aligned, so even an empty plaintext yields one block.
pub fn encrypt<R: RngCore + ?Sized>(
    plaintext: &[u8],
    media: MediaType,
    key: &SecretKey,
    rng: &mut R,
) -> MessageEnvelope {
    let mut iv = [0u8; 16];
    rng.fill_bytes(&mut iv);
    let ciphertext = Aes128CbcEnc::new(key.as_bytes().into(), &iv.into())
        .encrypt_padded_vec_mut::<Pkcs7>(plaintext);
    MessageEnvelope {
        media,
        iv,
        ciphertext,
    }
}

/// Opens an envelope, returning the media tag and the original plaintext.
pub fn decrypt(env: &MessageEnvelope, key: &SecretKey) -> Result<(MediaType, Vec<u8>), CryptoError> {
    if env.ciphertext.is_empty() || env.ciphertext.len() % 16 != 0 {
        return Err(CryptoError::BadLength);
    }
    let plaintext = Aes128CbcDec::new(key.as_bytes().into(), &env.iv.into())
        .decrypt_padded_vec_mut::<Pkcs7>(&env.ciphertext)
        .map_err(|_| CryptoError::BadPadding)?;
    Ok((env.media, plaintext))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    #[test]
    fn keygen_is_deterministic_under_a_seed() {
        let a = SecretKey::generate(&mut rng(0));
        let b = SecretKey::generate(&mut rng(0));
        assert_eq!(a, b);
        let c = SecretKey::generate(&mut rng(1));
        assert_ne!(a, c);
        assert_eq!(a.as_bytes().len(), 16);
    }

    #[test]
    fn key_hex_round_trip() {
        let key = SecretKey::generate(&mut rng(7));
        let hex = key.to_hex();
        assert_eq!(hex.len(), 32);
        assert!(hex.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        assert_eq!(SecretKey::from_hex(&hex).unwrap(), key);
        assert_eq!(SecretKey::from_hex(&hex.to_uppercase()).unwrap(), key);
        assert!(SecretKey::from_hex("abc").is_err());
        assert!(SecretKey::from_hex(&"zz".repeat(16)).is_err());
    }

    #[test]
    fn empty_plaintext_is_one_pad_block() {
        let key = SecretKey::generate(&mut rng(0));
        let env = encrypt(b"", MediaType::Text, &key, &mut rng(1));
        assert_eq!(env.ciphertext.len(), 16);
        let (media, pt) = decrypt(&env, &key).unwrap();
        assert_eq!(media, MediaType::Text);
        assert!(pt.is_empty());
    }

    #[test]
    fn block_aligned_plaintext_gains_a_pad_block() {
        let key = SecretKey::generate(&mut rng(0));
        let env = encrypt(&[0xAA; 16], MediaType::Audio, &key, &mut rng(1));
        assert_eq!(env.ciphertext.len(), 32);
    }

    #[test]
    fn ciphertext_length_formula_holds_for_all_small_lengths() {
        let key = SecretKey::generate(&mut rng(3));
        let mut r = rng(4);
        for len in 0..=4096usize {
            let media = MediaType::ALL[len % 5];
            let pt = vec![0x5Au8; len];
            let env = encrypt(&pt, media, &key, &mut r);
            assert_eq!(env.ciphertext.len(), 16 * (len / 16 + 1), "len {len}");
            let (m, back) = decrypt(&env, &key).unwrap();
            assert_eq!(m, media);
            assert_eq!(back, pt);
        }
    }

    #[test]
    fn fresh_iv_per_message() {
        let key = SecretKey::generate(&mut rng(0));
        let mut r = rng(9);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..100 {
            let env = encrypt(b"same plaintext", MediaType::Text, &key, &mut r);
            assert!(seen.insert((env.iv, env.ciphertext.clone())), "IV or ciphertext repeated");
        }
    }

    #[test]
    fn wrong_key_fails_padding_at_the_expected_rate() {
        // P(random garbage passes PKCS#7) is about 1/256, so failures should
        // land within 3 sigma of 255/256 over 1000 trials.
        let key = SecretKey::generate(&mut rng(0));
        let mut r = rng(42);
        let mut failures = 0u32;
        let trials = 1000;
        for _ in 0..trials {
            let env = encrypt(b"some secret message body", MediaType::Text, &key, &mut r);
            let wrong = SecretKey::generate(&mut r);
            if wrong == key {
                continue;
            }
            match decrypt(&env, &wrong) {
                Err(CryptoError::BadPadding) => failures += 1,
                Err(e) => panic!("unexpected error {e:?}"),
                Ok(_) => {}
            }
        }
        let p = 255.0 / 256.0;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let rate = f64::from(failures) / trials as f64;
        assert!(
            (rate - p).abs() <= 3.0 * sigma,
            "failure rate {rate} not within 3 sigma of {p}"
        );
    }

    #[test]
    fn truncated_ciphertext_is_bad_length() {
        let key = SecretKey::generate(&mut rng(0));
        let env = MessageEnvelope {
            media: MediaType::Text,
            iv: [0; 16],
            ciphertext: vec![0; 8],
        };
        assert_eq!(decrypt(&env, &key), Err(CryptoError::BadLength));
    }

    #[test]
    fn envelope_wire_layout_is_bit_exact() {
        let key = SecretKey::generate(&mut rng(0));
        let env = encrypt(b"x", MediaType::Video, &key, &mut rng(5));
        let bytes = env.to_bytes();
        assert_eq!(&bytes[..4], b"EKB1");
        assert_eq!(bytes[4], 4);
        assert_eq!(&bytes[5..21], &env.iv);
        assert_eq!(&bytes[21..], &env.ciphertext[..]);
        assert_eq!(MessageEnvelope::from_bytes(&bytes).unwrap(), env);
    }

    #[test]
    fn envelope_parse_errors() {
        assert_eq!(
            MessageEnvelope::from_bytes(b"NOPE").unwrap_err(),
            CryptoError::BadMagic
        );
        assert_eq!(
            MessageEnvelope::from_bytes(b"EKB1").unwrap_err(),
            CryptoError::BadLength
        );
        // Valid header, 8-byte ciphertext.
        let mut bytes = Vec::new();
        bytes.extend_from_slice(b"EKB1");
        bytes.push(0);
        bytes.extend_from_slice(&[0u8; 16]);
        bytes.extend_from_slice(&[0u8; 8]);
        assert_eq!(
            MessageEnvelope::from_bytes(&bytes).unwrap_err(),
            CryptoError::BadLength
        );
        // Unknown media tag.
        let mut bytes = Vec::new();
        bytes.extend_from_slice(b"EKB1");
        bytes.push(9);
        bytes.extend_from_slice(&[0u8; 32]);
        assert_eq!(
            MessageEnvelope::from_bytes(&bytes).unwrap_err(),
            CryptoError::UnknownMediaTag(9)
        );
    }

    #[test]
    fn debug_does_not_leak_key_bytes() {
        let key = SecretKey::from_hex("000102030405060708090a0b0c0d0e0f").unwrap();
        assert_eq!(format!("{key:?}"), "SecretKey(..)");
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    proptest! {
        #[test]
        fn round_trip_any_payload(
            seed in any::<u64>(),
            tag in 0u8..5,
            plaintext in proptest::collection::vec(any::<u8>(), 0..2048),
        ) {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let key = SecretKey::generate(&mut rng);
            let media = MediaType::from_tag(tag).unwrap();
            let env = encrypt(&plaintext, media, &key, &mut rng);
            let parsed = MessageEnvelope::from_bytes(&env.to_bytes()).unwrap();
            let (m, pt) = decrypt(&parsed, &key).unwrap();
            prop_assert_eq!(m, media);
            prop_assert_eq!(pt, plaintext);
        }
    }
}
