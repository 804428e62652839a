//! The automated decryption loop: frame in, plaintext out.

use crate::armor;
use crate::crypto::{self, CryptoError, MediaType, MessageEnvelope, SecretKey};

use super::image::GrayImage;
use super::recognize::Recognizer;
use super::OcrError;

/// Shortest hex run worth trying: the smallest envelope is 21 bytes, so 42
/// digits. Anything shorter cannot decode to one.
pub const MIN_ARMORED_RUN: usize = 2 * crypto::MIN_ENVELOPE_LEN;

/// Reads the image, pulls out candidate ciphertext runs, and decrypts the
/// first one that is a well-formed envelope. Runs that fail hex decoding or
/// envelope validation are skipped; a run that validates but fails
/// decryption aborts with that error, since it means the envelope was real
/// and the key was not.
pub fn auto_decrypt(
    img: &GrayImage,
    key: &SecretKey,
    recognizer: &Recognizer,
) -> Result<(MediaType, Vec<u8>), OcrError> {
    let recognition = recognizer.recognize_hex(img);
    for run in armor::extract_hex_runs(&recognition.text, MIN_ARMORED_RUN) {
        let Ok(bytes) = armor::decode_strict(&run) else {
            continue;
        };
        let env = match MessageEnvelope::from_bytes(&bytes) {
            Ok(env) => env,
            Err(_) => continue,
        };
        return match crypto::decrypt(&env, key) {
            Ok(result) => Ok(result),
            Err(e @ CryptoError::BadPadding) => Err(OcrError::Crypto(e)),
            Err(_) => continue,
        };
    }
    Err(OcrError::NoCiphertextFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::armor::{encode, ArmoredMessage};
    use crate::ocr::{render_armored, GlyphFont};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn recognizer(scale: usize) -> Recognizer {
        Recognizer::new(GlyphFont::builtin(), scale)
    }

    #[test]
    fn full_round_trip_from_a_clean_render() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        let key = SecretKey::generate(&mut rng);
        let env = crypto::encrypt(b"attack at dawn", MediaType::Text, &key, &mut rng);
        let armored = encode(&env.to_bytes());
        for (scale, wrap) in [(1, 64), (2, 32), (3, 100)] {
            let img = render_armored(&armored, &GlyphFont::builtin(), scale, wrap);
            let (media, pt) = auto_decrypt(&img, &key, &recognizer(scale)).unwrap();
            assert_eq!(media, MediaType::Text);
            assert_eq!(pt, b"attack at dawn");
        }
    }

    #[test]
    fn non_ciphertext_image_yields_nothing() {
        let img = render_armored(
            &ArmoredMessage::parse("DEADBEEF").unwrap(),
            &GlyphFont::builtin(),
            1,
            64,
        );
        assert!(matches!(
            auto_decrypt(&img, &SecretKey::from_bytes([0; 16]), &recognizer(1)),
            Err(OcrError::NoCiphertextFound)
        ));
        let blank = GrayImage::filled(50, 20, 255);
        assert!(matches!(
            auto_decrypt(&blank, &SecretKey::from_bytes([0; 16]), &recognizer(1)),
            Err(OcrError::NoCiphertextFound)
        ));
    }

    #[test]
    fn decoy_run_is_skipped_for_the_real_envelope() {
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        let key = SecretKey::generate(&mut rng);
        let env = crypto::encrypt(b"real payload", MediaType::Text, &key, &mut rng);
        let armored = encode(&env.to_bytes());
        // A decoy of valid hex, long enough to be a candidate, but with no
        // envelope magic. Two spaces keep it a separate run.
        let decoy = "00".repeat(MIN_ARMORED_RUN / 2);
        let text = format!("{decoy}  {armored}");
        let img = render_armored(
            &ArmoredMessage::parse(&text).unwrap(),
            &GlyphFont::builtin(),
            1,
            text.chars().count().max(1),
        );
        let (_, pt) = auto_decrypt(&img, &key, &recognizer(1)).unwrap();
        assert_eq!(pt, b"real payload");
    }

    #[test]
    fn wrong_key_surfaces_the_padding_error() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        let key = SecretKey::generate(&mut rng);
        let wrong = SecretKey::generate(&mut rng);
        let env = crypto::encrypt(b"payload", MediaType::Text, &key, &mut rng);
        let img = render_armored(&encode(&env.to_bytes()), &GlyphFont::builtin(), 1, 64);
        match auto_decrypt(&img, &wrong, &recognizer(1)) {
            Err(OcrError::Crypto(CryptoError::BadPadding)) => {}
            other => panic!("expected padding error, got {other:?}"),
        }
    }
}
