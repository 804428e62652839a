//! The known-bad content database and the scan decision itself.

use std::collections::HashSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::crypto::MediaType;
use crate::ocr::GrayImage;

use super::dhash::{dhash, dhash_distance};
use super::CssError;

/// Hamming distance at or under which a perceptual hash counts as a match.
pub const DHASH_MATCH_THRESHOLD: u32 = 10;

/// One endpoint scanner's rule set: exact digests, perceptual image hashes,
/// and lowercase keywords.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanDatabase {
    exact_hashes: HashSet<[u8; 32]>,
    perceptual_hashes: HashSet<u64>,
    keywords: Vec<String>,
}

/// The scanner's decision for one payload. A flag always names the rule
/// that fired.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum ScanVerdict {
    Clean,
    Flagged { reason: String },
}

impl ScanVerdict {
    pub fn is_flagged(&self) -> bool {
        matches!(self, ScanVerdict::Flagged { .. })
    }
}

impl ScanDatabase {
    pub fn new() -> ScanDatabase {
        ScanDatabase::default()
    }

    /// Registers the exact digest of a known payload.
    pub fn add_exact_payload(&mut self, payload: &[u8]) {
        self.exact_hashes.insert(Sha256::digest(payload).into());
    }

    pub fn add_exact_digest(&mut self, digest: [u8; 32]) {
        self.exact_hashes.insert(digest);
    }

    pub fn add_perceptual_hash(&mut self, hash: u64) {
        self.perceptual_hashes.insert(hash);
    }

    /// Registers the perceptual hash of a known image.
    pub fn add_perceptual_image(&mut self, img: &GrayImage) -> Result<(), CssError> {
        self.perceptual_hashes.insert(dhash(img)?);
        Ok(())
    }

    /// Keywords are matched case-insensitively; stored lowercase, deduplicated.
    pub fn add_keyword(&mut self, keyword: &str) {
        let keyword = keyword.to_lowercase();
        if !keyword.is_empty() && !self.keywords.contains(&keyword) {
            self.keywords.push(keyword);
        }
    }

    pub fn merge(&mut self, other: &ScanDatabase) {
        self.exact_hashes.extend(other.exact_hashes.iter().copied());
        self.perceptual_hashes
            .extend(other.perceptual_hashes.iter().copied());
        for k in &other.keywords {
            self.add_keyword(k);
        }
    }

    pub fn rule_counts(&self) -> (usize, usize, usize) {
        (
            self.exact_hashes.len(),
            self.perceptual_hashes.len(),
            self.keywords.len(),
        )
    }

    /// Writes the labeled-section text form.
    pub fn save(&self, path: &Path) -> Result<(), CssError> {
        let mut out = String::from("# scan database\n[exact]\n");
        let mut exact: Vec<String> = self
            .exact_hashes
            .iter()
            .map(|h| h.iter().map(|b| format!("{b:02x}")).collect())
            .collect();
        exact.sort();
        for line in exact {
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("[perceptual]\n");
        let mut perceptual: Vec<u64> = self.perceptual_hashes.iter().copied().collect();
        perceptual.sort_unstable();
        for h in perceptual {
            out.push_str(&format!("{h:016x}\n"));
        }
        out.push_str("[keywords]\n");
        for k in &self.keywords {
            out.push_str(k);
            out.push('\n');
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    /// Reads the labeled-section text form: `[exact]` 64-digit hex digests,
    /// `[perceptual]` 16-digit hex hashes, `[keywords]` one per line. Blank
    /// lines and `#` comments are ignored.
    pub fn load(path: &Path) -> Result<ScanDatabase, CssError> {
        let text = std::fs::read_to_string(path)?;
        let mut db = ScanDatabase::new();
        let mut section: Option<&str> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line {
                "[exact]" => section = Some("exact"),
                "[perceptual]" => section = Some("perceptual"),
                "[keywords]" => section = Some("keywords"),
                entry => match section {
                    Some("exact") => {
                        let bytes = crate::armor::decode_strict(entry).map_err(|e| {
                            CssError::DatabaseFormat(format!("line {}: {e}", lineno + 1))
                        })?;
                        let digest: [u8; 32] = bytes.try_into().map_err(|_| {
                            CssError::DatabaseFormat(format!(
                                "line {}: exact digest must be 32 bytes",
                                lineno + 1
                            ))
                        })?;
                        db.add_exact_digest(digest);
                    }
                    Some("perceptual") => {
                        let hash = u64::from_str_radix(entry, 16).map_err(|e| {
                            CssError::DatabaseFormat(format!("line {}: {e}", lineno + 1))
                        })?;
                        db.add_perceptual_hash(hash);
                    }
                    Some("keywords") => db.add_keyword(entry),
                    _ => {
                        return Err(CssError::DatabaseFormat(format!(
                            "line {}: entry before any section header",
                            lineno + 1
                        )))
                    }
                },
            }
        }
        Ok(db)
    }
}

/// The endpoint check. Exact digests apply to everything; the perceptual
/// rule applies to image payloads that parse as PGM (anything else skips
/// it); keywords apply to text payloads, case-insensitively.
pub fn scan(db: &ScanDatabase, media: MediaType, payload: &[u8]) -> ScanVerdict {
    debug_assert!(!payload.is_empty(), "scanning an empty payload");

    let digest: [u8; 32] = Sha256::digest(payload).into();
    if db.exact_hashes.contains(&digest) {
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        return ScanVerdict::Flagged {
            reason: format!("exact hash {hex}..."),
        };
    }

    if media == MediaType::Image {
        if let Ok(img) = GrayImage::from_pgm_bytes(payload) {
            if let Ok(hash) = dhash(&img) {
                let best = db
                    .perceptual_hashes
                    .iter()
                    .map(|&known| (dhash_distance(hash, known), known))
                    .min();
                if let Some((distance, known)) = best {
                    if distance <= DHASH_MATCH_THRESHOLD {
                        return ScanVerdict::Flagged {
                            reason: format!("perceptual hash {known:016x} at distance {distance}"),
                        };
                    }
                }
            }
        }
    }

    if media == MediaType::Text {
        let text = String::from_utf8_lossy(payload).to_lowercase();
        for keyword in &db.keywords {
            if text.contains(keyword.as_str()) {
                return ScanVerdict::Flagged {
                    reason: format!("keyword {keyword:?}"),
                };
            }
        }
    }

    ScanVerdict::Clean
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_hash_flags_any_media() {
        let mut db = ScanDatabase::new();
        db.add_exact_payload(b"known bad bytes");
        for media in MediaType::ALL {
            let verdict = scan(&db, media, b"known bad bytes");
            match verdict {
                ScanVerdict::Flagged { reason } => assert!(reason.starts_with("exact hash")),
                ScanVerdict::Clean => panic!("expected flag for {media}"),
            }
        }
        assert_eq!(scan(&db, MediaType::Text, b"other bytes"), ScanVerdict::Clean);
    }

    #[test]
    fn keyword_flags_text_only() {
        let mut db = ScanDatabase::new();
        db.add_keyword("RUMOR");
        assert!(scan(&db, MediaType::Text, b"the rumor spreads").is_flagged());
        assert!(scan(&db, MediaType::Text, b"The RuMoR spreads").is_flagged());
        assert!(!scan(&db, MediaType::Audio, b"the rumor spreads").is_flagged());
        assert!(!scan(&db, MediaType::Text, b"nothing to see").is_flagged());
    }

    #[test]
    fn armored_form_of_flagged_text_scans_clean() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(3);
        let key = crate::crypto::SecretKey::generate(&mut rng);

        let mut db = ScanDatabase::new();
        let plaintext = b"the rumor spreads";
        db.add_exact_payload(plaintext);
        db.add_keyword("rumor");
        assert!(scan(&db, MediaType::Text, plaintext).is_flagged());

        let env = crate::crypto::encrypt(plaintext, MediaType::Text, &key, &mut rng);
        let armored = crate::armor::encode(&env.to_bytes());
        assert_eq!(
            scan(&db, MediaType::Text, armored.as_str().as_bytes()),
            ScanVerdict::Clean
        );
    }

    #[test]
    fn perceptual_rule_matches_similar_images() {
        let mut base = GrayImage::filled(90, 80, 100);
        for y in 0..80 {
            for x in 0..90 {
                base.set(x, y, (50 + (x + y) % 150) as u8);
            }
        }
        let mut db = ScanDatabase::new();
        db.add_perceptual_image(&base).unwrap();

        // same image, one pixel brightened: within threshold
        let mut similar = base.clone();
        similar.set(10, 10, 255);
        let verdict = scan(&db, MediaType::Image, &similar.to_pgm_bytes());
        assert!(verdict.is_flagged());

        // non-PGM bytes skip the perceptual rule entirely
        assert_eq!(
            scan(&db, MediaType::Image, b"not an image at all"),
            ScanVerdict::Clean
        );
    }

    #[test]
    fn database_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.db");

        let mut db = ScanDatabase::new();
        db.add_exact_payload(b"payload one");
        db.add_exact_payload(b"payload two");
        db.add_perceptual_hash(0xDEAD_BEEF_0123_4567);
        db.add_keyword("rumor");
        db.add_keyword("harbor");
        db.save(&path).unwrap();

        let loaded = ScanDatabase::load(&path).unwrap();
        assert_eq!(loaded, db);
    }

    #[test]
    fn database_file_rejects_malformed_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.db");
        std::fs::write(&path, "[exact]\nzz\n").unwrap();
        assert!(matches!(
            ScanDatabase::load(&path),
            Err(CssError::DatabaseFormat(_))
        ));
        std::fs::write(&path, "orphan line\n").unwrap();
        assert!(matches!(
            ScanDatabase::load(&path),
            Err(CssError::DatabaseFormat(_))
        ));
    }
}
