//! Contact persistence: names, public keys, verification state, shared keys.
//!
//! The on-disk form is a single human-inspectable JSON document with a
//! top-level version, keys hex-encoded. A shared key may only be attached
//! to a contact whose fingerprint has been verified; the loader enforces
//! the same rule so a hand-edited file cannot smuggle one in.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::KeyringError;
use crate::crypto::SecretKey;

#[derive(Debug, Clone)]
pub struct Contact {
    pub name: String,
    pub public_key: Vec<u8>,
    pub fingerprint_verified: bool,
    pub speaker_attested: bool,
    shared_key: Option<SecretKey>,
}

impl Contact {
    pub fn shared_key(&self) -> Option<&SecretKey> {
        self.shared_key.as_ref()
    }
}

/// In-memory contact set. Single writer; reads are free once loaded.
#[derive(Debug, Default)]
pub struct ContactStore {
    contacts: Vec<Contact>,
}

const STORE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct StoreFile {
    version: u32,
    contacts: Vec<ContactRecord>,
}

#[derive(Serialize, Deserialize)]
struct ContactRecord {
    name: String,
    public_key_hex: String,
    fingerprint_verified: bool,
    speaker_attested: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    shared_key_hex: Option<String>,
}

impl ContactStore {
    pub fn new() -> ContactStore {
        ContactStore::default()
    }

    pub fn contacts(&self) -> &[Contact] {
        &self.contacts
    }

    pub fn get(&self, name: &str) -> Result<&Contact, KeyringError> {
        self.contacts
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| KeyringError::UnknownContact(name.to_string()))
    }

    fn get_mut(&mut self, name: &str) -> Result<&mut Contact, KeyringError> {
        self.contacts
            .iter_mut()
            .find(|c| c.name == name)
            .ok_or_else(|| KeyringError::UnknownContact(name.to_string()))
    }

    pub fn add_contact(&mut self, name: &str, public_key: Vec<u8>) -> Result<(), KeyringError> {
        if self.contacts.iter().any(|c| c.name == name) {
            return Err(KeyringError::DuplicateContact(name.to_string()));
        }
        self.contacts.push(Contact {
            name: name.to_string(),
            public_key,
            fingerprint_verified: false,
            speaker_attested: false,
            shared_key: None,
        });
        Ok(())
    }

    /// Records a successful fingerprint verification, optionally together
    /// with the operator's judgment that the voice belonged to the owner.
    pub fn mark_verified(&mut self, name: &str, speaker_attested: bool) -> Result<(), KeyringError> {
        let contact = self.get_mut(name)?;
        contact.fingerprint_verified = true;
        contact.speaker_attested = speaker_attested;
        Ok(())
    }

    /// Attaches a shared key. Refused until the contact's fingerprint has
    /// been verified.
    pub fn set_shared_key(&mut self, name: &str, key: SecretKey) -> Result<(), KeyringError> {
        let contact = self.get_mut(name)?;
        if !contact.fingerprint_verified {
            return Err(KeyringError::UnverifiedContact(name.to_string()));
        }
        contact.shared_key = Some(key);
        Ok(())
    }

    pub fn get_shared_key(&self, name: &str) -> Result<&SecretKey, KeyringError> {
        self.get(name)?
            .shared_key
            .as_ref()
            .ok_or_else(|| KeyringError::MissingSharedKey(name.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<(), KeyringError> {
        let file = StoreFile {
            version: STORE_VERSION,
            contacts: self
                .contacts
                .iter()
                .map(|c| ContactRecord {
                    name: c.name.clone(),
                    public_key_hex: c.public_key.iter().map(|b| format!("{b:02x}")).collect(),
                    fingerprint_verified: c.fingerprint_verified,
                    speaker_attested: c.speaker_attested,
                    shared_key_hex: c.shared_key.as_ref().map(SecretKey::to_hex),
                })
                .collect(),
        };
        let json = serde_json::to_string_pretty(&file)
            .map_err(|e| KeyringError::StoreCorrupt(e.to_string()))?;
        std::fs::write(path, json + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<ContactStore, KeyringError> {
        let text = std::fs::read_to_string(path)?;
        let file: StoreFile = serde_json::from_str(&text)
            .map_err(|e| KeyringError::StoreCorrupt(format!("bad store document: {e}")))?;
        if file.version != STORE_VERSION {
            return Err(KeyringError::StoreCorrupt(format!(
                "unsupported store version {}",
                file.version
            )));
        }
        let mut store = ContactStore::new();
        for record in file.contacts {
            let public_key = crate::armor::decode_strict(&record.public_key_hex)
                .map_err(|e| KeyringError::StoreCorrupt(format!("bad public key hex: {e}")))?;
            let shared_key = record
                .shared_key_hex
                .as_deref()
                .map(SecretKey::from_hex)
                .transpose()
                .map_err(|e| KeyringError::StoreCorrupt(format!("bad shared key hex: {e}")))?;
            if shared_key.is_some() && !record.fingerprint_verified {
                return Err(KeyringError::StoreCorrupt(format!(
                    "contact {:?} has a shared key but no verified fingerprint",
                    record.name
                )));
            }
            if store.contacts.iter().any(|c| c.name == record.name) {
                return Err(KeyringError::StoreCorrupt(format!(
                    "duplicate contact {:?}",
                    record.name
                )));
            }
            store.contacts.push(Contact {
                name: record.name,
                public_key,
                fingerprint_verified: record.fingerprint_verified,
                speaker_attested: record.speaker_attested,
                shared_key,
            });
        }
        Ok(store)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn key(seed: u64) -> SecretKey {
        SecretKey::generate(&mut ChaCha12Rng::seed_from_u64(seed))
    }

    #[test]
    fn set_key_requires_verification() {
        let mut store = ContactStore::new();
        store.add_contact("bob", vec![1, 2, 3]).unwrap();
        assert!(matches!(
            store.set_shared_key("bob", key(0)),
            Err(KeyringError::UnverifiedContact(_))
        ));
        store.mark_verified("bob", true).unwrap();
        store.set_shared_key("bob", key(0)).unwrap();
        assert_eq!(store.get_shared_key("bob").unwrap(), &key(0));
    }

    #[test]
    fn unknown_and_duplicate_contacts() {
        let mut store = ContactStore::new();
        assert!(matches!(
            store.get_shared_key("nobody"),
            Err(KeyringError::UnknownContact(_))
        ));
        store.add_contact("alice", vec![7]).unwrap();
        assert!(matches!(
            store.add_contact("alice", vec![8]),
            Err(KeyringError::DuplicateContact(_))
        ));
        assert!(matches!(
            store.get_shared_key("alice"),
            Err(KeyringError::MissingSharedKey(_))
        ));
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("contacts.json");

        let mut store = ContactStore::new();
        store.add_contact("alice", vec![0xAA, 0xBB]).unwrap();
        store.add_contact("bob", vec![0x01]).unwrap();
        store.mark_verified("bob", true).unwrap();
        store.set_shared_key("bob", key(3)).unwrap();
        store.save(&path).unwrap();

        let loaded = ContactStore::load(&path).unwrap();
        assert_eq!(loaded.contacts().len(), 2);
        let alice = loaded.get("alice").unwrap();
        assert_eq!(alice.public_key, vec![0xAA, 0xBB]);
        assert!(!alice.fingerprint_verified);
        assert!(alice.shared_key().is_none());
        let bob = loaded.get("bob").unwrap();
        assert!(bob.fingerprint_verified && bob.speaker_attested);
        assert_eq!(loaded.get_shared_key("bob").unwrap(), &key(3));
    }

    #[test]
    fn loader_rejects_key_on_unverified_contact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("contacts.json");
        let doc = r#"{
            "version": 1,
            "contacts": [{
                "name": "mallory",
                "public_key_hex": "00",
                "fingerprint_verified": false,
                "speaker_attested": false,
                "shared_key_hex": "000102030405060708090a0b0c0d0e0f"
            }]
        }"#;
        std::fs::write(&path, doc).unwrap();
        assert!(matches!(
            ContactStore::load(&path),
            Err(KeyringError::StoreCorrupt(_))
        ));
    }

    #[test]
    fn loader_rejects_other_versions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("contacts.json");
        std::fs::write(&path, r#"{"version": 2, "contacts": []}"#).unwrap();
        assert!(matches!(
            ContactStore::load(&path),
            Err(KeyringError::StoreCorrupt(_))
        ));
    }

    #[test]
    fn missing_file_is_io() {
        let err = ContactStore::load(Path::new("/nonexistent/contacts.json")).unwrap_err();
        assert!(matches!(err, KeyringError::Io(_)));
    }
}
