//! Exit-code policy and the machine-readable error line.
//!
//! Codes: 0 success/match, 1 usage or malformed input, 2 crypto and key
//! management, 3 verification mismatch, 4 delivery blocked by a scanner,
//! 5 file and store I/O. Every failure also prints one JSON line on
//! standard error.

use ekb_core::analysis::AnalysisError;
use ekb_core::armor::ArmorError;
use ekb_core::crypto::CryptoError;
use ekb_core::css::CssError;
use ekb_core::keyring::KeyringError;
use ekb_core::ocr::OcrError;

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CRYPTO: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BLOCKED: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, kind: &str, message: impl Into<String>) -> CliError {
        CliError {
            code,
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn usage(kind: &str, message: impl Into<String>) -> CliError {
        CliError::new(EXIT_USAGE, kind, message)
    }

    pub fn io(message: impl Into<String>) -> CliError {
        CliError::new(EXIT_IO, "Io", message)
    }

    pub fn verify(kind: &str, message: impl Into<String>) -> CliError {
        CliError::new(EXIT_VERIFY, kind, message)
    }

    /// The one line scripts can rely on.
    pub fn emit(&self) {
        let line = serde_json::json!({
            "error": { "code": self.code, "kind": self.kind, "message": self.message }
        });
        eprintln!("{line}");
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::io(e.to_string())
    }
}

impl From<CryptoError> for CliError {
    fn from(e: CryptoError) -> CliError {
        let kind = match &e {
            CryptoError::BadMagic => "BadMagic",
            CryptoError::BadLength => "BadLength",
            CryptoError::BadPadding => "BadPadding",
            CryptoError::UnknownMediaTag(_) => "UnknownMediaTag",
            CryptoError::InvalidKey(_) => "InvalidKey",
        };
        CliError::new(EXIT_CRYPTO, kind, e.to_string())
    }
}

impl From<ArmorError> for CliError {
    fn from(e: ArmorError) -> CliError {
        let kind = match &e {
            ArmorError::OddLength => "OddLength",
            ArmorError::IllegalCharacter { .. } => "IllegalCharacter",
        };
        CliError::usage(kind, e.to_string())
    }
}

impl From<KeyringError> for CliError {
    fn from(e: KeyringError) -> CliError {
        let (code, kind) = match &e {
            KeyringError::CorruptWordList(_) => (EXIT_IO, "CorruptWordList"),
            KeyringError::UnknownContact(_) => (EXIT_CRYPTO, "UnknownContact"),
            KeyringError::UnverifiedContact(_) => (EXIT_VERIFY, "UnverifiedContact"),
            KeyringError::DuplicateContact(_) => (EXIT_CRYPTO, "DuplicateContact"),
            KeyringError::MissingSharedKey(_) => (EXIT_CRYPTO, "MissingSharedKey"),
            KeyringError::StoreCorrupt(_) => (EXIT_IO, "StoreCorrupt"),
            KeyringError::TranscriptionFailed(_) => (EXIT_USAGE, "TranscriptionFailed"),
            KeyringError::Io(_) => (EXIT_IO, "Io"),
        };
        CliError::new(code, kind, e.to_string())
    }
}

impl From<OcrError> for CliError {
    fn from(e: OcrError) -> CliError {
        match e {
            OcrError::FrameUnavailable(_) => CliError::new(EXIT_IO, "FrameUnavailable", e.to_string()),
            OcrError::MalformedImage(_) => CliError::new(EXIT_IO, "MalformedImage", e.to_string()),
            OcrError::NoCiphertextFound => {
                CliError::new(EXIT_CRYPTO, "NoCiphertextFound", e.to_string())
            }
            OcrError::Crypto(inner) => inner.into(),
        }
    }
}

impl From<CssError> for CliError {
    fn from(e: CssError) -> CliError {
        match &e {
            CssError::ConfigInvalid(_) => CliError::usage("ConfigInvalid", e.to_string()),
            CssError::ImageTooSmall => CliError::usage("ImageTooSmall", e.to_string()),
            CssError::DatabaseFormat(_) => CliError::new(EXIT_IO, "DatabaseFormat", e.to_string()),
            CssError::Io(_) => CliError::io(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> CliError {
        let kind = match &e {
            AnalysisError::InvalidParams(_) => "InvalidParams",
            AnalysisError::ParamsNotDivisible => "ParamsNotDivisible",
            AnalysisError::TooLargeForExact => "TooLargeForExact",
        };
        CliError::usage(kind, e.to_string())
    }
}
