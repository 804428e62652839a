//! Frame acquisition boundary.
//!
//! The file-backed source models a capture service that keeps overwriting a
//! single file with the latest frame: every call re-reads the path, so
//! whatever wrote last wins.

use std::path::{Path, PathBuf};

use super::image::GrayImage;
use super::OcrError;

pub trait CaptureSource {
    fn latest_frame(&mut self) -> Result<GrayImage, OcrError>;
}

/// Reads the current frame from a PGM file on every call.
#[derive(Debug, Clone)]
pub struct FileCaptureSource {
    path: PathBuf,
}

impl FileCaptureSource {
    pub fn new<P: AsRef<Path>>(path: P) -> FileCaptureSource {
        FileCaptureSource {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

impl CaptureSource for FileCaptureSource {
    fn latest_frame(&mut self) -> Result<GrayImage, OcrError> {
        let bytes = std::fs::read(&self.path)
            .map_err(|e| OcrError::FrameUnavailable(format!("{}: {e}", self.path.display())))?;
        GrayImage::from_pgm_bytes(&bytes)
    }
}
