//! Row-major 8-bit grayscale images and the binary PGM (P5) form they are
//! exchanged in. 0 is black, 255 is white.

use rand::Rng;

use super::OcrError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Solid image of the given dimensions.
    pub fn filled(width: usize, height: usize, value: u8) -> GrayImage {
        GrayImage {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<u8>) -> GrayImage {
        assert_eq!(pixels.len(), width * height, "pixel buffer size mismatch");
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        debug_assert!(x < self.width && y < self.height);
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        debug_assert!(x < self.width && y < self.height);
        self.pixels[y * self.width + x] = value;
    }

    /// Serializes as binary PGM (P5), maxval 255.
    pub fn to_pgm_bytes(&self) -> Vec<u8> {
        let header = format!("P5\n{} {}\n255\n", self.width, self.height);
        let mut out = header.into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    /// Parses binary PGM (P5) with maxval up to 255. Whitespace and `#`
    /// comments in the header are handled per the format.
    pub fn from_pgm_bytes(bytes: &[u8]) -> Result<GrayImage, OcrError> {
        let malformed = |msg: &str| OcrError::MalformedImage(msg.to_string());

        let mut pos = 0usize;
        let mut next_token = |bytes: &[u8]| -> Result<Vec<u8>, OcrError> {
            // skip whitespace and comments
            loop {
                while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b'#' {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                } else {
                    break;
                }
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                Err(OcrError::MalformedImage("truncated header".to_string()))
            } else {
                Ok(bytes[start..pos].to_vec())
            }
        };

        if next_token(bytes)? != b"P5" {
            return Err(malformed("not a binary PGM (P5) file"));
        }
        let parse_int = |tok: Vec<u8>| -> Result<usize, OcrError> {
            std::str::from_utf8(&tok)
                .ok()
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| OcrError::MalformedImage("bad header integer".to_string()))
        };
        let width = parse_int(next_token(bytes)?)?;
        let height = parse_int(next_token(bytes)?)?;
        let maxval = parse_int(next_token(bytes)?)?;
        if maxval == 0 || maxval > 255 {
            return Err(malformed("unsupported maxval"));
        }
        // exactly one whitespace byte separates the header from the raster
        if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
            return Err(malformed("missing raster separator"));
        }
        pos += 1;
        let expected = width
            .checked_mul(height)
            .ok_or_else(|| malformed("image dimensions overflow"))?;
        let raster = &bytes[pos..];
        if raster.len() < expected {
            return Err(malformed("raster shorter than header promises"));
        }
        Ok(GrayImage {
            width,
            height,
            pixels: raster[..expected].to_vec(),
        })
    }
}

/// Inverts each pixel independently with probability `p`. The noise model
/// used for recognizer robustness measurements.
pub fn flip_pixels<R: Rng + ?Sized>(img: &GrayImage, p: f64, rng: &mut R) -> GrayImage {
    assert!((0.0..=1.0).contains(&p), "flip probability out of range");
    let pixels = img
        .pixels()
        .iter()
        .map(|&v| if rng.random_bool(p) { 255 - v } else { v })
        .collect();
    GrayImage {
        width: img.width,
        height: img.height,
        pixels,
    }
}
