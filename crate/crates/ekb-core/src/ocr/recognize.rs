//! Whitelist-constrained template matching over the render grid.

use super::font::{GlyphFont, GlyphRows, GLYPH_HEIGHT, GLYPH_WIDTH, HEX_CHARSET};
use super::image::GrayImage;
use super::render::{CELL_ADVANCE, LINE_ADVANCE};

const TEMPLATE_BITS: usize = GLYPH_WIDTH * GLYPH_HEIGHT;
const BINARIZE_THRESHOLD: u32 = 128;

/// Recognized text plus one confidence score per emitted character
/// (1 − hamming/35 for glyphs; blanks emitted as spaces score 1.0).
#[derive(Debug, Clone, PartialEq)]
pub struct Recognition {
    pub text: String,
    pub scores: Vec<f64>,
}

/// A matcher configured for a particular render scale. The glyph grid is a
/// function of the scale alone, so recognition is segmentation-free: each
/// cell is binarized and classified as the nearest template by Hamming
/// distance, always producing a whitelist character.
#[derive(Debug, Clone)]
pub struct Recognizer {
    font: GlyphFont,
    scale: usize,
}

impl Recognizer {
    pub fn new(font: GlyphFont, scale: usize) -> Recognizer {
        assert!(scale >= 1, "scale must be positive");
        Recognizer { font, scale }
    }

    pub fn font(&self) -> &GlyphFont {
        &self.font
    }

    pub fn scale(&self) -> usize {
        self.scale
    }

    /// Reads every glyph cell in the image, row-major. Low-confidence cells
    /// are still emitted with their scores; fully blank cells inside a line
    /// come out as single spaces, trailing blanks are dropped, and rows are
    /// concatenated without separators so wrapped text reads back as one
    /// piece.
    pub fn recognize_hex(&self, img: &GrayImage) -> Recognition {
        let s = self.scale;
        let mut text = String::new();
        let mut scores = Vec::new();

        let mut row = 0usize;
        while (row * LINE_ADVANCE + GLYPH_HEIGHT) * s <= img.height() {
            let mut cells: Vec<Option<(char, f64)>> = Vec::new();
            let mut col = 0usize;
            while (col * CELL_ADVANCE + GLYPH_WIDTH) * s <= img.width() {
                cells.push(self.classify_cell(img, col, row));
                col += 1;
            }
            while matches!(cells.last(), Some(None)) {
                cells.pop();
            }
            for cell in cells {
                match cell {
                    Some((c, score)) => {
                        text.push(c);
                        scores.push(score);
                    }
                    None => {
                        text.push(' ');
                        scores.push(1.0);
                    }
                }
            }
            row += 1;
        }
        Recognition { text, scores }
    }

    /// Binarizes one cell and matches it; `None` when the cell has no ink.
    fn classify_cell(&self, img: &GrayImage, col: usize, row: usize) -> Option<(char, f64)> {
        let s = self.scale;
        let x0 = col * CELL_ADVANCE * s;
        let y0 = row * LINE_ADVANCE * s;
        let area = (s * s) as u32;

        let mut rows: GlyphRows = [0; GLYPH_HEIGHT];
        let mut any_ink = false;
        for gy in 0..GLYPH_HEIGHT {
            for gx in 0..GLYPH_WIDTH {
                let mut sum: u32 = 0;
                for dy in 0..s {
                    for dx in 0..s {
                        sum += u32::from(img.get(x0 + gx * s + dx, y0 + gy * s + dy));
                    }
                }
                // mean < threshold means ink
                if sum < BINARIZE_THRESHOLD * area {
                    rows[gy] |= 1 << (GLYPH_WIDTH - 1 - gx);
                    any_ink = true;
                }
            }
        }
        if !any_ink {
            return None;
        }

        let mut best = 0usize;
        let mut best_distance = u32::MAX;
        for i in 0..16 {
            let t = self.font.rows(i);
            let distance: u32 = (0..GLYPH_HEIGHT)
                .map(|y| u32::from((rows[y] ^ t[y]).count_ones()))
                .sum();
            if distance < best_distance {
                best_distance = distance;
                best = i;
            }
        }
        let score = 1.0 - f64::from(best_distance) / TEMPLATE_BITS as f64;
        Some((HEX_CHARSET[best], score))
    }
}

/// Edit distance between two character sequences.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut curr = vec![0usize; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        curr[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let substitute = prev[j] + usize::from(ca != cb);
            curr[j + 1] = substitute.min(prev[j + 1] + 1).min(curr[j] + 1);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[b.len()]
}

/// Recognition accuracy as 1 − (edit distance / reference length), clamped
/// to [0, 1]. Two empty strings count as perfect.
pub fn ocr_accuracy(reference: &str, recognized: &str) -> f64 {
    let denom = reference.chars().count().max(1) as f64;
    let d = levenshtein(reference, recognized) as f64;
    (1.0 - d / denom).clamp(0.0, 1.0)
}
