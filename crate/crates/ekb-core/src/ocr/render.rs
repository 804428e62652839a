//! Renders armored text to a bitmap the way a screen would show it: black
//! glyphs on white, fixed-pitch, wrapped at a column limit.
//!
//! Layout rule, in cells (one cell is `scale` x `scale` pixels): each
//! character occupies 5 columns plus 1 spacing column, with no spacing
//! after the last character of a line, so a line of `n` characters is
//! `6n - 1` cells wide (1 cell when empty). Lines are 7 cells tall with a
//! 1-cell gap, so `r` lines are `8r - 1` cells tall. A space renders as a
//! blank character cell; a newline forces a line break; wrapping breaks
//! after `wrap_width` characters.

use crate::armor::ArmoredMessage;

use super::font::{GlyphFont, GLYPH_HEIGHT, GLYPH_WIDTH};
use super::image::GrayImage;

pub(super) const CELL_ADVANCE: usize = GLYPH_WIDTH + 1;
pub(super) const LINE_ADVANCE: usize = GLYPH_HEIGHT + 1;

pub(super) fn layout_lines(text: &str, wrap_width: usize) -> Vec<Vec<char>> {
    assert!(wrap_width >= 1, "wrap width must be positive");
    let mut lines: Vec<Vec<char>> = vec![Vec::new()];
    for c in text.chars() {
        if c == '\n' {
            lines.push(Vec::new());
            continue;
        }
        if lines.last().unwrap().len() == wrap_width {
            lines.push(Vec::new());
        }
        lines.last_mut().unwrap().push(c);
    }
    lines
}

/// Deterministic bitmap of the armored text. Dimensions follow the layout
/// rule exactly, so they are a function of nothing but the text shape,
/// `scale`, and `wrap_width`.
pub fn render_armored(
    text: &ArmoredMessage,
    font: &GlyphFont,
    scale: usize,
    wrap_width: usize,
) -> GrayImage {
    assert!(scale >= 1, "scale must be positive");
    let lines = layout_lines(text.as_str(), wrap_width);

    let max_chars = lines.iter().map(Vec::len).max().unwrap_or(0);
    let width_cells = if max_chars == 0 {
        1
    } else {
        CELL_ADVANCE * max_chars - 1
    };
    let height_cells = LINE_ADVANCE * lines.len() - 1;

    let mut img = GrayImage::filled(width_cells * scale, height_cells * scale, 255);
    for (row, line) in lines.iter().enumerate() {
        for (col, &c) in line.iter().enumerate() {
            let Some(glyph) = GlyphFont::index_of(c) else {
                continue; // spaces and anything non-hex stay blank
            };
            let x0 = col * CELL_ADVANCE * scale;
            let y0 = row * LINE_ADVANCE * scale;
            for gy in 0..GLYPH_HEIGHT {
                for gx in 0..GLYPH_WIDTH {
                    if font.pixel(glyph, gx, gy) {
                        for dy in 0..scale {
                            for dx in 0..scale {
                                img.set(x0 + gx * scale + dx, y0 + gy * scale + dy, 0);
                            }
                        }
                    }
                }
            }
        }
    }
    img
}
