//! The sixteen 5x7 glyph templates, one per character the recognizer is
//! allowed to produce.

pub const GLYPH_WIDTH: usize = 5;
pub const GLYPH_HEIGHT: usize = 7;

/// The recognizer's whole alphabet, in template order.
pub const HEX_CHARSET: [char; 16] = [
    '0', '1', '2', '3', '4', '5', '6', '7', '8', '9', 'A', 'B', 'C', 'D', 'E', 'F',
];

/// One template: seven rows, low five bits used, bit 4 is the leftmost
/// column.
pub type GlyphRows = [u8; GLYPH_HEIGHT];

// Classic 5x7 dot-matrix shapes.
const BUILTIN: [GlyphRows; 16] = [
    // 0
    [0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110],
    // 1
    [0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110],
    // 2
    [0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111],
    // 3
    [0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110],
    // 4
    [0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010],
    // 5
    [0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110],
    // 6
    [0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110],
    // 7
    [0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b01000, 0b01000],
    // 8
    [0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110],
    // 9
    [0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100],
    // A
    [0b01110, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001],
    // B
    [0b11110, 0b10001, 0b10001, 0b11110, 0b10001, 0b10001, 0b11110],
    // C
    [0b01110, 0b10001, 0b10000, 0b10000, 0b10000, 0b10001, 0b01110],
    // D
    [0b11100, 0b10010, 0b10001, 0b10001, 0b10001, 0b10010, 0b11100],
    // E
    [0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b11111],
    // F
    [0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b10000],
];

/// The 16 binary templates the renderer stamps and the recognizer matches
/// against. Templates are pairwise distinct by construction; [`GlyphFont::new`]
/// checks that for custom sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlyphFont {
    templates: [GlyphRows; 16],
}

impl GlyphFont {
    /// The built-in dot-matrix set.
    pub fn builtin() -> GlyphFont {
        GlyphFont {
            templates: BUILTIN,
        }
    }

    /// A custom template set. Fails if any two templates are identical,
    /// since the matcher could then never tell the characters apart.
    pub fn new(templates: [GlyphRows; 16]) -> Result<GlyphFont, String> {
        for i in 0..16 {
            for j in (i + 1)..16 {
                if templates[i] == templates[j] {
                    return Err(format!(
                        "templates for {:?} and {:?} are identical",
                        HEX_CHARSET[i], HEX_CHARSET[j]
                    ));
                }
            }
        }
        Ok(GlyphFont { templates })
    }

    pub fn rows(&self, index: usize) -> &GlyphRows {
        &self.templates[index]
    }

    /// Template index for a hex character (either case).
    pub fn index_of(c: char) -> Option<usize> {
        let c = c.to_ascii_uppercase();
        HEX_CHARSET.iter().position(|&g| g == c)
    }

    /// True when the template has ink at (x, y).
    pub fn pixel(&self, index: usize, x: usize, y: usize) -> bool {
        debug_assert!(x < GLYPH_WIDTH && y < GLYPH_HEIGHT);
        (self.templates[index][y] >> (GLYPH_WIDTH - 1 - x)) & 1 == 1
    }
}
