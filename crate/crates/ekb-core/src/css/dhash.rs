//! 64-bit difference hash over a 9x8 pooled luminance grid.
//!
//! Bit (r, c) records a strict luminance decrease between horizontally
//! adjacent cells, packed row-major. Visually similar images land within a
//! small Hamming distance of each other; a one-pixel change can move at
//! most the two comparisons touching its pooled cell.

use crate::ocr::GrayImage;

use super::CssError;

const GRID_COLS: usize = 9;
const GRID_ROWS: usize = 8;

pub fn dhash(img: &GrayImage) -> Result<u64, CssError> {
    if img.width() < 2 || img.height() < 1 {
        return Err(CssError::ImageTooSmall);
    }

    // average-pool into a 9x8 grid; every cell covers at least one pixel
    let mut cells = [[0f64; GRID_COLS]; GRID_ROWS];
    for (r, row) in cells.iter_mut().enumerate() {
        let y0 = r * img.height() / GRID_ROWS;
        let y1 = ((r + 1) * img.height() / GRID_ROWS).max(y0 + 1);
        for (c, cell) in row.iter_mut().enumerate() {
            let x0 = c * img.width() / GRID_COLS;
            let x1 = ((c + 1) * img.width() / GRID_COLS).max(x0 + 1);
            let mut sum = 0u64;
            for y in y0..y1 {
                for x in x0..x1 {
                    sum += u64::from(img.get(x, y));
                }
            }
            *cell = sum as f64 / ((y1 - y0) * (x1 - x0)) as f64;
        }
    }

    let mut hash = 0u64;
    for r in 0..GRID_ROWS {
        for c in 0..GRID_COLS - 1 {
            if cells[r][c] > cells[r][c + 1] {
                hash |= 1 << (r * 8 + c);
            }
        }
    }
    Ok(hash)
}

pub fn dhash_distance(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}
