pub mod aes_oracle;

use rand::RngCore;

/// Deterministic byte source for driving IV selection in tests.
pub struct FixedBytesRng {
    bytes: Vec<u8>,
    pos: usize,
}

impl FixedBytesRng {
    pub fn new(bytes: Vec<u8>) -> FixedBytesRng {
        FixedBytesRng { bytes, pos: 0 }
    }
}

impl RngCore for FixedBytesRng {
    fn next_u32(&mut self) -> u32 {
        let mut buf = [0u8; 4];
        self.fill_bytes(&mut buf);
        u32::from_le_bytes(buf)
    }

    fn next_u64(&mut self) -> u64 {
        let mut buf = [0u8; 8];
        self.fill_bytes(&mut buf);
        u64::from_le_bytes(buf)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for d in dest.iter_mut() {
            *d = self.bytes[self.pos];
            self.pos += 1;
        }
    }
}

pub fn unhex(s: &str) -> Vec<u8> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap())
        .collect()
}
