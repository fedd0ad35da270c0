//! Minimal netpbm greymap writer.
//!
//! Small images are written as plain-text `P2`, larger ones as binary `P5`,
//! so golden files stay readable where that is practical.

/// Images with at most this many pixels are written as `P2`.
pub const PLAIN_LIMIT: usize = 10_000;

/// A greyscale raster, stored row-major with the top row first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreyImage {
    pub width: u32,
    pub height: u32,
    pub maxval: u8,
    pub pixels: Vec<u8>,
}

impl GreyImage {
    pub fn new(width: u32, height: u32, maxval: u8, pixels: Vec<u8>) -> Self {
        assert_eq!(
            pixels.len(),
            width as usize * height as usize,
            "pixel count must match dimensions"
        );
        assert!(maxval > 0, "maxval must be positive");
        GreyImage {
            width,
            height,
            maxval,
            pixels,
        }
    }

    pub fn pixel(&self, col: u32, row: u32) -> u8 {
        self.pixels[row as usize * self.width as usize + col as usize]
    }

    /// Encodes as `P2` or `P5` depending on size.
    pub fn encode(&self) -> Vec<u8> {
        if self.pixels.len() <= PLAIN_LIMIT {
            self.encode_plain().into_bytes()
        } else {
            self.encode_binary()
        }
    }

    pub fn encode_plain(&self) -> String {
        let mut out = format!("P2\n{} {}\n{}\n", self.width, self.height, self.maxval);
        for row in self.pixels.chunks(self.width.max(1) as usize) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn encode_binary(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n{}\n", self.width, self.height, self.maxval).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Evenly spaced grey levels for `n` symbols: the first is black, the last
/// white.
pub fn grey_levels(n: usize) -> Vec<u8> {
    match n {
        0 => Vec::new(),
        1 => vec![0],
        _ => (0..n).map(|i| (i * 255 / (n - 1)) as u8).collect(),
    }
}
