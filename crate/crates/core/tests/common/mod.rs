#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, RngCore};
use sis_stego::{Image, SecretKey};

/// 1x1, pixel (255, 0, 0). Stride 4: B G R + one pad byte.
pub const BMP_1X1: [u8; 58] = [
    0x42, 0x4D, 0x3A, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x36, 0x00, 0x00,
    0x00, // file header
    0x28, 0x00, 0x00, 0x00, // info header size
    0x01, 0x00, 0x00, 0x00, // width 1
    0x01, 0x00, 0x00, 0x00, // height 1
    0x01, 0x00, 0x18, 0x00, // planes, 24 bpp
    0x00, 0x00, 0x00, 0x00, // BI_RGB
    0x04, 0x00, 0x00, 0x00, // image size
    0x13, 0x0B, 0x00, 0x00, 0x13, 0x0B, 0x00, 0x00, // 2835 px/m
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, // colours
    0x00, 0x00, 0xFF, 0x00,
];

const fn info_header_2x2(height: u8, height_sign: u8) -> [u8; 54] {
    [
        0x42,
        0x4D,
        0x46,
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
        0x36,
        0x00,
        0x00,
        0x00,
        0x28,
        0x00,
        0x00,
        0x00, //
        0x02,
        0x00,
        0x00,
        0x00, //
        height,
        height_sign,
        height_sign,
        height_sign, //
        0x01,
        0x00,
        0x18,
        0x00, //
        0x00,
        0x00,
        0x00,
        0x00, //
        0x10,
        0x00,
        0x00,
        0x00, //
        0x13,
        0x0B,
        0x00,
        0x00,
        0x13,
        0x0B,
        0x00,
        0x00, //
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
        0x00,
    ]
}

/// Visual layout: red | green on top, blue | white at the bottom.
pub const RASTER_2X2: [[u8; 3]; 4] = [[255, 0, 0], [0, 255, 0], [0, 0, 255], [255, 255, 255]];

/// 2x2 stored bottom-up (positive height): bottom row first.
pub fn bmp_2x2_bottom_up() -> Vec<u8> {
    let mut f = info_header_2x2(0x02, 0x00).to_vec();
    f.extend_from_slice(&[0xFF, 0x00, 0x00, 0xFF, 0xFF, 0xFF, 0x00, 0x00]); // blue, white
    f.extend_from_slice(&[0x00, 0x00, 0xFF, 0x00, 0xFF, 0x00, 0x00, 0x00]); // red, green
    f
}

/// The same picture stored top-down (height -2).
pub fn bmp_2x2_top_down() -> Vec<u8> {
    let mut f = info_header_2x2(0xFE, 0xFF).to_vec();
    f.extend_from_slice(&[0x00, 0x00, 0xFF, 0x00, 0xFF, 0x00, 0x00, 0x00]); // red, green
    f.extend_from_slice(&[0xFF, 0x00, 0x00, 0xFF, 0xFF, 0xFF, 0x00, 0x00]); // blue, white
    f
}

/// 3x1 with pixels (1,2,3) (4,5,6) (7,8,9): 9 data bytes + 3 pad.
pub fn bmp_3x1() -> Vec<u8> {
    let mut f = vec![
        0x42, 0x4D, 0x42, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x36, 0x00, 0x00, 0x00, //
        0x28, 0x00, 0x00, 0x00, //
        0x03, 0x00, 0x00, 0x00, //
        0x01, 0x00, 0x00, 0x00, //
        0x01, 0x00, 0x18, 0x00, //
        0x00, 0x00, 0x00, 0x00, //
        0x0C, 0x00, 0x00, 0x00, //
        0x13, 0x0B, 0x00, 0x00, 0x13, 0x0B, 0x00, 0x00, //
        0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    ];
    f.extend_from_slice(&[3, 2, 1, 6, 5, 4, 9, 8, 7, 0, 0, 0]);
    f
}

/// 2x1 8-bit paletted file with a 2-entry colour table.
pub fn bmp_8bit_palette() -> Vec<u8> {
    let mut f = vec![
        0x42, 0x4D, 0x42, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3E, 0x00, 0x00, 0x00, //
        0x28, 0x00, 0x00, 0x00, //
        0x02, 0x00, 0x00, 0x00, //
        0x01, 0x00, 0x00, 0x00, //
        0x01, 0x00, 0x08, 0x00, //
        0x00, 0x00, 0x00, 0x00, //
        0x04, 0x00, 0x00, 0x00, //
        0x13, 0x0B, 0x00, 0x00, 0x13, 0x0B, 0x00, 0x00, //
        0x02, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    ];
    f.extend_from_slice(&[0, 0, 0, 0, 255, 255, 255, 0]); // palette
    f.extend_from_slice(&[0, 1, 0, 0]);
    f
}

/// Length of a raw DEFLATE stream holding `n` incompressible bytes in one
/// stored block: 1 header byte (BFINAL, BTYPE, padding), LEN, NLEN, data.
pub fn single_stored_block_len(n: usize) -> usize {
    1 + 2 + 2 + n
}

pub fn noise_image(rng: &mut StdRng, width: u32, height: u32) -> Image {
    let mut raw = vec![0u8; width as usize * height as usize * 3];
    rng.fill_bytes(&mut raw);
    let pixels = raw.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
    Image::new(width, height, pixels).unwrap()
}

pub fn random_bytes(rng: &mut StdRng, len: usize) -> Vec<u8> {
    let mut v = vec![0u8; len];
    rng.fill_bytes(&mut v);
    v
}

pub fn random_key(rng: &mut StdRng) -> SecretKey {
    let chars: Vec<u8> = (0..6).map(|_| rng.random_range(0x20u8..=0x7E)).collect();
    SecretKey::new(&chars).unwrap()
}

/// A key guaranteed to differ from `key`.
pub fn other_key(rng: &mut StdRng, key: &SecretKey) -> SecretKey {
    loop {
        let k = random_key(rng);
        if &k != key {
            return k;
        }
    }
}

pub fn random_text(rng: &mut StdRng, len: usize) -> Vec<u8> {
    const WORDS: [&str; 12] = [
        "the ", "secret ", "message ", "is ", "hidden ", "inside ", "an ", "image ", "pixel ",
        "blue ", "key ", "locker ",
    ];
    let mut out = Vec::with_capacity(len + 8);
    while out.len() < len {
        out.extend_from_slice(WORDS[rng.random_range(0..WORDS.len())].as_bytes());
    }
    out.truncate(len);
    out
}
