//! Hiding containers in pixels and getting them back.
//!
//! Symbol `i` of the container's bit-pair stream replaces the two
//! least-significant bits of the blue channel of pixel `i`, pixels taken in
//! top-left row-major order. Red, green and the upper six bits of blue are
//! never touched. The 19-byte header occupies the first 76 pixels, so an
//! extractor can learn the body length before reading further.

use crate::bmp::{Image, Rgb};
use crate::error::{Error, Result};
use crate::payload::{
    bitpairs_to_bytes, bytes_to_bitpairs, decode_payload, encode_payload, ContainerHeader,
    SecretKey, HEADER_LEN,
};

pub const MIN_WIDTH: u32 = 150;
pub const MIN_HEIGHT: u32 = 112;

const BLUE: usize = 2;
const PAIR_MASK: u8 = 0b11;
/// Pixels carrying one container byte.
pub const PIXELS_PER_BYTE: usize = 4;

/// What an image can hold at two bits per pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityReport {
    pub pixels_available: usize,
    /// Whole container bytes: `floor(pixels / 4)`.
    pub gross_bytes: usize,
    /// Room left for the compressed body after the container header.
    pub net_bytes: usize,
}

pub fn gross_capacity(img: &Image) -> CapacityReport {
    let pixels = img.pixel_count();
    let gross = pixels / PIXELS_PER_BYTE;
    CapacityReport {
        pixels_available: pixels,
        gross_bytes: gross,
        net_bytes: gross.saturating_sub(HEADER_LEN),
    }
}

/// Rejects images below the 150x112 working minimum.
pub fn check_dimensions(img: &Image) -> Result<()> {
    if img.width() < MIN_WIDTH || img.height() < MIN_HEIGHT {
        return Err(Error::ImageTooSmall {
            width: img.width(),
            height: img.height(),
            min_width: MIN_WIDTH,
            min_height: MIN_HEIGHT,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct EmbedRequest<'a> {
    pub cover: &'a Image,
    pub key: SecretKey,
    pub message: &'a [u8],
}

/// Compresses the message, binds it to the key and hides the container.
pub fn embed(req: &EmbedRequest<'_>) -> Result<Image> {
    check_dimensions(req.cover)?;
    let container = encode_payload(req.message, &req.key);
    embed_container(req.cover, &container)
}

/// Writes an already serialized container into a copy of `cover`.
pub fn embed_container(cover: &Image, container: &[u8]) -> Result<Image> {
    check_dimensions(cover)?;
    let capacity = gross_capacity(cover);
    if container.len() > capacity.gross_bytes {
        return Err(Error::CapacityExceeded {
            needed: container.len(),
            available: capacity.gross_bytes,
        });
    }
    let mut stego = cover.clone();
    let symbols = bytes_to_bitpairs(container);
    for (pixel, symbol) in stego.pixels_mut().iter_mut().zip(symbols) {
        pixel[BLUE] = (pixel[BLUE] & !PAIR_MASK) | symbol;
    }
    Ok(stego)
}

fn read_bytes(pixels: &[Rgb]) -> Vec<u8> {
    let pairs: Vec<u8> = pixels.iter().map(|p| p[BLUE] & PAIR_MASK).collect();
    bitpairs_to_bytes(&pairs).expect("caller reads whole bytes")
}

/// Reads the container header from the first 76 pixels without checking
/// the key or version.
pub fn read_header(stego: &Image) -> Result<ContainerHeader> {
    check_dimensions(stego)?;
    let header_pixels = HEADER_LEN * PIXELS_PER_BYTE;
    ContainerHeader::parse(&read_bytes(&stego.pixels()[..header_pixels]))
}

/// Recovers the raw container bytes after checking magic, version and key.
pub fn extract_container(stego: &Image, key: &SecretKey) -> Result<Vec<u8>> {
    let header = read_header(stego)?;
    header.verify(key)?;

    let needed = header.container_len() * PIXELS_PER_BYTE;
    if needed > stego.pixel_count() {
        return Err(Error::TruncatedStream {
            needed: header.container_len(),
            available: gross_capacity(stego).gross_bytes,
        });
    }
    Ok(read_bytes(&stego.pixels()[..needed]))
}

/// Recovers the message hidden with `key`.
pub fn extract(stego: &Image, key: &SecretKey) -> Result<Vec<u8>> {
    let container = extract_container(stego, key)?;
    decode_payload(&container, key)
}

/// Largest absolute per-channel difference between two images.
pub fn max_distortion(cover: &Image, stego: &Image) -> Result<u8> {
    cover.same_dimensions(stego)?;
    Ok(cover
        .pixels()
        .iter()
        .zip(stego.pixels())
        .flat_map(|(a, b)| (0..3).map(move |c| a[c].abs_diff(b[c])))
        .max()
        .unwrap_or(0))
}
