//! Uncompressed 24-bit BMP reading and writing.
//!
//! Only `BI_RGB` files with 24 bits per pixel are accepted. Pixels are exposed
//! as a logical raster: index `y * width + x` is the visual pixel at column `x`
//! counted from the left and row `y` counted from the top, whatever the row
//! direction on disk. The writer always produces the canonical layout (54-byte
//! headers, bottom-up rows, zero row padding).

use crate::error::{Error, Result};

/// An (R, G, B) pixel.
pub type Rgb = [u8; 3];

const FILE_HEADER_LEN: usize = 14;
const INFO_HEADER_LEN: usize = 40;
/// Offset of the pixel array in files produced by [`write_bmp`].
pub const CANONICAL_PIXEL_OFFSET: usize = FILE_HEADER_LEN + INFO_HEADER_LEN;
/// 72 DPI, stored on write for both axes.
const CANONICAL_PIXELS_PER_METER: i32 = 2835;

/// A decoded 24-bit RGB raster in top-left row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: u32,
    height: u32,
    pixels: Vec<Rgb>,
}

impl Image {
    /// Builds an image, checking that the dimensions are positive, fit a BMP
    /// header, and agree with the number of pixels supplied.
    pub fn new(width: u32, height: u32, pixels: Vec<Rgb>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if width > i32::MAX as u32 || height > i32::MAX as u32 {
            return Err(Error::InvalidImage(format!(
                "dimensions {width}x{height} do not fit a BMP header"
            )));
        }
        let expected = (width as u64) * (height as u64);
        if pixels.len() as u64 != expected {
            return Err(Error::InvalidImage(format!(
                "{width}x{height} image needs {expected} pixels, got {}",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> Rgb) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    /// A single-colour image.
    pub fn filled(width: u32, height: u32, color: Rgb) -> Result<Self> {
        Self::new(width, height, vec![color; width as usize * height as usize])
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    /// Pixel at column `x`, row `y` (from the top). Panics when out of range.
    pub fn get(&self, x: u32, y: u32) -> Rgb {
        assert!(
            x < self.width && y < self.height,
            "pixel ({x}, {y}) out of range"
        );
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub(crate) fn pixels_mut(&mut self) -> &mut [Rgb] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<Rgb> {
        self.pixels
    }

    pub fn same_dimensions(&self, other: &Image) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}

/// Layout facts read from (or implied by) a BMP header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmpHeaderInfo {
    pub file_size: u32,
    pub pixel_data_offset: u32,
    pub width: u32,
    pub height: u32,
    pub bits_per_pixel: u16,
    pub compression_tag: u32,
    pub row_stride: usize,
    pub top_down: bool,
}

/// Bytes per stored row of a 24-bit image: `ceil(width * 3 / 4) * 4`.
pub fn row_stride(width: u32) -> usize {
    (width as usize * 3).div_ceil(4) * 4
}

fn u16_at(data: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([data[at], data[at + 1]])
}

fn u32_at(data: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(data[at..at + 4].try_into().unwrap())
}

fn i32_at(data: &[u8], at: usize) -> i32 {
    i32::from_le_bytes(data[at..at + 4].try_into().unwrap())
}

/// Validates the file and info headers and returns the layout they describe.
/// Also checks that the whole pixel array lies inside `data`.
pub fn read_header(data: &[u8]) -> Result<BmpHeaderInfo> {
    if data.len() < FILE_HEADER_LEN {
        return Err(Error::MalformedHeader(format!(
            "file is {} bytes, shorter than the 14-byte file header",
            data.len()
        )));
    }
    if &data[0..2] != b"BM" {
        return Err(Error::MalformedHeader("missing 'BM' signature".into()));
    }
    let file_size = u32_at(data, 2);
    let pixel_data_offset = u32_at(data, 10);

    if data.len() < FILE_HEADER_LEN + 4 {
        return Err(Error::MalformedHeader("info header missing".into()));
    }
    let info_len = u32_at(data, FILE_HEADER_LEN) as usize;
    if info_len < INFO_HEADER_LEN {
        // 12-byte OS/2 core headers and anything smaller.
        return Err(Error::UnsupportedFormat(format!(
            "info header of {info_len} bytes; BITMAPINFOHEADER (40) or later required"
        )));
    }
    if data.len() < FILE_HEADER_LEN + INFO_HEADER_LEN {
        return Err(Error::MalformedHeader(format!(
            "file is {} bytes, shorter than its headers",
            data.len()
        )));
    }

    let raw_width = i32_at(data, 18);
    let raw_height = i32_at(data, 22);
    let planes = u16_at(data, 26);
    let bits_per_pixel = u16_at(data, 28);
    let compression_tag = u32_at(data, 30);
    let colors_used = u32_at(data, 46);

    if planes != 1 {
        return Err(Error::MalformedHeader(format!(
            "{planes} colour planes, expected 1"
        )));
    }
    if bits_per_pixel != 24 {
        return Err(Error::UnsupportedFormat(format!(
            "{bits_per_pixel} bits per pixel; only 24 is supported"
        )));
    }
    if compression_tag != 0 {
        return Err(Error::UnsupportedFormat(format!(
            "compression type {compression_tag}; only uncompressed (0) is supported"
        )));
    }
    if colors_used != 0 {
        return Err(Error::UnsupportedFormat(format!(
            "palette of {colors_used} colours present"
        )));
    }
    if raw_width <= 0 {
        return Err(Error::MalformedHeader(format!(
            "width {raw_width} is not positive"
        )));
    }
    if raw_height == 0 || raw_height == i32::MIN {
        return Err(Error::MalformedHeader(format!(
            "invalid height {raw_height}"
        )));
    }

    let width = raw_width as u32;
    let height = raw_height.unsigned_abs();
    let top_down = raw_height < 0;
    let stride = row_stride(width);

    let headers_end = FILE_HEADER_LEN as u64 + info_len as u64;
    let offset = pixel_data_offset as u64;
    if offset < headers_end {
        return Err(Error::MalformedHeader(format!(
            "pixel data offset {offset} overlaps the headers (end at {headers_end})"
        )));
    }
    let pixel_bytes = stride as u64 * height as u64;
    if offset + pixel_bytes > data.len() as u64 {
        return Err(Error::MalformedHeader(format!(
            "pixel array needs {} bytes from offset {offset}, file has {}",
            pixel_bytes,
            data.len()
        )));
    }

    Ok(BmpHeaderInfo {
        file_size,
        pixel_data_offset,
        width,
        height,
        bits_per_pixel,
        compression_tag,
        row_stride: stride,
        top_down,
    })
}

/// Decodes a 24-bit uncompressed BMP into a top-left row-major RGB raster.
pub fn parse_bmp(data: &[u8]) -> Result<Image> {
    let info = read_header(data)?;
    let width = info.width as usize;
    let height = info.height as usize;
    let base = info.pixel_data_offset as usize;

    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        let stored_row = if info.top_down { y } else { height - 1 - y };
        let start = base + stored_row * info.row_stride;
        let row = &data[start..start + width * 3];
        pixels.extend(row.chunks_exact(3).map(|bgr| [bgr[2], bgr[1], bgr[0]]));
    }
    Image::new(info.width, info.height, pixels)
}

/// Header facts for the canonical file [`write_bmp`] emits for `img`.
pub fn canonical_header(img: &Image) -> BmpHeaderInfo {
    let stride = row_stride(img.width());
    BmpHeaderInfo {
        file_size: (CANONICAL_PIXEL_OFFSET + stride * img.height() as usize) as u32,
        pixel_data_offset: CANONICAL_PIXEL_OFFSET as u32,
        width: img.width(),
        height: img.height(),
        bits_per_pixel: 24,
        compression_tag: 0,
        row_stride: stride,
        top_down: false,
    }
}

/// Serializes `img` as a canonical bottom-up 24-bit BMP.
pub fn write_bmp(img: &Image) -> Vec<u8> {
    let info = canonical_header(img);
    let image_size = info.row_stride * img.height() as usize;

    let mut out = Vec::with_capacity(info.file_size as usize);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&info.file_size.to_le_bytes());
    out.extend_from_slice(&[0u8; 4]);
    out.extend_from_slice(&info.pixel_data_offset.to_le_bytes());

    out.extend_from_slice(&(INFO_HEADER_LEN as u32).to_le_bytes());
    out.extend_from_slice(&(img.width() as i32).to_le_bytes());
    out.extend_from_slice(&(img.height() as i32).to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&24u16.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&(image_size as u32).to_le_bytes());
    out.extend_from_slice(&CANONICAL_PIXELS_PER_METER.to_le_bytes());
    out.extend_from_slice(&CANONICAL_PIXELS_PER_METER.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());

    let width = img.width() as usize;
    let pad = info.row_stride - width * 3;
    for row in img.pixels().chunks_exact(width).rev() {
        for &[r, g, b] in row {
            out.extend_from_slice(&[b, g, r]);
        }
        out.extend(std::iter::repeat_n(0u8, pad));
    }
    debug_assert_eq!(out.len(), info.file_size as usize);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn stride_rounds_up_to_four() {
        assert_eq!(row_stride(1), 4);
        assert_eq!(row_stride(2), 8);
        assert_eq!(row_stride(3), 12);
        assert_eq!(row_stride(4), 12);
        assert_eq!(row_stride(150), 452);
    }

    #[test]
    fn single_red_pixel_is_58_bytes() {
        let img = Image::new(1, 1, vec![[255, 0, 0]]).unwrap();
        let bytes = write_bmp(&img);
        assert_eq!(bytes.len(), 58);
        assert_eq!(&bytes[54..], &[0x00, 0x00, 0xFF, 0x00]);
        assert_eq!(u32_at(&bytes, 2), 58);
        assert_eq!(u32_at(&bytes, 10), 54);
    }

    #[test]
    fn width_three_has_three_pad_bytes() {
        let img = Image::filled(3, 1, [1, 2, 3]).unwrap();
        let bytes = write_bmp(&img);
        assert_eq!(canonical_header(&img).row_stride, 12);
        assert_eq!(bytes.len(), 54 + 12);
        assert_eq!(&bytes[54 + 9..], &[0, 0, 0]);
    }

    #[test]
    fn image_rejects_bad_shapes() {
        assert!(Image::new(0, 1, vec![]).is_err());
        assert!(Image::new(2, 2, vec![[0; 3]; 3]).is_err());
    }

    #[test]
    fn truncated_inputs_are_malformed() {
        let bytes = write_bmp(&Image::filled(5, 4, [9, 8, 7]).unwrap());
        for len in 0..bytes.len() {
            match parse_bmp(&bytes[..len]) {
                Err(Error::MalformedHeader(_)) => {}
                other => panic!("length {len}: expected MalformedHeader, got {other:?}"),
            }
        }
        assert!(parse_bmp(&bytes).is_ok());
    }

    #[test]
    fn rejects_bad_signature() {
        let mut bytes = write_bmp(&Image::filled(2, 2, [0; 3]).unwrap());
        bytes[0] = b'P';
        assert!(matches!(parse_bmp(&bytes), Err(Error::MalformedHeader(_))));
    }

    #[test]
    fn rejects_compression_and_palette() {
        let base = write_bmp(&Image::filled(2, 2, [0; 3]).unwrap());

        let mut compressed = base.clone();
        compressed[30] = 1;
        assert!(matches!(
            parse_bmp(&compressed),
            Err(Error::UnsupportedFormat(_))
        ));

        let mut paletted = base.clone();
        paletted[46] = 4;
        assert!(matches!(
            parse_bmp(&paletted),
            Err(Error::UnsupportedFormat(_))
        ));

        let mut deep = base;
        deep[28] = 32;
        assert!(matches!(parse_bmp(&deep), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn rejects_offset_inside_headers() {
        let mut bytes = write_bmp(&Image::filled(2, 2, [0; 3]).unwrap());
        bytes[10] = 20;
        assert!(matches!(parse_bmp(&bytes), Err(Error::MalformedHeader(_))));
    }

    #[test]
    fn honours_larger_pixel_offset() {
        let img = Image::from_fn(3, 2, |x, y| [x as u8, y as u8, 7]).unwrap();
        let mut bytes = write_bmp(&img);
        // Slip 6 junk bytes between headers and pixels.
        bytes.splice(54..54, [0xAA; 6]);
        bytes[10] = 60;
        assert_eq!(parse_bmp(&bytes).unwrap(), img);
    }

    fn arb_image() -> impl Strategy<Value = Image> {
        (1u32..12, 1u32..12).prop_flat_map(|(w, h)| {
            proptest::collection::vec(any::<[u8; 3]>(), (w * h) as usize)
                .prop_map(move |px| Image::new(w, h, px).unwrap())
        })
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(img in arb_image()) {
            let bytes = write_bmp(&img);
            prop_assert_eq!(u32_at(&bytes, 10), 54);
            prop_assert!(i32_at(&bytes, 22) > 0);
            prop_assert_eq!(parse_bmp(&bytes).unwrap(), img);
        }

        #[test]
        fn parser_never_panics(data in proptest::collection::vec(any::<u8>(), 0..200)) {
            let _ = parse_bmp(&data);
        }

        #[test]
        fn parser_survives_mutated_headers(img in arb_image(), at in 0usize..54, byte in any::<u8>()) {
            let mut bytes = write_bmp(&img);
            bytes[at] = byte;
            let _ = parse_bmp(&bytes);
        }
    }
}
