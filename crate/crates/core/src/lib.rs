//! Hide a short message inside a 24-bit BMP image.
//!
//! The message is DEFLATE-compressed and wrapped in a small container
//! together with a 6-character secret key, then written two bits per pixel
//! into the low bits of each pixel's blue channel. Extraction reads the
//! container back, refuses to continue unless the caller's key matches the
//! stored one, and checks a CRC-32 of the recovered message.
//!
//! ```
//! use sis_stego::{embed, extract, EmbedRequest, Image, SecretKey};
//!
//! let cover = Image::filled(150, 112, [90, 120, 200]).unwrap();
//! let key: SecretKey = "ABC123".parse().unwrap();
//! let stego = embed(&EmbedRequest { cover: &cover, key, message: b"hello" }).unwrap();
//! assert_eq!(extract(&stego, &key).unwrap(), b"hello");
//! ```

pub mod bmp;
pub mod codec;
mod error;
pub mod inflate;
pub mod metrics;
pub mod payload;

pub use bmp::{parse_bmp, write_bmp, BmpHeaderInfo, Image, Rgb};
pub use codec::{
    embed, embed_container, extract, gross_capacity, max_distortion, CapacityReport, EmbedRequest,
    MIN_HEIGHT, MIN_WIDTH,
};
pub use error::{Error, Result};
pub use metrics::{mse, psnr, Psnr, QualityReport};
pub use payload::{
    bitpairs_to_bytes, bytes_to_bitpairs, decode_payload, encode_payload, SecretKey,
};
