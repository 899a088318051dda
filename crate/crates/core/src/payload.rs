//! The container that carries a message and its secret key, and its view as
//! a stream of 2-bit symbols.
//!
//! Wire format (multi-byte integers big-endian):
//!
//! | offset | size | field                                         |
//! |--------|------|-----------------------------------------------|
//! | 0      | 4    | magic `SIS1`                                  |
//! | 4      | 1    | version, `0x01`                               |
//! | 5      | 6    | secret key, printable ASCII                   |
//! | 11     | 4    | length of the compressed body in bytes        |
//! | 15     | 4    | CRC-32 (IEEE) of the *uncompressed* message   |
//! | 19     | n    | raw DEFLATE stream of the message             |
//!
//! The key is stored in the clear. It locks extraction against a casual
//! reader but provides no cryptographic protection.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use flate2::write::DeflateEncoder;
use flate2::Compression;

use crate::error::{Error, Result};
use crate::inflate::inflate;

pub const MAGIC: [u8; 4] = *b"SIS1";
pub const VERSION: u8 = 0x01;
pub const KEY_LEN: usize = 6;
pub const HEADER_LEN: usize = 19;

/// Fixed so that identical inputs always produce identical containers.
const COMPRESSION_LEVEL: u32 = 9;

/// Exactly six printable ASCII characters.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SecretKey([u8; KEY_LEN]);

impl SecretKey {
    pub fn new(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != KEY_LEN {
            return Err(Error::InvalidKey(format!(
                "the secret key must be exactly {KEY_LEN} characters, got {}",
                bytes.len()
            )));
        }
        if let Some(b) = bytes.iter().find(|b| !(0x20..=0x7E).contains(*b)) {
            return Err(Error::InvalidKey(format!(
                "the secret key must be printable ASCII, found byte 0x{b:02X}"
            )));
        }
        let mut key = [0u8; KEY_LEN];
        key.copy_from_slice(bytes);
        Ok(Self(key))
    }

    pub fn as_bytes(&self) -> &[u8; KEY_LEN] {
        &self.0
    }
}

impl FromStr for SecretKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.as_bytes())
    }
}

impl TryFrom<&str> for SecretKey {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        s.parse()
    }
}

// Keep keys out of logs and panic messages.
impl fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SecretKey(******)")
    }
}

/// The fixed-size front of a container.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainerHeader {
    pub version: u8,
    pub key: [u8; KEY_LEN],
    pub payload_len: u32,
    pub crc32: u32,
}

impl ContainerHeader {
    /// Total container size this header announces.
    pub fn container_len(&self) -> usize {
        HEADER_LEN + self.payload_len as usize
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = self.version;
        out[5..11].copy_from_slice(&self.key);
        out[11..15].copy_from_slice(&self.payload_len.to_be_bytes());
        out[15..19].copy_from_slice(&self.crc32.to_be_bytes());
        out
    }

    /// Parses the first 19 bytes of `data`, checking only the magic.
    /// Version and key are left for the caller to judge.
    pub fn parse(data: &[u8]) -> Result<Self> {
        if data.len() < HEADER_LEN {
            return Err(Error::TruncatedStream {
                needed: HEADER_LEN,
                available: data.len(),
            });
        }
        if data[0..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        Ok(Self {
            version: data[4],
            key: data[5..11].try_into().unwrap(),
            payload_len: u32::from_be_bytes(data[11..15].try_into().unwrap()),
            crc32: u32::from_be_bytes(data[15..19].try_into().unwrap()),
        })
    }

    /// Checks version and key, in that order.
    pub fn verify(&self, key: &SecretKey) -> Result<()> {
        if self.version != VERSION {
            return Err(Error::UnsupportedVersion(self.version));
        }
        if &self.key != key.as_bytes() {
            return Err(Error::KeyMismatch);
        }
        Ok(())
    }
}

/// Raw DEFLATE of `message` at the fixed container compression level.
pub fn deflate(message: &[u8]) -> Vec<u8> {
    let mut encoder = DeflateEncoder::new(Vec::new(), Compression::new(COMPRESSION_LEVEL));
    encoder
        .write_all(message)
        .expect("writing to a Vec cannot fail");
    encoder.finish().expect("writing to a Vec cannot fail")
}

/// Serializes `message` and `key` into a container.
pub fn encode_payload(message: &[u8], key: &SecretKey) -> Vec<u8> {
    let body = deflate(message);
    let header = ContainerHeader {
        version: VERSION,
        key: *key.as_bytes(),
        payload_len: u32::try_from(body.len()).expect("compressed body exceeds 4 GiB"),
        crc32: crc32fast::hash(message),
    };
    let mut out = Vec::with_capacity(HEADER_LEN + body.len());
    out.extend_from_slice(&header.to_bytes());
    out.extend_from_slice(&body);
    out
}

/// Opens a container with `key` and returns the message. Bytes past the
/// announced body length are ignored.
pub fn decode_payload(data: &[u8], key: &SecretKey) -> Result<Vec<u8>> {
    let header = ContainerHeader::parse(data)?;
    header.verify(key)?;

    let end = header.container_len();
    if data.len() < end {
        return Err(Error::TruncatedStream {
            needed: end,
            available: data.len(),
        });
    }
    let message =
        inflate(&data[HEADER_LEN..end]).map_err(|e| Error::CorruptPayload(e.to_string()))?;
    let crc = crc32fast::hash(&message);
    if crc != header.crc32 {
        return Err(Error::CorruptPayload(format!(
            "CRC-32 mismatch: stored {:08x}, computed {crc:08x}",
            header.crc32
        )));
    }
    Ok(message)
}

/// Splits each byte into four 2-bit symbols, least-significant pair first.
pub fn bytes_to_bitpairs(data: &[u8]) -> Vec<u8> {
    data.iter()
        .flat_map(|&b| [b & 0b11, (b >> 2) & 0b11, (b >> 4) & 0b11, b >> 6])
        .collect()
}

/// Reassembles bytes from 2-bit symbols; the inverse of [`bytes_to_bitpairs`].
/// Only the low two bits of each symbol are used.
pub fn bitpairs_to_bytes(pairs: &[u8]) -> Result<Vec<u8>> {
    if !pairs.len().is_multiple_of(4) {
        return Err(Error::LengthNotMultipleOfFour(pairs.len()));
    }
    Ok(pairs
        .chunks_exact(4)
        .map(|q| {
            q.iter()
                .rev()
                .fold(0u8, |acc, &pair| (acc << 2) | (pair & 0b11))
        })
        .collect())
}
