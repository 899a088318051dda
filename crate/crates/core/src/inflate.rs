//! Strict raw DEFLATE (RFC 1951) decoder.
//!
//! General-purpose inflaters skip bits the format ignores: the padding after
//! a stored-block header and the padding after the final block. A flip in one
//! of those bits leaves the output unchanged, so no checksum over the message
//! can notice it. This decoder rejects any stream in which those bits are
//! non-zero or which is followed by trailing bytes, which makes every
//! single-bit change to a well-formed stream observable.

use std::fmt;

const MAX_BITS: usize = 15;
const MAX_LIT_CODES: usize = 286;
const MAX_DIST_CODES: usize = 30;
const FIXED_LIT_CODES: usize = 288;

const LENGTH_BASE: [u16; 29] = [
    3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 15, 17, 19, 23, 27, 31, 35, 43, 51, 59, 67, 83, 99, 115, 131,
    163, 195, 227, 258,
];
const LENGTH_EXTRA: [u8; 29] = [
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0,
];
const DIST_BASE: [u16; 30] = [
    1, 2, 3, 4, 5, 7, 9, 13, 17, 25, 33, 49, 65, 97, 129, 193, 257, 385, 513, 769, 1025, 1537,
    2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577,
];
const DIST_EXTRA: [u8; 30] = [
    0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13,
    13,
];
/// Transmission order of the code-length code lengths.
const CODE_LENGTH_ORDER: [usize; 19] = [
    16, 17, 18, 0, 8, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13, 2, 14, 1, 15,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflateError(pub &'static str);

impl fmt::Display for InflateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl std::error::Error for InflateError {}

type Result<T> = std::result::Result<T, InflateError>;

struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
    buf: u32,
    count: u32,
}

impl<'a> BitReader<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self {
            data,
            pos: 0,
            buf: 0,
            count: 0,
        }
    }

    /// Reads `n` (<= 16) bits, least-significant first.
    fn bits(&mut self, n: u32) -> Result<u32> {
        while self.count < n {
            let byte = *self
                .data
                .get(self.pos)
                .ok_or(InflateError("unexpected end of stream"))?;
            self.pos += 1;
            self.buf |= (byte as u32) << self.count;
            self.count += 8;
        }
        let value = self.buf & ((1u32 << n) - 1);
        self.buf >>= n;
        self.count -= n;
        Ok(value)
    }

    /// Drops the bits left in the current byte; they must all be zero.
    fn align_strict(&mut self) -> Result<()> {
        if self.buf != 0 {
            return Err(InflateError("non-zero padding bits"));
        }
        self.buf = 0;
        self.count = 0;
        Ok(())
    }

    fn byte(&mut self) -> Result<u8> {
        debug_assert_eq!(self.count, 0);
        let byte = *self
            .data
            .get(self.pos)
            .ok_or(InflateError("unexpected end of stream"))?;
        self.pos += 1;
        Ok(byte)
    }
}

/// Canonical Huffman code as counts per length plus symbols sorted by code.
struct Huffman {
    count: [u16; MAX_BITS + 1],
    symbol: Vec<u16>,
}

impl Huffman {
    /// Returns the code and how many codes are left unassigned (0 when
    /// complete). Over-subscribed length sets are an error.
    fn build(lengths: &[u8]) -> Result<(Self, i32)> {
        let mut count = [0u16; MAX_BITS + 1];
        for &len in lengths {
            count[len as usize] += 1;
        }
        let mut left: i32 = 1;
        if count[0] as usize != lengths.len() {
            for &n in &count[1..] {
                left <<= 1;
                left -= n as i32;
                if left < 0 {
                    return Err(InflateError("over-subscribed code lengths"));
                }
            }
        } else {
            left = 0;
        }

        let mut offsets = [0u16; MAX_BITS + 2];
        for len in 1..=MAX_BITS {
            offsets[len + 1] = offsets[len] + count[len];
        }
        let mut symbol = vec![0u16; lengths.len()];
        for (sym, &len) in lengths.iter().enumerate() {
            if len != 0 {
                symbol[offsets[len as usize] as usize] = sym as u16;
                offsets[len as usize] += 1;
            }
        }
        Ok((Self { count, symbol }, left))
    }

    fn decode(&self, reader: &mut BitReader<'_>) -> Result<u16> {
        let mut code: i32 = 0;
        let mut first: i32 = 0;
        let mut index: i32 = 0;
        for len in 1..=MAX_BITS {
            code |= reader.bits(1)? as i32;
            let count = self.count[len] as i32;
            if code - count < first {
                return Ok(self.symbol[(index + (code - first)) as usize]);
            }
            index += count;
            first += count;
            first <<= 1;
            code <<= 1;
        }
        Err(InflateError("invalid Huffman code"))
    }
}

/// An incomplete code is tolerated only when it is a single one-bit code.
fn check_incomplete(code: &Huffman, left: i32, used: usize) -> Result<()> {
    if left != 0 && used != (code.count[0] + code.count[1]) as usize {
        return Err(InflateError("incomplete code"));
    }
    Ok(())
}

fn stored(reader: &mut BitReader<'_>, out: &mut Vec<u8>) -> Result<()> {
    reader.align_strict()?;
    let len = u16::from_le_bytes([reader.byte()?, reader.byte()?]);
    let nlen = u16::from_le_bytes([reader.byte()?, reader.byte()?]);
    if len != !nlen {
        return Err(InflateError("stored block length check failed"));
    }
    let end = reader.pos + len as usize;
    let body = reader
        .data
        .get(reader.pos..end)
        .ok_or(InflateError("stored block runs past end of stream"))?;
    out.extend_from_slice(body);
    reader.pos = end;
    Ok(())
}

fn codes(
    reader: &mut BitReader<'_>,
    out: &mut Vec<u8>,
    lit: &Huffman,
    dist: &Huffman,
) -> Result<()> {
    loop {
        let symbol = lit.decode(reader)? as usize;
        match symbol {
            0..=255 => out.push(symbol as u8),
            256 => return Ok(()),
            257..=285 => {
                let i = symbol - 257;
                let length =
                    LENGTH_BASE[i] as usize + reader.bits(LENGTH_EXTRA[i] as u32)? as usize;
                let d = dist.decode(reader)? as usize;
                if d >= MAX_DIST_CODES {
                    return Err(InflateError("invalid distance symbol"));
                }
                let distance = DIST_BASE[d] as usize + reader.bits(DIST_EXTRA[d] as u32)? as usize;
                if distance > out.len() {
                    return Err(InflateError("distance too far back"));
                }
                let start = out.len() - distance;
                for k in 0..length {
                    let b = out[start + k];
                    out.push(b);
                }
            }
            _ => return Err(InflateError("invalid literal/length symbol")),
        }
    }
}

fn fixed(reader: &mut BitReader<'_>, out: &mut Vec<u8>) -> Result<()> {
    let mut lengths = [0u8; FIXED_LIT_CODES];
    lengths[..144].fill(8);
    lengths[144..256].fill(9);
    lengths[256..280].fill(7);
    lengths[280..].fill(8);
    let (lit, _) = Huffman::build(&lengths)?;
    let (dist, _) = Huffman::build(&[5u8; MAX_DIST_CODES])?;
    codes(reader, out, &lit, &dist)
}

fn dynamic(reader: &mut BitReader<'_>, out: &mut Vec<u8>) -> Result<()> {
    let nlen = reader.bits(5)? as usize + 257;
    let ndist = reader.bits(5)? as usize + 1;
    let ncode = reader.bits(4)? as usize + 4;
    if nlen > MAX_LIT_CODES || ndist > MAX_DIST_CODES {
        return Err(InflateError("too many length or distance codes"));
    }

    let mut cl_lengths = [0u8; 19];
    for &slot in CODE_LENGTH_ORDER.iter().take(ncode) {
        cl_lengths[slot] = reader.bits(3)? as u8;
    }
    let (cl_code, left) = Huffman::build(&cl_lengths)?;
    if left != 0 {
        return Err(InflateError("incomplete code-length code"));
    }

    let mut lengths = vec![0u8; nlen + ndist];
    let mut i = 0;
    while i < nlen + ndist {
        let symbol = cl_code.decode(reader)?;
        let (value, repeat) = match symbol {
            0..=15 => (symbol as u8, 1),
            16 => {
                if i == 0 {
                    return Err(InflateError("repeat with no previous length"));
                }
                (lengths[i - 1], 3 + reader.bits(2)? as usize)
            }
            17 => (0, 3 + reader.bits(3)? as usize),
            _ => (0, 11 + reader.bits(7)? as usize),
        };
        if i + repeat > nlen + ndist {
            return Err(InflateError("code lengths overflow"));
        }
        lengths[i..i + repeat].fill(value);
        i += repeat;
    }
    if lengths[256] == 0 {
        return Err(InflateError("no end-of-block code"));
    }

    let (lit, left) = Huffman::build(&lengths[..nlen])?;
    check_incomplete(&lit, left, nlen)?;
    let (dist, left) = Huffman::build(&lengths[nlen..])?;
    check_incomplete(&dist, left, ndist)?;
    codes(reader, out, &lit, &dist)
}

/// Decompresses a complete raw DEFLATE stream that must occupy all of `data`.
pub fn inflate(data: &[u8]) -> Result<Vec<u8>> {
    let mut reader = BitReader::new(data);
    let mut out = Vec::new();
    loop {
        let last = reader.bits(1)? == 1;
        match reader.bits(2)? {
            0 => stored(&mut reader, &mut out)?,
            1 => fixed(&mut reader, &mut out)?,
            2 => dynamic(&mut reader, &mut out)?,
            _ => return Err(InflateError("reserved block type")),
        }
        if last {
            break;
        }
    }
    reader.align_strict()?;
    if reader.pos != data.len() {
        return Err(InflateError("trailing bytes after final block"));
    }
    Ok(out)
}
