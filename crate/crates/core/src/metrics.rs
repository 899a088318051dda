//! Cover-vs-stego image quality: mean squared error and PSNR.
//!
//! The squared error is averaged over every channel sample (3 per pixel).
//! The sum is accumulated as an integer, so MSE is exact up to the final
//! division.

use std::fmt;

use crate::bmp::Image;
use crate::error::Result;

/// Peak value of an 8-bit channel.
pub const MAX_VALUE: f64 = 255.0;

/// Peak signal-to-noise ratio in decibels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Db(f64),
    /// The images are identical (MSE is zero).
    Infinite,
}

impl Psnr {
    pub fn db(self) -> f64 {
        match self {
            Psnr::Db(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Psnr::Infinite)
    }
}

/// Renders with two decimals, or `inf`.
impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Db(v) => write!(f, "{v:.2}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    pub psnr: Psnr,
    pub max_value: f64,
}

/// Exact sum of squared channel differences.
pub fn squared_error_sum(cover: &Image, stego: &Image) -> Result<u64> {
    cover.same_dimensions(stego)?;
    Ok(cover
        .pixels()
        .iter()
        .zip(stego.pixels())
        .flat_map(|(a, b)| (0..3).map(move |c| a[c].abs_diff(b[c]) as u64))
        .map(|d| d * d)
        .sum())
}

pub fn mse(cover: &Image, stego: &Image) -> Result<f64> {
    let sum = squared_error_sum(cover, stego)?;
    let samples = 3 * cover.pixel_count() as u64;
    Ok(sum as f64 / samples as f64)
}

pub fn psnr_from_mse(mse: f64) -> Psnr {
    if mse == 0.0 {
        Psnr::Infinite
    } else {
        Psnr::Db(10.0 * (MAX_VALUE * MAX_VALUE / mse).log10())
    }
}

pub fn psnr(cover: &Image, stego: &Image) -> Result<QualityReport> {
    let mse = mse(cover, stego)?;
    Ok(QualityReport {
        mse,
        psnr: psnr_from_mse(mse),
        max_value: MAX_VALUE,
    })
}

/// Lowest PSNR an embed of `container_len` bytes into `pixels` pixels can
/// produce: at most `4 * container_len` blue samples move, each by at most 3.
pub fn embedding_psnr_floor(container_len: usize, pixels: usize) -> Psnr {
    let worst_sum = 9.0 * 4.0 * container_len as f64;
    psnr_from_mse(worst_sum / (3.0 * pixels as f64))
}
