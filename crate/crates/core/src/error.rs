use thiserror::Error;

/// Everything that can go wrong while reading images, building or opening
/// containers, and hiding or recovering messages.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed BMP header: {0}")]
    MalformedHeader(String),

    #[error("unsupported BMP format: {0}")]
    UnsupportedFormat(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid secret key: {0}")]
    InvalidKey(String),

    #[error("no hidden container found (bad magic)")]
    BadMagic,

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),

    #[error("secret key does not match the key stored in the image")]
    KeyMismatch,

    #[error("corrupt payload: {0}")]
    CorruptPayload(String),

    #[error("truncated stream: need {needed} bytes, only {available} available")]
    TruncatedStream { needed: usize, available: usize },

    #[error("bit-pair stream length {0} is not a multiple of four")]
    LengthNotMultipleOfFour(usize),

    #[error("image is {width}x{height}; at least {min_width}x{min_height} pixels are required")]
    ImageTooSmall {
        width: u32,
        height: u32,
        min_width: u32,
        min_height: u32,
    },

    #[error("container needs {needed} bytes but the image holds only {available}")]
    CapacityExceeded { needed: usize, available: usize },

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
