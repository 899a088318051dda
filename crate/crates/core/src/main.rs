use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sis_stego::codec::{self, PIXELS_PER_BYTE};
use sis_stego::payload::{self, HEADER_LEN};
use sis_stego::{gross_capacity, metrics, parse_bmp, write_bmp, Error, Image, SecretKey};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sis",
    version,
    about = "Hide a key-locked message in a 24-bit BMP image"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hide a message file inside a cover image.
    Embed {
        #[arg(long, value_name = "BMP")]
        cover: PathBuf,
        #[arg(long, value_name = "FILE")]
        message: PathBuf,
        #[arg(long, value_name = "BMP")]
        out: PathBuf,
        /// Six printable ASCII characters.
        #[arg(long, env = "SIS_KEY", hide_env_values = true, value_parser = parse_key)]
        key: SecretKey,
    },
    /// Recover a hidden message using its secret key.
    Extract {
        #[arg(long, value_name = "BMP")]
        stego: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        #[arg(long, env = "SIS_KEY", hide_env_values = true, value_parser = parse_key)]
        key: SecretKey,
    },
    /// Report how much an image can hold.
    ///
    /// Capacity is the exact two-bits-per-pixel bound (one container byte per
    /// four pixels). Embedding never changes the size of the BMP file.
    Capacity {
        #[arg(long, value_name = "BMP")]
        image: PathBuf,
    },
    /// Mean squared error and PSNR between two images of the same size.
    Psnr {
        #[arg(long, value_name = "BMP")]
        cover: PathBuf,
        #[arg(long, value_name = "BMP")]
        stego: PathBuf,
    },
    /// Say whether an image carries a container, without needing the key.
    Inspect {
        #[arg(long, value_name = "BMP")]
        image: PathBuf,
    },
}

fn parse_key(s: &str) -> Result<SecretKey, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidKey(_) | Error::DimensionMismatch(..) | Error::InvalidImage(_) => EXIT_USAGE,
        Error::ImageTooSmall { .. } | Error::CapacityExceeded { .. } => 3,
        Error::KeyMismatch => 4,
        Error::BadMagic
        | Error::UnsupportedVersion(_)
        | Error::CorruptPayload(_)
        | Error::TruncatedStream { .. }
        | Error::LengthNotMultipleOfFour(_) => 5,
        Error::MalformedHeader(_) | Error::UnsupportedFormat(_) => 6,
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_image(path: &Path) -> Result<Image, Failure> {
    Ok(parse_bmp(&read(path)?)?)
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn cmd_embed(cover: &Path, message: &Path, out: &Path, key: &SecretKey) -> Result<(), Failure> {
    let cover = load_image(cover)?;
    let message = read(message)?;
    codec::check_dimensions(&cover)?;

    let capacity = gross_capacity(&cover);
    let container = payload::encode_payload(&message, key);
    let stego = codec::embed_container(&cover, &container)?;
    let quality = metrics::psnr(&cover, &stego)?;
    write_atomic(out, &write_bmp(&stego))?;

    println!("width: {}", cover.width());
    println!("height: {}", cover.height());
    println!("gross_capacity_bytes: {}", capacity.gross_bytes);
    println!("net_capacity_bytes: {}", capacity.net_bytes);
    println!("message_bytes: {}", message.len());
    println!("container_bytes: {}", container.len());
    println!("pixels_modified: {}", container.len() * PIXELS_PER_BYTE);
    println!("MSE: {}", quality.mse);
    println!("PSNR: {}", quality.psnr);
    Ok(())
}

fn cmd_extract(stego: &Path, out: &Path, key: &SecretKey) -> Result<(), Failure> {
    let stego = load_image(stego)?;
    let container = codec::extract_container(&stego, key)?;
    let message = payload::decode_payload(&container, key)?;
    write_atomic(out, &message)?;

    println!("payload_bytes: {}", container.len() - HEADER_LEN);
    println!("message_bytes: {}", message.len());
    println!("crc32: ok");
    Ok(())
}

fn cmd_capacity(image: &Path) -> Result<(), Failure> {
    let img = load_image(image)?;
    let capacity = gross_capacity(&img);
    println!("width: {}", img.width());
    println!("height: {}", img.height());
    println!("pixels: {}", capacity.pixels_available);
    println!("gross_bytes: {}", capacity.gross_bytes);
    println!("net_bytes: {}", capacity.net_bytes);
    println!("plain_text_chars: {}", capacity.net_bytes);
    println!("meets_minimum: {}", codec::check_dimensions(&img).is_ok());
    eprintln!(
        "note: plain_text_chars assumes no compression gain; compressible text usually fits more"
    );
    Ok(())
}

fn cmd_psnr(a: &Path, b: &Path) -> Result<(), Failure> {
    let a = load_image(a)?;
    let b = load_image(b)?;
    let report = metrics::psnr(&a, &b)?;
    println!("MSE: {}", report.mse);
    println!("PSNR: {}", report.psnr);
    Ok(())
}

fn cmd_inspect(image: &Path) -> Result<(), Failure> {
    let img = load_image(image)?;
    match codec::read_header(&img) {
        Ok(header) => {
            println!(
                "container: present, version {}, payload {} bytes",
                header.version, header.payload_len
            );
            println!("key: embedded");
            Ok(())
        }
        Err(Error::BadMagic) => {
            println!("container: absent");
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Embed {
            cover,
            message,
            out,
            key,
        } => cmd_embed(cover, message, out, key),
        Command::Extract { stego, out, key } => cmd_extract(stego, out, key),
        Command::Capacity { image } => cmd_capacity(image),
        Command::Psnr { cover, stego } => cmd_psnr(cover, stego),
        Command::Inspect { image } => cmd_inspect(image),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
