//! Persisted model container: a gzip stream wrapping a fixed binary layout.
//!
//! Layout of the decompressed payload:
//!
//! ```text
//! magic   4 bytes   "CLY1"
//! version u16 BE    format version (currently 1)
//! type    u8        model type tag (see [`tag`])
//! body    ...       model-specific, see the owning module
//! crc     u32 BE    CRC-32 of everything above
//! ```
//!
//! All integers are big-endian; strings are a u32 BE byte length followed by
//! UTF-8 bytes; count tables are a u64 BE entry count followed by u64 BE
//! values. Files conventionally use the `.gzbin` extension.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;

use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"CLY1";
pub const FORMAT_VERSION: u16 = 1;

/// Model type tags carried in the container header.
pub mod tag {
    pub const LANGUAGE_STATISTICS: u8 = 1;
    pub const DICTIONARY: u8 = 2;
    pub const SPACE_TRIGRAM_MODEL: u8 = 3;
}

/// Writes `body` under the container header to a gzip-compressed file.
pub fn save(path: &Path, type_tag: u8, body: &[u8]) -> Result<()> {
    let mut payload = Vec::with_capacity(body.len() + 16);
    payload.extend_from_slice(&MAGIC);
    payload.extend_from_slice(&FORMAT_VERSION.to_be_bytes());
    payload.push(type_tag);
    payload.extend_from_slice(body);
    let crc = crc32fast::hash(&payload);
    payload.extend_from_slice(&crc.to_be_bytes());

    let file = File::create(path)?;
    let mut encoder = GzEncoder::new(file, Compression::default());
    encoder.write_all(&payload)?;
    encoder.finish()?;
    Ok(())
}

/// Reads a container file back, returning the body after checking magic,
/// version, type tag and checksum. Each failure mode is a distinct error.
pub fn load(path: &Path, expected_tag: u8) -> Result<Vec<u8>> {
    let raw = match std::fs::read(path) {
        Ok(raw) => raw,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            return Err(Error::ModelNotFound {
                path: path.display().to_string(),
            })
        }
        Err(e) => return Err(e.into()),
    };
    // Not even a gzip stream: treat as a foreign file.
    if raw.len() < 2 || raw[0] != 0x1f || raw[1] != 0x8b {
        return Err(Error::BadMagic);
    }
    let mut payload = Vec::new();
    match GzDecoder::new(raw.as_slice()).read_to_end(&mut payload) {
        Ok(_) => {}
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => return Err(Error::Truncated),
        // The gzip layer checks its own CRC; a mid-stream flip lands here.
        Err(_) => return Err(Error::ChecksumMismatch),
    }

    if payload.len() < MAGIC.len() {
        return Err(Error::Truncated);
    }
    if payload[..4] != MAGIC {
        return Err(Error::BadMagic);
    }
    if payload.len() < 4 + 2 + 1 + 4 {
        return Err(Error::Truncated);
    }
    let version = u16::from_be_bytes([payload[4], payload[5]]);
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let found_tag = payload[6];
    if found_tag != expected_tag {
        return Err(Error::WrongModelType {
            found: found_tag,
            expected: expected_tag,
        });
    }
    let crc_offset = payload.len() - 4;
    let stored = u32::from_be_bytes(payload[crc_offset..].try_into().unwrap());
    if crc32fast::hash(&payload[..crc_offset]) != stored {
        return Err(Error::ChecksumMismatch);
    }
    Ok(payload[7..crc_offset].to_vec())
}

// Body encoding helpers, shared by the model modules.

pub fn put_u16(out: &mut Vec<u8>, v: u16) {
    out.extend_from_slice(&v.to_be_bytes());
}

pub fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_be_bytes());
}

pub fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_be_bytes());
}

pub fn put_string(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

pub fn put_table(out: &mut Vec<u8>, table: &[u64]) {
    put_u64(out, table.len() as u64);
    for &v in table {
        put_u64(out, v);
    }
}

/// Sequential reader over a container body; produces [`Error::Truncated`]
/// when a field runs past the end.
pub struct BodyReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> BodyReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::Truncated);
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_be_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_be_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        self.take(n)
    }

    pub fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec()).map_err(|_| Error::Truncated)
    }

    /// Reads a length-prefixed table, requiring exactly `expected_len` entries.
    pub fn table(&mut self, expected_len: usize) -> Result<Vec<u64>> {
        let len = self.u64()? as usize;
        if len != expected_len {
            return Err(Error::Truncated);
        }
        let mut table = Vec::with_capacity(len);
        for _ in 0..len {
            table.push(self.u64()?);
        }
        Ok(table)
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.pos != self.buf.len() {
            return Err(Error::Truncated);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_body() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gzbin");
        let body = vec![1u8, 2, 3, 250, 0, 7];
        save(&path, tag::DICTIONARY, &body).unwrap();
        assert_eq!(load(&path, tag::DICTIONARY).unwrap(), body);
    }

    #[test]
    fn missing_file_is_distinct() {
        let err = load(Path::new("/nonexistent/x.gzbin"), tag::DICTIONARY).unwrap_err();
        assert!(matches!(err, Error::ModelNotFound { .. }), "{err}");
    }

    #[test]
    fn zero_length_file_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.gzbin");
        std::fs::write(&path, b"").unwrap();
        assert!(matches!(load(&path, tag::DICTIONARY), Err(Error::BadMagic)));
    }

    #[test]
    fn wrong_tag_is_distinct() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gzbin");
        save(&path, tag::DICTIONARY, b"abc").unwrap();
        let err = load(&path, tag::LANGUAGE_STATISTICS).unwrap_err();
        assert!(
            matches!(
                err,
                Error::WrongModelType {
                    found: 2,
                    expected: 1
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn flipped_byte_fails_integrity() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gzbin");
        save(&path, tag::DICTIONARY, &[9u8; 64]).unwrap();
        let mut raw = std::fs::read(&path).unwrap();
        let mid = raw.len() / 2;
        raw[mid] ^= 0xFF;
        std::fs::write(&path, &raw).unwrap();
        let err = load(&path, tag::DICTIONARY).unwrap_err();
        assert!(
            matches!(err, Error::ChecksumMismatch | Error::Truncated),
            "{err}"
        );
    }

    #[test]
    fn truncated_file_is_distinct() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.gzbin");
        save(&path, tag::DICTIONARY, &[9u8; 256]).unwrap();
        let raw = std::fs::read(&path).unwrap();
        std::fs::write(&path, &raw[..raw.len() - 6]).unwrap();
        let err = load(&path, tag::DICTIONARY).unwrap_err();
        assert!(matches!(err, Error::Truncated), "{err}");
    }

    #[test]
    fn body_reader_reports_truncation() {
        let mut r = BodyReader::new(&[0, 0, 0]);
        assert!(r.u16().is_ok());
        assert!(matches!(r.u32(), Err(Error::Truncated)));
    }
}
