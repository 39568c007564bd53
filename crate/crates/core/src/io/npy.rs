//! Minimal NPY reader/writer for C-ordered little-endian `f64` arrays.
//!
//! Files are written as format version 1.0. See
//! <https://numpy.org/doc/stable/reference/generated/numpy.lib.format.html>.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const MAGIC: &[u8; 6] = b"\x93NUMPY";

const ALIGNMENT: usize = 64;

/// Header dictionary for a 2-D `<f8` array.
pub fn header_dict(rows: usize, cols: usize) -> String {
    format!("{{'descr': '<f8', 'fortran_order': False, 'shape': ({rows}, {cols}), }}")
}

pub fn write_matrix<W: Write>(writer: &mut W, matrix: &Matrix) -> Result<()> {
    let (rows, cols) = matrix.shape();
    let mut header = header_dict(rows, cols);
    // magic + version + u16 length + header + '\n' is a multiple of 64
    let unpadded = MAGIC.len() + 2 + 2 + header.len() + 1;
    let padding = (ALIGNMENT - unpadded % ALIGNMENT) % ALIGNMENT;
    header.extend(std::iter::repeat(' ').take(padding));
    header.push('\n');
    let header_len = u16::try_from(header.len()).map_err(|_| Error::Npy("header exceeds 65535 bytes".into()))?;

    writer.write_all(MAGIC)?;
    writer.write_all(&[1, 0])?;
    writer.write_all(&header_len.to_le_bytes())?;
    writer.write_all(header.as_bytes())?;
    let mut payload = Vec::with_capacity(matrix.as_slice().len() * 8);
    for v in matrix.as_slice() {
        payload.extend_from_slice(&v.to_le_bytes());
    }
    writer.write_all(&payload)?;
    Ok(())
}

pub fn read_matrix<R: Read>(reader: &mut R) -> Result<Matrix> {
    let mut magic = [0u8; 6];
    reader.read_exact(&mut magic).map_err(|_| Error::Npy("truncated magic".into()))?;
    if &magic != MAGIC {
        return Err(Error::Npy("bad magic bytes".into()));
    }
    let mut version = [0u8; 2];
    reader.read_exact(&mut version)?;
    let header_len = match version {
        [1, 0] => {
            let mut len = [0u8; 2];
            reader.read_exact(&mut len)?;
            u16::from_le_bytes(len) as usize
        }
        [2, 0] => {
            let mut len = [0u8; 4];
            reader.read_exact(&mut len)?;
            u32::from_le_bytes(len) as usize
        }
        [major, minor] => return Err(Error::Npy(format!("unsupported format version {major}.{minor}"))),
    };
    let mut header = vec![0u8; header_len];
    reader.read_exact(&mut header).map_err(|_| Error::Npy("truncated header".into()))?;
    let header = String::from_utf8(header).map_err(|_| Error::Npy("header is not text".into()))?;
    let (rows, cols) = parse_header(&header)?;

    let count = rows.checked_mul(cols).ok_or_else(|| Error::Npy("shape overflows".into()))?;
    let mut payload = Vec::new();
    reader.read_to_end(&mut payload)?;
    if payload.len() != count * 8 {
        return Err(Error::Npy(format!("payload has {} bytes, shape needs {}", payload.len(), count * 8)));
    }
    let data = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    Matrix::from_vec(rows, cols, data)
}

/// Extracts the shape of a 2-D `<f8` C-ordered array from a header dict.
fn parse_header(header: &str) -> Result<(usize, usize)> {
    let dict = header.trim_end_matches(['\n', ' ', '\0']);
    if !(dict.starts_with('{') && dict.ends_with('}')) {
        return Err(Error::Npy("header is not a dict literal".into()));
    }
    let descr = value_after(dict, "'descr'")?;
    let descr = quoted(descr).ok_or_else(|| Error::Npy("malformed descr".into()))?;
    if descr != "<f8" {
        return Err(Error::Npy(format!("dtype {descr:?} is not '<f8'")));
    }
    let fortran = value_after(dict, "'fortran_order'")?;
    if !fortran.starts_with("False") {
        return Err(Error::Npy("fortran_order arrays are not supported".into()));
    }
    let shape = value_after(dict, "'shape'")?;
    let inner = shape
        .strip_prefix('(')
        .and_then(|s| s.split_once(')'))
        .map(|(inner, _)| inner)
        .ok_or_else(|| Error::Npy("malformed shape".into()))?;
    let dims = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Error::Npy(format!("bad dimension {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    match dims.as_slice() {
        [rows, cols] => Ok((*rows, *cols)),
        other => Err(Error::Npy(format!("expected a 2-D array, got shape {other:?}"))),
    }
}

fn quoted(text: &str) -> Option<&str> {
    let quote = text.chars().next().filter(|&c| c == '\'' || c == '"')?;
    let rest = &text[1..];
    rest.find(quote).map(|end| &rest[..end])
}

fn value_after<'a>(dict: &'a str, key: &str) -> Result<&'a str> {
    let start = dict.find(key).ok_or_else(|| Error::Npy(format!("header lacks {key}")))?;
    let rest = dict[start + key.len()..].trim_start();
    let rest = rest.strip_prefix(':').ok_or_else(|| Error::Npy(format!("malformed entry {key}")))?;
    Ok(rest.trim_start())
}
