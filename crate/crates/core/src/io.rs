//! CSV tables and binary lattice snapshots.
//!
//! Snapshot layout: the four bytes `RDF1`, `n_z` as a little-endian `u32`,
//! eight reserved zero bytes, then `n_z × 8` little-endian `f64` values in
//! row-major order.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::RealField8;

pub const SNAPSHOT_MAGIC: &[u8; 4] = b"RDF1";
pub const SNAPSHOT_HEADER_LEN: usize = 16;

/// Fixed-width scientific notation with 17 significant digits.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write a header row and numeric rows.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format_number(*v)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    write_csv(BufWriter::new(File::create(path)?), header, rows)
}

pub fn write_snapshot<W: Write>(mut out: W, phi: &[RealField8]) -> Result<()> {
    let n = u32::try_from(phi.len()).map_err(|_| Error::InvalidParameter("too many grid points".into()))?;
    out.write_all(SNAPSHOT_MAGIC)?;
    out.write_all(&n.to_le_bytes())?;
    out.write_all(&[0u8; 8])?;
    for v in phi {
        for c in v.iter() {
            out.write_all(&c.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_snapshot_file(path: &Path, phi: &[RealField8]) -> Result<()> {
    write_snapshot(BufWriter::new(File::create(path)?), phi)
}

pub fn read_snapshot<R: Read>(mut input: R) -> Result<Vec<RealField8>> {
    let mut header = [0u8; SNAPSHOT_HEADER_LEN];
    input.read_exact(&mut header)?;
    if &header[..4] != SNAPSHOT_MAGIC {
        return Err(Error::InvalidParameter("not a snapshot file: bad magic".into()));
    }
    let n = u32::from_le_bytes(header[4..8].try_into().expect("four bytes")) as usize;
    let mut buf = vec![0u8; n * 8 * 8];
    input.read_exact(&mut buf)?;
    Ok(buf
        .chunks_exact(64)
        .map(|row| {
            RealField8::from_fn(|r, _| f64::from_le_bytes(row[8 * r..8 * r + 8].try_into().expect("eight bytes")))
        })
        .collect())
}

pub fn read_snapshot_file(path: &Path) -> Result<Vec<RealField8>> {
    read_snapshot(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_round_trip_and_layout() {
        let phi: Vec<RealField8> = (0..3).map(|i| RealField8::from_fn(|r, _| i as f64 + 0.125 * r as f64)).collect();
        let mut bytes = Vec::new();
        write_snapshot(&mut bytes, &phi).unwrap();
        assert_eq!(bytes.len(), 16 + 3 * 64);
        assert_eq!(&bytes[..4], b"RDF1");
        assert_eq!(&bytes[4..8], &3u32.to_le_bytes());
        assert_eq!(&bytes[8..16], &[0u8; 8]);
        // Row 1, component 2.
        let off = 16 + 64 + 2 * 8;
        assert_eq!(f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap()), 1.25);
        assert_eq!(read_snapshot(bytes.as_slice()).unwrap(), phi);
    }

    #[test]
    fn bad_magic_is_rejected() {
        assert!(read_snapshot(&b"XXXX\0\0\0\0\0\0\0\0\0\0\0\0"[..]).is_err());
    }

    #[test]
    fn csv_numbers_carry_full_precision() {
        let mut out = Vec::new();
        write_csv(&mut out, &["a", "b"], vec![vec![1.0 / 3.0, 2.0]]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("a,b"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(row, vec![1.0 / 3.0, 2.0]);
        assert!(text.contains("3.3333333333333331e-1"));
    }
}
