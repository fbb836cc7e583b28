//! CSV, PGM and manifest writers.

use std::fs;
use std::path::Path;

use vortexab::field::FieldGrid;

use crate::error::{CliError, CliResult};

/// Blank for values a model does not define.
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Linear map min → 0, max → 255 of a row-major grid.
pub fn quantize(values: &[f64]) -> Vec<u8> {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    let span = hi - lo;
    values.iter().map(|&v| if span > 0.0 { ((v - lo) / span * 255.0).round() as u8 } else { 0 }).collect()
}

/// Binary P5 greyscale image.
pub fn pgm_bytes(grid: &FieldGrid) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.resolution, grid.resolution).into_bytes();
    out.extend(quantize(&grid.values));
    out
}

pub fn write_pgm(path: &Path, grid: &FieldGrid) -> CliResult<()> {
    fs::write(path, pgm_bytes(grid)).map_err(|e| CliError::io(path, e))
}

/// Raw samples next to the image: x', y', r', η and the ring flag.
pub fn write_field_csv(path: &Path, grid: &FieldGrid) -> CliResult<()> {
    let mut rows = Vec::with_capacity(grid.values.len());
    for row in 0..grid.resolution {
        for col in 0..grid.resolution {
            let (x, y) = grid.position(row, col);
            let idx = row * grid.resolution + col;
            rows.push(vec![
                row.to_string(),
                col.to_string(),
                x.to_string(),
                y.to_string(),
                (x * x + y * y).sqrt().to_string(),
                grid.values[idx].to_string(),
                u8::from(grid.ring[idx]).to_string(),
            ]);
        }
    }
    write_csv(path, &["row", "col", "x_over_a", "y_over_a", "r_over_a", "eta", "ring"], &rows)
}

/// Header, width and height and payload of a P5 file, if well formed.
pub fn parse_pgm(bytes: &[u8]) -> Option<(usize, usize, &[u8])> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return None;
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).ok()?);
    }
    if fields[0] != "P5" || fields[3] != "255" {
        return None;
    }
    let w: usize = fields[1].parse().ok()?;
    let h: usize = fields[2].parse().ok()?;
    let payload = bytes.get(pos + 1..)?;
    (payload.len() == w * h).then_some((w, h, payload))
}
