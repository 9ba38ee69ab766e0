//! File formats: grid and domain JSON, CSV tables.

use std::fs;
use std::io::Write;
use std::path::Path;

use loglap::domain::{Disk, Interval, Piece, Rect};
use loglap::{Domain, Grid};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolderData {
    pub alpha: f64,
    #[serde(rename = "const")]
    pub constant: f64,
}

/// On-disk grid function; values are row-major with the last axis fastest.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub dim: usize,
    pub origin: Vec<f64>,
    pub spacing: Vec<f64>,
    pub shape: Vec<usize>,
    pub holder: HolderData,
    pub values: Vec<f64>,
}

impl GridFile {
    pub fn from_grid(g: &Grid) -> Self {
        Self {
            dim: g.dim,
            origin: g.origin.clone(),
            spacing: g.spacing.clone(),
            shape: g.shape.clone(),
            holder: HolderData { alpha: g.holder_exponent, constant: g.holder_constant },
            values: g.values.clone(),
        }
    }

    pub fn into_grid(self) -> Result<Grid, CliError> {
        if self.shape.len() != self.dim {
            return Err(CliError::Usage(format!(
                "grid file: dim = {} but shape has {} axes",
                self.dim,
                self.shape.len()
            )));
        }
        Ok(Grid::new(self.origin, self.spacing, self.shape, self.values, self.holder.alpha, self.holder.constant)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PieceFile {
    Interval { a: f64, b: f64 },
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
    Disk { center: [f64; 2], radius: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub dim: usize,
    pub pieces: Vec<PieceFile>,
}

impl DomainFile {
    pub fn into_domain(self) -> Result<Domain, CliError> {
        let pieces = self
            .pieces
            .into_iter()
            .map(|p| match p {
                PieceFile::Interval { a, b } => Piece::Interval(Interval::new(a, b)),
                PieceFile::Rect { x0, x1, y0, y1 } => Piece::Rect(Rect::new(x0, x1, y0, y1)),
                PieceFile::Disk { center, radius } => Piece::Disk(Disk { center, radius }),
            })
            .collect();
        Ok(Domain::new(self.dim, pieces)?)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_grid(path: &Path) -> Result<Grid, CliError> {
    read_json::<GridFile>(path)?.into_grid()
}

pub fn read_domain(path: &Path) -> Result<Domain, CliError> {
    read_json::<DomainFile>(path)?.into_domain()
}

pub fn write_grid(path: &Path, g: &Grid) -> Result<(), CliError> {
    let text = serde_json::to_string(&GridFile::from_grid(g)).map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// A CSV table: header row, '.' decimal point.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self { header: header.iter().map(|h| h.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    /// Writes to `path`, or to stdout when no path is given.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), CliError> {
        let text = self.render();
        match path {
            Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_json_round_trips_bit_exactly() {
        let values = vec![0.1 + 0.2, std::f64::consts::PI, -1e-300, 5e-324, 1.0 / 3.0, 0.0, -0.0, 1.2345678912345679e8];
        let g = GridFile {
            dim: 1,
            origin: vec![-0.7],
            spacing: vec![0.1 + 0.2],
            shape: vec![values.len()],
            holder: HolderData { alpha: 1.0, constant: 2.0f64.sqrt() },
            values: values.clone(),
        };
        let text = serde_json::to_string(&g).unwrap();
        let back: GridFile = serde_json::from_str(&text).unwrap();
        for (a, b) in values.iter().zip(&back.values) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
        assert_eq!(back.spacing[0].to_bits(), g.spacing[0].to_bits());
        assert_eq!(back.holder.constant.to_bits(), g.holder.constant.to_bits());
        assert!(text.contains("\"const\""));
    }

    #[test]
    fn csv_numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), num(0.5)]);
        assert_eq!(t.render(), "a,b\n1,5.0000000000000000e-1\n");
    }

    #[test]
    fn domain_pieces_parse() {
        let d: DomainFile = serde_json::from_str(
            r#"{"dim": 1, "pieces": [{"type": "interval", "a": -0.2, "b": -0.1}, {"type": "interval", "a": 0.1, "b": 0.2}]}"#,
        )
        .unwrap();
        let dom = d.into_domain().unwrap();
        assert!((dom.measure() - 0.2).abs() < 1e-15);
        assert!(serde_json::from_str::<DomainFile>(r#"{"dim": 2, "pieces": [{"type": "disk", "center": [0, 0]}]}"#)
            .is_err());
    }
}
