//! Procedural mountainous terrain: a flat base plus seeded Gaussian hills,
//! with bilinear height queries and a plain-text grid exchange format.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::rng::RunRng;

#[derive(Debug, Error)]
pub enum TerrainError {
    #[error("terrain io: {0}")]
    Io(#[from] std::io::Error),
    #[error("terrain parse: {0}")]
    Parse(String),
}

/// Height grid over `[0, width-1] x [0, height-1]` world units, one cell per
/// grid step.
#[derive(Clone, Debug)]
pub struct Terrain {
    /// heights[row][col] with row = y index, col = x index
    grid: Vec<Vec<f64>>,
    cell_size: f64,
}

impl Terrain {
    pub fn from_grid(grid: Vec<Vec<f64>>, cell_size: f64) -> Self {
        assert!(!grid.is_empty() && !grid[0].is_empty());
        let w = grid[0].len();
        assert!(grid.iter().all(|row| row.len() == w), "ragged grid");
        assert!(cell_size > 0.0);
        assert!(
            grid.iter().flatten().all(|h| h.is_finite()),
            "non-finite heights"
        );
        Self { grid, cell_size }
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid[0].len()
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn max_height(&self) -> f64 {
        self.grid
            .iter()
            .flatten()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Stored height at integer grid coordinates, clamped into the grid.
    pub fn height_at_cell(&self, x: i64, y: i64) -> f64 {
        let col = x.clamp(0, self.cols() as i64 - 1) as usize;
        let row = y.clamp(0, self.rows() as i64 - 1) as usize;
        self.grid[row][col]
    }

    /// Bilinear height at fractional world coordinates, clamped into the
    /// grid; queries at grid nodes return the stored value exactly.
    pub fn height_at(&self, x: f64, y: f64) -> f64 {
        let fx = (x / self.cell_size).clamp(0.0, (self.cols() - 1) as f64);
        let fy = (y / self.cell_size).clamp(0.0, (self.rows() - 1) as f64);
        let x0 = (fx.floor() as usize).min(self.cols() - 2);
        let y0 = (fy.floor() as usize).min(self.rows() - 2);
        let tx = fx - x0 as f64;
        let ty = fy - y0 as f64;
        let h00 = self.grid[y0][x0];
        let h10 = self.grid[y0][x0 + 1];
        let h01 = self.grid[y0 + 1][x0];
        let h11 = self.grid[y0 + 1][x0 + 1];
        h00 * (1.0 - tx) * (1.0 - ty)
            + h10 * tx * (1.0 - ty)
            + h01 * (1.0 - tx) * ty
            + h11 * tx * ty
    }

    /// Plain-text export: first line `rows cols cell_size`, then one row of
    /// heights per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {:.16e}", self.rows(), self.cols(), self.cell_size);
        for row in &self.grid {
            let line: Vec<String> = row.iter().map(|h| format!("{h:.16e}")).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TerrainError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| TerrainError::Parse("empty terrain file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(TerrainError::Parse(format!(
                "header must be `rows cols cell`, got `{header}`"
            )));
        }
        let rows: usize = parts[0]
            .parse()
            .map_err(|e| TerrainError::Parse(format!("rows: {e}")))?;
        let cols: usize = parts[1]
            .parse()
            .map_err(|e| TerrainError::Parse(format!("cols: {e}")))?;
        let cell: f64 = parts[2]
            .parse()
            .map_err(|e| TerrainError::Parse(format!("cell: {e}")))?;
        let mut grid = Vec::with_capacity(rows);
        for (i, line) in lines.take(rows).enumerate() {
            let row: Result<Vec<f64>, _> = line
                .split_whitespace()
                .map(|tok| tok.parse::<f64>())
                .collect();
            let row = row.map_err(|e| TerrainError::Parse(format!("row {i}: {e}")))?;
            if row.len() != cols {
                return Err(TerrainError::Parse(format!(
                    "row {i} has {} values, expected {cols}",
                    row.len()
                )));
            }
            grid.push(row);
        }
        if grid.len() != rows {
            return Err(TerrainError::Parse(format!(
                "expected {rows} rows, found {}",
                grid.len()
            )));
        }
        Ok(Self::from_grid(grid, cell))
    }

    pub fn save(&self, path: &Path) -> Result<(), TerrainError> {
        Ok(std::fs::write(path, self.to_text())?)
    }

    pub fn load(path: &Path) -> Result<Self, TerrainError> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Sum of seeded Gaussian hills over a flat base; deterministic per seed.
pub fn generate_terrain(
    seed: u64,
    grid_size: usize,
    hill_count: usize,
    amplitude_range: (f64, f64),
) -> Terrain {
    assert!(grid_size >= 16, "grid must be at least 16x16");
    assert!(amplitude_range.0 <= amplitude_range.1);
    let mut rng = RunRng::new(seed);
    let base = 0.5;
    let extent = (grid_size - 1) as f64;
    let hills: Vec<(f64, f64, f64, f64)> = (0..hill_count)
        .map(|_| {
            let cx = rng.uniform_in(0.1 * extent, 0.9 * extent);
            let cy = rng.uniform_in(0.1 * extent, 0.9 * extent);
            let amplitude = rng.uniform_in(amplitude_range.0, amplitude_range.1);
            let sigma = rng.uniform_in(0.05 * extent, 0.15 * extent);
            (cx, cy, amplitude, sigma)
        })
        .collect();
    let grid: Vec<Vec<f64>> = (0..grid_size)
        .map(|row| {
            (0..grid_size)
                .map(|col| {
                    let (x, y) = (col as f64, row as f64);
                    base + hills
                        .iter()
                        .map(|&(cx, cy, a, s)| {
                            let d2 = (x - cx).powi(2) + (y - cy).powi(2);
                            a * (-d2 / (2.0 * s * s)).exp()
                        })
                        .sum::<f64>()
                })
                .collect()
        })
        .collect();
    Terrain::from_grid(grid, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_when_no_hills() {
        let t = generate_terrain(1, 32, 0, (2.0, 8.0));
        assert_eq!(t.max_height(), 0.5);
        assert_eq!(t.height_at(10.3, 17.9), 0.5);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate_terrain(9, 48, 10, (2.0, 8.0));
        let b = generate_terrain(9, 48, 10, (2.0, 8.0));
        assert_eq!(a.to_text(), b.to_text());
        let c = generate_terrain(10, 48, 10, (2.0, 8.0));
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn superposition_bound() {
        let t = generate_terrain(3, 64, 5, (2.0, 8.0));
        assert!(t.max_height() <= 0.5 + 8.0 * 5.0);
    }

    #[test]
    fn bilinear_matches_nodes_and_interpolates() {
        let grid = vec![vec![1.0, 2.0], vec![3.0, 4.0]];
        let t = Terrain::from_grid(grid, 1.0);
        assert_eq!(t.height_at(0.0, 0.0), 1.0);
        assert_eq!(t.height_at(1.0, 0.0), 2.0);
        assert_eq!(t.height_at(0.0, 1.0), 3.0);
        assert_eq!(t.height_at(1.0, 1.0), 4.0);
        assert!((t.height_at(0.5, 0.5) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn text_round_trip_is_lossless() {
        let t = generate_terrain(5, 24, 6, (1.0, 4.0));
        let back = Terrain::from_text(&t.to_text()).unwrap();
        assert_eq!(t.rows(), back.rows());
        for row in 0..t.rows() {
            for col in 0..t.cols() {
                let a = t.height_at_cell(col as i64, row as i64);
                let b = back.height_at_cell(col as i64, row as i64);
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn malformed_text_rejected() {
        assert!(Terrain::from_text("").is_err());
        assert!(Terrain::from_text("2 2\n1 2\n3 4\n").is_err());
        assert!(Terrain::from_text("2 2 1.0\n1 2\n3\n").is_err());
    }
}
