//! The uniform cube partition of `[0,1]^d` into `N^d` cells of side
//! `ℓ = 1/N`, its midpoints, and its decomposition into work tiles.

use std::ops::Range;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum GridError {
    #[error("cells per axis must be at least 1")]
    InvalidCellCount,
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("index has {got} axes, grid has {expected}")]
    IndexLengthMismatch { got: usize, expected: usize },
    #[error("index {index} out of range on axis {axis} (grid has {cells} cells per axis)")]
    IndexOutOfRange { axis: usize, index: u64, cells: u64 },
    #[error("tile target count must be at least 1")]
    InvalidTileTarget,
}

/// A uniform grid of `cells_per_axis^dimension` cubes over `[0,1]^d`.
///
/// The side length is stored as the one-time computed reciprocal `1/N`;
/// its rounding error is carried by the error ledger, not by this type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    cells_per_axis: u64,
    dimension: usize,
    side: f64,
}

impl GridSpec {
    pub fn new(cells_per_axis: u64, dimension: usize) -> Result<Self, GridError> {
        if cells_per_axis == 0 {
            return Err(GridError::InvalidCellCount);
        }
        if dimension == 0 {
            return Err(GridError::InvalidDimension);
        }
        Ok(GridSpec { cells_per_axis, dimension, side: 1.0 / cells_per_axis as f64 })
    }

    pub fn cells_per_axis(&self) -> u64 {
        self.cells_per_axis
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The stored cell side `ℓ = 1/N` (a single rounding).
    pub fn side(&self) -> f64 {
        self.side
    }

    /// Total cell count `N^d` as a float; exact while `N^d ≤ 2^53`.
    pub fn cell_count_f64(&self) -> f64 {
        (self.cells_per_axis as f64).powi(self.dimension as i32)
    }

    /// Total cell count, or `None` when `N^d` overflows `u64`.
    pub fn cell_count(&self) -> Option<u64> {
        let mut total: u64 = 1;
        for _ in 0..self.dimension {
            total = total.checked_mul(self.cells_per_axis)?;
        }
        Some(total)
    }

    /// The cell volume `ℓ^d` as a plain multiplication chain; the relative
    /// rounding versus the exact `N^{-d}` is charged by the error ledger.
    pub fn cell_volume(&self) -> f64 {
        let mut v = 1.0f64;
        for _ in 0..self.dimension {
            v *= self.side;
        }
        v
    }

    /// Midpoint of the cell with the given index vector, each coordinate
    /// computed as `(2i+1)/(2N)` in one division.
    pub fn midpoint(&self, index: &[u64]) -> Result<Vec<f64>, GridError> {
        if index.len() != self.dimension {
            return Err(GridError::IndexLengthMismatch {
                got: index.len(),
                expected: self.dimension,
            });
        }
        let two_n = (2 * self.cells_per_axis) as f64;
        index
            .iter()
            .enumerate()
            .map(|(axis, &i)| {
                if i >= self.cells_per_axis {
                    Err(GridError::IndexOutOfRange { axis, index: i, cells: self.cells_per_axis })
                } else {
                    Ok((2 * i + 1) as f64 / two_n)
                }
            })
            .collect()
    }

    /// Splits the grid into at most `target_count` tiles: contiguous slabs
    /// of whole planes along the first axis, of near-equal volume, in
    /// canonical order. Slabs never cut a row, so per-plane partial sums
    /// are identical no matter how the slabs are chosen, which is what
    /// makes the reduction independent of worker and tile counts.
    pub fn tiles(&self, target_count: usize) -> Result<Vec<Tile>, GridError> {
        if target_count == 0 {
            return Err(GridError::InvalidTileTarget);
        }
        let n = self.cells_per_axis;
        let t = (target_count as u64).min(n);
        let mut tiles = Vec::with_capacity(t as usize);
        for k in 0..t {
            let start = (k as u128 * n as u128 / t as u128) as u64;
            let end = ((k + 1) as u128 * n as u128 / t as u128) as u64;
            let mut ranges = vec![start..end];
            ranges.extend(std::iter::repeat(0..n).take(self.dimension - 1));
            tiles.push(Tile { ranges });
        }
        Ok(tiles)
    }
}

/// A box of cell indices, one half-open range per axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    ranges: Vec<Range<u64>>,
}

impl Tile {
    pub fn new(ranges: Vec<Range<u64>>) -> Self {
        Tile { ranges }
    }

    pub fn ranges(&self) -> &[Range<u64>] {
        &self.ranges
    }

    pub fn cell_count(&self) -> u64 {
        self.ranges.iter().map(|r| r.end.saturating_sub(r.start)).product()
    }
}
