//! Dense real-valued functions on `X = (Z/NZ)^d`.
//!
//! Storage is row-major with the first coordinate major. Grid coordinate
//! `c` on an axis represents the integer `c + 1` of the range `[N]` under
//! the usual identification of `[N]` with `Z/NZ`; all shifts are cyclic.

use std::io::{Read, Write};
use std::path::Path;

use crate::exec;

use super::GridError;

#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    dim: usize,
    modulus: usize,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn constant(dim: usize, modulus: usize, c: f64) -> Result<Self, GridError> {
        let len = checked_len(dim, modulus)?;
        Ok(GridFunction {
            dim,
            modulus,
            values: vec![c; len],
        })
    }

    pub fn zeros(dim: usize, modulus: usize) -> Result<Self, GridError> {
        Self::constant(dim, modulus, 0.0)
    }

    pub fn from_values(dim: usize, modulus: usize, values: Vec<f64>) -> Result<Self, GridError> {
        let len = checked_len(dim, modulus)?;
        if values.len() != len {
            return Err(GridError::DimensionMismatch(format!(
                "expected {} values for N={} d={}, got {}",
                len,
                modulus,
                dim,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GridError::DimensionMismatch(
                "grid contains non-finite values".into(),
            ));
        }
        Ok(GridFunction {
            dim,
            modulus,
            values,
        })
    }

    /// Fills from a coordinate function, parallel over the flat index.
    pub fn from_fn(
        dim: usize,
        modulus: usize,
        f: impl Fn(&[usize]) -> f64 + Sync,
    ) -> Result<Self, GridError> {
        let len = checked_len(dim, modulus)?;
        let mut values = vec![0.0; len];
        exec::fill_indexed(&mut values, |idx| {
            let mut coords = vec![0usize; dim];
            unflatten(idx, modulus, &mut coords);
            f(&coords)
        });
        Ok(GridFunction {
            dim,
            modulus,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn at_flat(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    pub fn at(&self, coords: &[usize]) -> f64 {
        self.values[flatten(coords, self.modulus)]
    }

    /// Value at `flat index of x` shifted cyclically by `delta` (already
    /// reduced to `0..N` per axis).
    #[inline]
    pub fn at_shifted(&self, idx: usize, delta: &[usize]) -> f64 {
        let n = self.modulus;
        let mut rem = idx;
        let mut out = 0usize;
        // Row-major with first coordinate major: peel from the last axis.
        let mut stride = 1usize;
        for axis in (0..self.dim).rev() {
            let c = rem % n;
            rem /= n;
            let shifted = c + delta[axis];
            let shifted = if shifted >= n { shifted - n } else { shifted };
            out += shifted * stride;
            stride *= n;
        }
        self.values[out]
    }

    pub fn mean(&self) -> f64 {
        exec::det_mean(self.values.len(), |i| self.values[i])
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn same_shape(&self, other: &GridFunction) -> bool {
        self.dim == other.dim && self.modulus == other.modulus
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(f64, f64) -> f64 + Sync,
    ) -> Result<GridFunction, GridError> {
        if !self.same_shape(other) {
            return Err(GridError::DimensionMismatch(
                "grids have different shapes".into(),
            ));
        }
        let mut values = vec![0.0; self.values.len()];
        exec::fill_indexed(&mut values, |i| f(self.values[i], other.values[i]));
        Ok(GridFunction {
            dim: self.dim,
            modulus: self.modulus,
            values,
        })
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction, GridError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction, GridError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: f64) -> GridFunction {
        let mut values = vec![0.0; self.values.len()];
        exec::fill_indexed(&mut values, |i| self.values[i] * k);
        GridFunction {
            dim: self.dim,
            modulus: self.modulus,
            values,
        }
    }

    /// Mean of the pointwise product of this grid and `other`.
    pub fn inner(&self, other: &GridFunction) -> Result<f64, GridError> {
        if !self.same_shape(other) {
            return Err(GridError::DimensionMismatch(
                "grids have different shapes".into(),
            ));
        }
        Ok(exec::det_mean(self.values.len(), |i| {
            self.values[i] * other.values[i]
        }))
    }

    // ---- on-disk formats ----

    /// Binary layout: `d` as u32 LE, `N` as u64 LE, then the values as
    /// f64 LE in flat order.
    pub fn write_binary(&self, path: &Path) -> Result<(), GridError> {
        let mut buf = Vec::with_capacity(12 + self.values.len() * 8);
        buf.extend_from_slice(&(self.dim as u32).to_le_bytes());
        buf.extend_from_slice(&(self.modulus as u64).to_le_bytes());
        for v in &self.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let mut f = std::fs::File::create(path).map_err(|e| GridError::Io(e.to_string()))?;
        f.write_all(&buf).map_err(|e| GridError::Io(e.to_string()))
    }

    pub fn read_binary(path: &Path) -> Result<Self, GridError> {
        let mut f = std::fs::File::open(path).map_err(|e| GridError::Io(e.to_string()))?;
        let mut header = [0u8; 12];
        f.read_exact(&mut header)
            .map_err(|e| GridError::Io(e.to_string()))?;
        let dim = u32::from_le_bytes(header[0..4].try_into().unwrap()) as usize;
        let modulus = u64::from_le_bytes(header[4..12].try_into().unwrap()) as usize;
        let len = checked_len(dim, modulus)?;
        let mut raw = Vec::new();
        f.read_to_end(&mut raw)
            .map_err(|e| GridError::Io(e.to_string()))?;
        if raw.len() != len * 8 {
            return Err(GridError::Io(format!(
                "expected {} bytes of payload, got {}",
                len * 8,
                raw.len()
            )));
        }
        let values = raw
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Self::from_values(dim, modulus, values)
    }

    /// CSV layout: one row per lattice point, `x1,..,xd,value`, preceded
    /// by a header row. Extra `#`-prefixed lines are skipped on read.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<(), GridError> {
        let mut header: Vec<String> = (1..=self.dim).map(|i| format!("x{}", i)).collect();
        header.push("value".into());
        writeln!(out, "{}", header.join(",")).map_err(|e| GridError::Io(e.to_string()))?;
        let mut coords = vec![0usize; self.dim];
        for (idx, v) in self.values.iter().enumerate() {
            unflatten(idx, self.modulus, &mut coords);
            let cs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{},{:.12e}", cs.join(","), v)
                .map_err(|e| GridError::Io(e.to_string()))?;
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self, GridError> {
        let mut text = String::new();
        let mut r = std::io::BufReader::new(reader);
        r.read_to_string(&mut text)
            .map_err(|e| GridError::Io(e.to_string()))?;
        let mut rows: Vec<(Vec<usize>, f64)> = Vec::new();
        let mut dim = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            if cells.last().map(|s| s.trim()) == Some("value") {
                dim = Some(cells.len() - 1);
                continue;
            }
            let d = *dim.get_or_insert(cells.len() - 1);
            if cells.len() != d + 1 {
                return Err(GridError::Io(format!("ragged csv row '{}'", line)));
            }
            let coords = cells[..d]
                .iter()
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| GridError::Io(format!("bad coordinate in '{}': {}", line, e)))?;
            let v = cells[d]
                .trim()
                .parse::<f64>()
                .map_err(|e| GridError::Io(format!("bad value in '{}': {}", line, e)))?;
            rows.push((coords, v));
        }
        let dim = dim.ok_or_else(|| GridError::Io("empty csv".into()))?;
        let count = rows.len();
        let modulus = (count as f64).powf(1.0 / dim as f64).round() as usize;
        if checked_len(dim, modulus)? != count {
            return Err(GridError::Io(format!(
                "{} rows is not a full {}-dimensional grid",
                count, dim
            )));
        }
        let mut values = vec![f64::NAN; count];
        for (coords, v) in rows {
            if coords.iter().any(|&c| c >= modulus) {
                return Err(GridError::Io("coordinate out of range".into()));
            }
            values[flatten(&coords, modulus)] = v;
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(GridError::Io("csv does not cover the grid".into()));
        }
        Self::from_values(dim, modulus, values)
    }
}

fn checked_len(dim: usize, modulus: usize) -> Result<usize, GridError> {
    if dim == 0 || modulus == 0 {
        return Err(GridError::DimensionMismatch(
            "dimension and modulus must be positive".into(),
        ));
    }
    let mut len = 1usize;
    for _ in 0..dim {
        len = len.checked_mul(modulus).ok_or(GridError::BudgetExceeded {
            need: u128::MAX,
            budget: usize::MAX as u128,
        })?;
    }
    // Refuse absurd allocations up front (8 GiB of doubles).
    if len > 1 << 30 {
        return Err(GridError::BudgetExceeded {
            need: len as u128,
            budget: 1u128 << 30,
        });
    }
    Ok(len)
}

#[inline]
pub(crate) fn flatten(coords: &[usize], modulus: usize) -> usize {
    let mut idx = 0usize;
    for &c in coords {
        idx = idx * modulus + c;
    }
    idx
}

#[inline]
pub(crate) fn unflatten(mut idx: usize, modulus: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % modulus;
        idx /= modulus;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trips() {
        let g = GridFunction::from_fn(2, 7, |c| (c[0] * 10 + c[1]) as f64).unwrap();
        assert_eq!(g.at(&[3, 5]), 35.0);
        let mut coords = [0usize; 2];
        unflatten(flatten(&[3, 5], 7), 7, &mut coords);
        assert_eq!(coords, [3, 5]);
    }

    #[test]
    fn shifted_access_wraps() {
        let g = GridFunction::from_fn(2, 5, |c| (c[0] * 5 + c[1]) as f64).unwrap();
        let idx = flatten(&[4, 3], 5);
        // +2 on axis 0 wraps to 1, +4 on axis 1 wraps to 2.
        assert_eq!(g.at_shifted(idx, &[2, 4]), (1 * 5 + 2) as f64);
    }

    #[test]
    fn binary_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.bin");
        let g = GridFunction::from_fn(2, 9, |c| (c[0] as f64).sin() + c[1] as f64).unwrap();
        g.write_binary(&p).unwrap();
        let h = GridFunction::read_binary(&p).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn csv_round_trip() {
        let g = GridFunction::from_fn(1, 12, |c| c[0] as f64 * 0.25).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let h = GridFunction::read_csv(buf.as_slice()).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn mean_and_inner() {
        let g = GridFunction::constant(1, 10, 3.0).unwrap();
        let h = GridFunction::constant(1, 10, -2.0).unwrap();
        assert_eq!(g.mean(), 3.0);
        assert_eq!(g.inner(&h).unwrap(), -6.0);
    }
}
