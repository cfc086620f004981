//! Cell-centered periodic grids in `x` and `v`, and the distribution container.
//!
//! Values of a [`Distribution`] are stored x-major: `values[j * nx + i]` holds
//! `f(x_i, v_j)`, so an x-line is a contiguous slice and a v-line is a strided
//! gather of `nv` values.

use std::io::{self, BufRead, Write};

use crate::error::GridError;

/// Smallest admissible cell count: a five-point stencil plus one shifted cell
/// must fit without wrapping onto itself.
pub const MIN_CELLS: usize = 8;

/// Uniform cell-centered grid on `[lo, hi]` with periodic topology.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    n: usize,
    lo: f64,
    hi: f64,
    dx: f64,
}

impl Grid1D {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self, GridError> {
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return Err(GridError::InvalidExtent { lo, hi });
        }
        if n < MIN_CELLS {
            return Err(GridError::TooSmall { n, min: MIN_CELLS });
        }
        Ok(Self {
            n,
            lo,
            hi,
            dx: (hi - lo) / n as f64,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Midpoint of cell `i` (zero-based).
    #[inline]
    pub fn center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.center(i)).collect()
    }

    /// Periodic index wrap for any signed offset.
    #[inline]
    pub fn wrap(&self, i: isize) -> usize {
        wrap_index(i, self.n)
    }
}

#[inline]
pub fn wrap_index(i: isize, n: usize) -> usize {
    i.rem_euclid(n as isize) as usize
}

/// Tensor grid over `x × v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub gx: Grid1D,
    pub gv: Grid1D,
}

impl PhaseGrid {
    pub fn new(gx: Grid1D, gv: Grid1D) -> Self {
        Self { gx, gv }
    }

    pub fn nx(&self) -> usize {
        self.gx.len()
    }

    pub fn nv(&self) -> usize {
        self.gv.len()
    }

    /// Area of one phase-space cell, `dx * dv`.
    pub fn cell_area(&self) -> f64 {
        self.gx.dx() * self.gv.dx()
    }

    /// Samples `f(x, v)` at every cell center.
    pub fn sample<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(f64, f64) -> f64,
    {
        let xs = self.gx.centers();
        let vs = self.gv.centers();
        let mut values = Vec::with_capacity(xs.len() * vs.len());
        for &v in &vs {
            for &x in &xs {
                values.push(f(x, v));
            }
        }
        values
    }
}

/// Grid over `[0, L] × [-V_c, V_c]`.
pub fn make_phase_grid(l: f64, v_c: f64, nx: usize, nv: usize) -> Result<PhaseGrid, GridError> {
    if !(l > 0.0) {
        return Err(GridError::InvalidExtent { lo: 0.0, hi: l });
    }
    if !(v_c > 0.0) {
        return Err(GridError::InvalidExtent { lo: -v_c, hi: v_c });
    }
    Ok(PhaseGrid::new(Grid1D::new(0.0, l, nx)?, Grid1D::new(-v_c, v_c, nv)?))
}

/// Global solution bounds `[min, max]` frozen from the initial data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: f64,
    pub max: f64,
}

impl Bounds {
    pub fn new(min: f64, max: f64) -> Self {
        debug_assert!(min <= max);
        Self { min, max }
    }

    /// Lower bound only; the maximum side of the limiter becomes inactive.
    pub fn positivity(min: f64) -> Self {
        Self {
            min,
            max: f64::INFINITY,
        }
    }

    /// Machine-level slack allowed around the bounds: `1e-12 * max(1, |min|, |max|)`,
    /// ignoring infinite sides.
    pub fn tol_mach(&self) -> f64 {
        let mut scale = 1.0f64;
        for b in [self.min, self.max] {
            if b.is_finite() {
                scale = scale.max(b.abs());
            }
        }
        1e-12 * scale
    }

    pub fn contains(&self, value: f64) -> bool {
        let tol = self.tol_mach();
        value >= self.min - tol && value <= self.max + tol
    }
}

/// Minimum and maximum over all samples.
pub fn extract_bounds(values: &[f64]) -> Bounds {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in values {
        min = min.min(v);
        max = max.max(v);
    }
    Bounds { min, max }
}

/// Point values `f(x_i, v_j)` on a [`PhaseGrid`] with their frozen bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    nx: usize,
    nv: usize,
    values: Vec<f64>,
    bounds: Bounds,
}

impl Distribution {
    /// Wraps x-major values and freezes their bounds.
    pub fn new(grid: &PhaseGrid, values: Vec<f64>) -> Result<Self, GridError> {
        let (nx, nv) = (grid.nx(), grid.nv());
        if values.len() != nx * nv {
            return Err(GridError::ShapeMismatch {
                expected: nx * nv,
                got: values.len(),
            });
        }
        let bounds = extract_bounds(&values);
        Ok(Self {
            nx,
            nv,
            values,
            bounds,
        })
    }

    pub fn from_fn<F>(grid: &PhaseGrid, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64,
    {
        Self::new(grid, grid.sample(f)).expect("sampled on the grid")
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nv(&self) -> usize {
        self.nv
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn set_bounds(&mut self, bounds: Bounds) {
        self.bounds = bounds;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.values[j * self.nx + i] = value;
    }

    /// Contiguous line at fixed `v_j`.
    pub fn x_line(&self, j: usize) -> &[f64] {
        &self.values[j * self.nx..(j + 1) * self.nx]
    }

    pub fn x_line_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.values[j * self.nx..(j + 1) * self.nx]
    }

    /// Copies the line at fixed `x_i` into `out` (length `nv`).
    pub fn read_v_line(&self, i: usize, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.nv);
        for (j, o) in out.iter_mut().enumerate() {
            *o = self.values[j * self.nx + i];
        }
    }

    pub fn write_v_line(&mut self, i: usize, line: &[f64]) {
        debug_assert_eq!(line.len(), self.nv);
        for (j, &val) in line.iter().enumerate() {
            self.values[j * self.nx + i] = val;
        }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn all_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Writes the plain-text snapshot: a header `N_x N_v L V_c t`, then `N_v`
    /// rows of `N_x` values with 17 significant digits.
    pub fn write_snapshot<W: Write>(&self, grid: &PhaseGrid, t: f64, mut w: W) -> io::Result<()> {
        writeln!(
            w,
            "{} {} {:.16e} {:.16e} {:.16e}",
            self.nx,
            self.nv,
            grid.gx.length(),
            0.5 * grid.gv.length(),
            t
        )?;
        let mut row = String::new();
        for j in 0..self.nv {
            row.clear();
            for (i, v) in self.x_line(j).iter().enumerate() {
                if i > 0 {
                    row.push(' ');
                }
                row.push_str(&format!("{v:.16e}"));
            }
            writeln!(w, "{row}")?;
        }
        Ok(())
    }
}

/// Header and values of a snapshot file.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub nx: usize,
    pub nv: usize,
    pub length: f64,
    pub v_cut: f64,
    pub t: f64,
    pub values: Vec<f64>,
}

pub fn read_snapshot<R: BufRead>(r: R) -> Result<Snapshot, GridError> {
    let bad = |msg: &str| GridError::Snapshot(msg.to_string());
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("missing header"))?
        .map_err(|e| bad(&e.to_string()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(bad("header must have 5 fields"));
    }
    let nx: usize = fields[0].parse().map_err(|_| bad("N_x"))?;
    let nv: usize = fields[1].parse().map_err(|_| bad("N_v"))?;
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad(s));
    let (length, v_cut, t) = (num(fields[2])?, num(fields[3])?, num(fields[4])?);
    let mut values = Vec::with_capacity(nx * nv);
    for line in lines {
        let line = line.map_err(|e| bad(&e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let before = values.len();
        for tok in line.split_whitespace() {
            values.push(num(tok)?);
        }
        if values.len() - before != nx {
            return Err(bad("row length differs from N_x"));
        }
    }
    if values.len() != nx * nv {
        return Err(bad("row count differs from N_v"));
    }
    Ok(Snapshot {
        nx,
        nv,
        length,
        v_cut,
        t,
        values,
    })
}
