//! Conservative semi-Lagrangian update of one periodic line.

use crate::error::MonotoneViolation;
use crate::mpp_limiter::{limit_in_place, LimiterScratch};
use crate::phase_grid::Bounds;
use crate::sl_weno::{line_fluxes, LineField, ShiftDecomposition, WenoConfig};

/// Reusable buffers for line updates; one per worker.
#[derive(Debug, Default, Clone)]
pub struct LineWorkspace {
    monotone: Vec<f64>,
    high: Vec<f64>,
    limiter: LimiterScratch,
}

impl LineWorkspace {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Advects `line` and returns the updated values. `bounds = Some(..)` turns the
/// limiter on.
pub fn advect_line(
    line: &LineField,
    bounds: Option<Bounds>,
    cfg: &WenoConfig,
) -> Result<Vec<f64>, MonotoneViolation> {
    let mut out = vec![0.0; line.len()];
    advect_line_into(
        line.u,
        &line.shift(),
        line.dx,
        bounds,
        cfg,
        &mut LineWorkspace::new(),
        &mut out,
    )?;
    Ok(out)
}

/// `out_i = u_i - (H_{i+1/2} - H_{i-1/2}) / dx` with limited or raw fluxes.
pub fn advect_line_into(
    u: &[f64],
    shift: &ShiftDecomposition,
    dx: f64,
    bounds: Option<Bounds>,
    cfg: &WenoConfig,
    ws: &mut LineWorkspace,
    out: &mut [f64],
) -> Result<(), MonotoneViolation> {
    let n = u.len();
    debug_assert_eq!(out.len(), n);
    ws.monotone.resize(n, 0.0);
    ws.high.resize(n, 0.0);
    line_fluxes(u, shift, dx, cfg, &mut ws.monotone, &mut ws.high);
    if let Some(b) = bounds {
        limit_in_place(u, &mut ws.high, &ws.monotone, dx, b, &mut ws.limiter)?;
    }
    let flux = &ws.high;
    out[0] = u[0] - (flux[0] - flux[n - 1]) / dx;
    for i in 1..n {
        out[i] = u[i] - (flux[i] - flux[i - 1]) / dx;
    }
    Ok(())
}
