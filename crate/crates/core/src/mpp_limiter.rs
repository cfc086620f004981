//! Parametrized maximum-principle-preserving flux limiter.
//!
//! Each limited flux is the convex blend `θ (H - h) + h` of the high-order
//! flux `H` and the monotone flux `h`. Per cell, the upper bound `u_M` and the
//! lower bound `u_m` each give a linear constraint on the pair
//! `(θ_{i-1/2}, θ_{i+1/2})`; a case analysis on the signs of the flux
//! deviations decouples it into per-interface caps `Λ`, and each interface takes
//! the smallest cap proposed by its two neighbouring cells.
//!
//! Interface `k` is `x_{k+1/2}`; cell `i` is bounded by interfaces `i-1` (left,
//! wrapped) and `i` (right).

use crate::error::{BoundSide, MonotoneViolation};
use crate::phase_grid::Bounds;

#[derive(Debug, Clone, Copy)]
pub struct LimiterInput<'a> {
    pub u: &'a [f64],
    pub high: &'a [f64],
    pub monotone: &'a [f64],
    pub dx: f64,
    pub bounds: Bounds,
}

/// Per-cell caps `Λ^M_{-1/2}, Λ^M_{+1/2}, Λ^m_{-1/2}, Λ^m_{+1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimiterBounds {
    pub max_minus: Vec<f64>,
    pub max_plus: Vec<f64>,
    pub min_minus: Vec<f64>,
    pub min_plus: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxSet {
    pub high: Vec<f64>,
    pub monotone: Vec<f64>,
    pub theta: Vec<f64>,
    pub limited: Vec<f64>,
}

#[inline]
fn left(i: usize, n: usize) -> usize {
    if i == 0 {
        n - 1
    } else {
        i - 1
    }
}

#[inline]
fn right(i: usize, n: usize) -> usize {
    if i + 1 == n {
        0
    } else {
        i + 1
    }
}

/// `(Γ^M_i, Γ^m_i)`, the distance of the monotone update from each bound.
pub fn gamma_terms(input: &LimiterInput) -> Result<(Vec<f64>, Vec<f64>), MonotoneViolation> {
    let n = input.u.len();
    let mut gmax = vec![0.0; n];
    let mut gmin = vec![0.0; n];
    gamma_into(input.u, input.monotone, input.dx, input.bounds, &mut gmax, &mut gmin)?;
    Ok((gmax, gmin))
}

fn gamma_into(
    u: &[f64],
    h: &[f64],
    dx: f64,
    bounds: Bounds,
    gmax: &mut [f64],
    gmin: &mut [f64],
) -> Result<(), MonotoneViolation> {
    let n = u.len();
    let tol = bounds.tol_mach();
    for i in 0..n {
        let dh = (h[i] - h[left(i, n)]) / dx;
        let gm = bounds.max - u[i] + dh;
        let gn = bounds.min - u[i] + dh;
        if gm < -tol {
            return Err(MonotoneViolation {
                cell: i,
                side: BoundSide::Max,
                gamma: gm,
            });
        }
        if gn > tol {
            return Err(MonotoneViolation {
                cell: i,
                side: BoundSide::Min,
                gamma: gn,
            });
        }
        gmax[i] = gm;
        gmin[i] = gn;
    }
    Ok(())
}

/// `F_{k+1/2} = (H_{k+1/2} - h_{k+1/2}) / dx`.
pub fn flux_deviation(high: &[f64], monotone: &[f64], dx: f64) -> Vec<f64> {
    high.iter().zip(monotone).map(|(hh, h)| (hh - h) / dx).collect()
}

#[inline]
fn clamp01(x: f64) -> f64 {
    // NaN (0/0 cannot occur on a reached branch) maps to 0
    if x >= 1.0 {
        1.0
    } else if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Caps from the upper-bound constraint for one cell.
#[inline]
fn max_side(gamma: f64, f_left: f64, f_right: f64) -> (f64, f64) {
    match (f_left <= 0.0, f_right >= 0.0) {
        (true, true) => (1.0, 1.0),
        (true, false) => (1.0, clamp01(gamma / -f_right)),
        (false, true) => (clamp01(gamma / f_left), 1.0),
        (false, false) => {
            if f_left - f_right - gamma <= 0.0 {
                (1.0, 1.0)
            } else {
                let cap = clamp01(gamma / (f_left - f_right));
                (cap, cap)
            }
        }
    }
}

/// Caps from the lower-bound constraint for one cell.
#[inline]
fn min_side(gamma: f64, f_left: f64, f_right: f64) -> (f64, f64) {
    match (f_left >= 0.0, f_right <= 0.0) {
        (true, true) => (1.0, 1.0),
        (true, false) => (1.0, clamp01(gamma / -f_right)),
        (false, true) => (clamp01(gamma / f_left), 1.0),
        (false, false) => {
            if f_left - f_right - gamma >= 0.0 {
                (1.0, 1.0)
            } else {
                let cap = clamp01(gamma / (f_left - f_right));
                (cap, cap)
            }
        }
    }
}

/// Case analysis for every cell.
pub fn lambda_bounds(gmax: &[f64], gmin: &[f64], dev: &[f64]) -> LimiterBounds {
    let n = dev.len();
    let mut b = LimiterBounds {
        max_minus: vec![0.0; n],
        max_plus: vec![0.0; n],
        min_minus: vec![0.0; n],
        min_plus: vec![0.0; n],
    };
    for i in 0..n {
        let (fl, fr) = (dev[left(i, n)], dev[i]);
        (b.max_minus[i], b.max_plus[i]) = max_side(gmax[i], fl, fr);
        (b.min_minus[i], b.min_plus[i]) = min_side(gmin[i], fl, fr);
    }
    b
}

/// `θ_{k+1/2} = min(Λ_{+1/2, I_k}, Λ_{-1/2, I_{k+1}})`.
pub fn theta(bounds: &LimiterBounds) -> Vec<f64> {
    let n = bounds.max_plus.len();
    (0..n)
        .map(|k| {
            let r = right(k, n);
            let from_left_cell = bounds.max_plus[k].min(bounds.min_plus[k]);
            let from_right_cell = bounds.max_minus[r].min(bounds.min_minus[r]);
            from_left_cell.min(from_right_cell)
        })
        .collect()
}

/// Full pipeline returning all intermediate fluxes.
pub fn apply_limiter(input: &LimiterInput) -> Result<FluxSet, MonotoneViolation> {
    let (gmax, gmin) = gamma_terms(input)?;
    let dev = flux_deviation(input.high, input.monotone, input.dx);
    let caps = lambda_bounds(&gmax, &gmin, &dev);
    let theta = theta(&caps);
    let limited = theta
        .iter()
        .zip(input.high.iter().zip(input.monotone))
        .map(|(&t, (&hh, &h))| t * (hh - h) + h)
        .collect();
    Ok(FluxSet {
        high: input.high.to_vec(),
        monotone: input.monotone.to_vec(),
        theta,
        limited,
    })
}

/// Scratch buffers for [`limit_in_place`].
#[derive(Debug, Default, Clone)]
pub struct LimiterScratch {
    gmax: Vec<f64>,
    gmin: Vec<f64>,
    dev: Vec<f64>,
    cap_plus: Vec<f64>,
    cap_minus: Vec<f64>,
}

/// Same result as [`apply_limiter`], overwriting `high` with the limited
/// fluxes. Used by the line sweeps to avoid per-line allocation.
pub fn limit_in_place(
    u: &[f64],
    high: &mut [f64],
    monotone: &[f64],
    dx: f64,
    bounds: Bounds,
    scratch: &mut LimiterScratch,
) -> Result<(), MonotoneViolation> {
    let n = u.len();
    let s = scratch;
    for v in [&mut s.gmax, &mut s.gmin, &mut s.dev, &mut s.cap_plus, &mut s.cap_minus] {
        v.resize(n, 0.0);
    }
    gamma_into(u, monotone, dx, bounds, &mut s.gmax, &mut s.gmin)?;
    for k in 0..n {
        s.dev[k] = (high[k] - monotone[k]) / dx;
    }
    for i in 0..n {
        let (fl, fr) = (s.dev[left(i, n)], s.dev[i]);
        let (mm, mp) = max_side(s.gmax[i], fl, fr);
        let (nm, np) = min_side(s.gmin[i], fl, fr);
        s.cap_minus[i] = mm.min(nm);
        s.cap_plus[i] = mp.min(np);
    }
    for k in 0..n {
        let t = s.cap_plus[k].min(s.cap_minus[right(k, n)]);
        high[k] = t * (high[k] - monotone[k]) + monotone[k];
    }
    Ok(())
}
