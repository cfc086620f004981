//! Semi-Lagrangian numerical fluxes for `u_t + a u_x = 0` with constant `a`.
//!
//! For each interface `x_{i+1/2}` the high-order flux `H_{i+1/2}` approximates
//! the amount of `u` swept across the interface during one step, and `h_{i+1/2}`
//! is its first-order monotone counterpart. When `|a| dt > dx` the swept
//! interval is split into whole cells, summed directly, plus a fractional part
//! of CFL `xi in [0, 1)` reconstructed at the foot interface `i* + 1/2`.
//!
//! The fifth-order reconstruction is a convex combination of three cubic-in-`xi`
//! candidate fluxes on three-point stencils. Negative speeds use the mirror
//! image of the positive-speed kernel about the interface.

use crate::error::GridError;

/// Regularization in the nonlinear weights.
pub const DEFAULT_EPSILON: f64 = 1e-6;

/// Minimum line length: a five-point stencil plus one shifted cell.
pub const MIN_LINE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightsMode {
    #[default]
    Nonlinear,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoConfig {
    pub mode: WeightsMode,
    pub epsilon: f64,
}

impl Default for WenoConfig {
    fn default() -> Self {
        Self {
            mode: WeightsMode::Nonlinear,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl WenoConfig {
    pub fn linear() -> Self {
        Self {
            mode: WeightsMode::Linear,
            ..Self::default()
        }
    }
}

/// One line of point values advected with constant speed `a` for time `dt`.
#[derive(Debug, Clone, Copy)]
pub struct LineField<'a> {
    pub u: &'a [f64],
    pub a: f64,
    pub dt: f64,
    pub dx: f64,
}

impl<'a> LineField<'a> {
    pub fn new(u: &'a [f64], a: f64, dt: f64, dx: f64) -> Result<Self, GridError> {
        if u.len() < MIN_LINE {
            return Err(GridError::TooSmall {
                n: u.len(),
                min: MIN_LINE,
            });
        }
        if !(dx > 0.0) || !(dt >= 0.0) || !a.is_finite() {
            return Err(GridError::InvalidExtent { lo: 0.0, hi: dx });
        }
        Ok(Self { u, a, dt, dx })
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn shift(&self) -> ShiftDecomposition {
        shift_decompose(self.a, self.dt, self.dx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wind {
    Positive,
    Negative,
    Still,
}

/// `|a| dt = (cells + xi) dx` with `xi in [0, 1)`.
///
/// For `a > 0` the foot of the characteristic through `x_i` lies in
/// `(x_{i*-1}, x_{i*}]` with `i* = i - cells` and `xi = (x_{i*} - x*_i)/dx`.
/// For `a < 0` it lies in `[x_{i*}, x_{i*+1})` with `i* = i + cells` and
/// `xi = (x*_i - x_{i*})/dx`; a foot exactly on a grid point gives `xi = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftDecomposition {
    pub wind: Wind,
    pub cells: usize,
    pub xi: f64,
}

impl ShiftDecomposition {
    pub const STILL: Self = Self {
        wind: Wind::Still,
        cells: 0,
        xi: 0.0,
    };

    /// `i* - i`.
    pub fn foot_offset(&self) -> isize {
        match self.wind {
            Wind::Positive => -(self.cells as isize),
            Wind::Negative => self.cells as isize,
            Wind::Still => 0,
        }
    }

    /// Whole-cell displacement with the sign of the speed.
    pub fn signed_cells(&self) -> isize {
        -self.foot_offset()
    }
}

pub fn shift_decompose(a: f64, dt: f64, dx: f64) -> ShiftDecomposition {
    if a == 0.0 || dt == 0.0 {
        return ShiftDecomposition::STILL;
    }
    let cfl = a.abs() * dt / dx;
    let whole = cfl.floor();
    ShiftDecomposition {
        wind: if a > 0.0 {
            Wind::Positive
        } else {
            Wind::Negative
        },
        cells: whole as usize,
        xi: cfl - whole,
    }
}

/// Candidate-flux coefficients and linear weights at a fixed `xi`, in the
/// positive-speed orientation: stencil `(u_{-2}, u_{-1}, u_0, u_1, u_2)` around
/// the interface between `u_0` and `u_1`, upwind side `u_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidates {
    /// `coef[r]` multiplies the three values of stencil `r` in increasing index order.
    pub coef: [[f64; 3]; 3],
    pub gamma: [f64; 3],
}

impl Candidates {
    pub fn new(xi: f64) -> Self {
        let xi2 = xi * xi;
        let xi3 = xi2 * xi;
        let coef = [
            [
                xi3 / 6.0 - xi2 / 2.0 + xi / 3.0,
                -xi3 / 3.0 + 1.5 * xi2 - 7.0 * xi / 6.0,
                xi3 / 6.0 - xi2 + 11.0 * xi / 6.0,
            ],
            [
                xi3 / 6.0 - xi / 6.0,
                -xi3 / 3.0 + xi2 / 2.0 + 5.0 * xi / 6.0,
                xi3 / 6.0 - xi2 / 2.0 + xi / 3.0,
            ],
            [
                xi3 / 6.0 + xi2 / 2.0 + xi / 3.0,
                -xi3 / 3.0 - xi2 / 2.0 + 5.0 * xi / 6.0,
                xi3 / 6.0 - xi / 6.0,
            ],
        ];
        Self {
            coef,
            gamma: linear_weights(xi, Wind::Positive),
        }
    }

    /// The three candidate fluxes divided by `dx`.
    #[inline]
    pub fn fluxes(&self, s: &[f64; 5]) -> [f64; 3] {
        let c = &self.coef;
        [
            c[0][0] * s[0] + c[0][1] * s[1] + c[0][2] * s[2],
            c[1][0] * s[1] + c[1][1] * s[2] + c[1][2] * s[3],
            c[2][0] * s[2] + c[2][1] * s[3] + c[2][2] * s[4],
        ]
    }

    /// Reconstructed flux divided by `dx`.
    #[inline]
    pub fn reconstruct(&self, s: &[f64; 5], cfg: &WenoConfig) -> f64 {
        let q = self.fluxes(s);
        let w = match cfg.mode {
            WeightsMode::Linear => self.gamma,
            WeightsMode::Nonlinear => nonlinear_weights(&self.gamma, &smoothness_indicators(s), cfg.epsilon),
        };
        w[0] * q[0] + w[1] * q[1] + w[2] * q[2]
    }
}

/// Linear weights ordered by stencil, as listed for each wind direction: for
/// negative speed the stencils run `{i-1..i+1}, {i..i+2}, {i+1..i+3}`.
pub fn linear_weights(xi: f64, wind: Wind) -> [f64; 3] {
    let xi2 = xi * xi;
    let near = 1.0 / 10.0 + 3.0 / 20.0 * xi + xi2 / 20.0;
    let mid = 3.0 / 5.0 + xi / 10.0 - xi2 / 10.0;
    let far = 3.0 / 10.0 - xi / 4.0 + xi2 / 20.0;
    match wind {
        Wind::Negative => [far, mid, near],
        _ => [near, mid, far],
    }
}

/// Smoothness indicators of the three stencils in positive orientation.
#[inline]
pub fn smoothness_indicators(s: &[f64; 5]) -> [f64; 3] {
    const C: f64 = 13.0 / 12.0;
    let sq = |x: f64| x * x;
    [
        C * sq(s[0] - 2.0 * s[1] + s[2]) + 0.25 * sq(s[0] - 4.0 * s[1] + 3.0 * s[2]),
        C * sq(s[1] - 2.0 * s[2] + s[3]) + 0.25 * sq(s[1] - s[3]),
        C * sq(s[2] - 2.0 * s[3] + s[4]) + 0.25 * sq(3.0 * s[2] - 4.0 * s[3] + s[4]),
    ]
}

#[inline]
pub fn nonlinear_weights(gamma: &[f64; 3], beta: &[f64; 3], epsilon: f64) -> [f64; 3] {
    let w0 = gamma[0] / ((epsilon + beta[0]) * (epsilon + beta[0]));
    let w1 = gamma[1] / ((epsilon + beta[1]) * (epsilon + beta[1]));
    let w2 = gamma[2] / ((epsilon + beta[2]) * (epsilon + beta[2]));
    let sum = w0 + w1 + w2;
    [w0 / sum, w1 / sum, w2 / sum]
}

#[inline(always)]
fn wrap(j: isize, n: isize) -> usize {
    let k = if j < 0 {
        j + n
    } else if j >= n {
        j - n
    } else {
        j
    };
    if (0..n).contains(&k) {
        k as usize
    } else {
        k.rem_euclid(n) as usize
    }
}

/// Monotone fluxes `h` and fifth-order fluxes `H` for every interface
/// `k + 1/2`, `k = 0..n`, written into `h` and `big_h`.
pub fn line_fluxes(
    u: &[f64],
    shift: &ShiftDecomposition,
    dx: f64,
    cfg: &WenoConfig,
    h: &mut [f64],
    big_h: &mut [f64],
) {
    let n = u.len();
    debug_assert!(n >= MIN_LINE);
    debug_assert!(h.len() == n && big_h.len() == n);
    let ni = n as isize;
    let at = |j: isize| u[wrap(j, ni)];
    let cells = shift.cells as isize;
    let xi = shift.xi;
    match shift.wind {
        Wind::Still => {
            h.fill(0.0);
            big_h.fill(0.0);
        }
        Wind::Positive => {
            let cand = Candidates::new(xi);
            for k in 0..ni {
                let foot = k - cells;
                let mut whole = 0.0;
                for j in foot + 1..=k {
                    whole += dx * at(j);
                }
                if xi == 0.0 {
                    h[k as usize] = whole;
                    big_h[k as usize] = whole;
                    continue;
                }
                let s = [at(foot - 2), at(foot - 1), at(foot), at(foot + 1), at(foot + 2)];
                h[k as usize] = whole + xi * dx * s[2];
                big_h[k as usize] = whole + dx * cand.reconstruct(&s, cfg);
            }
        }
        Wind::Negative => {
            let cand = Candidates::new(xi);
            for k in 0..ni {
                let foot = k + cells;
                let mut whole = 0.0;
                for j in k + 1..=foot {
                    whole += dx * at(j);
                }
                let whole = -whole;
                if xi == 0.0 {
                    h[k as usize] = whole;
                    big_h[k as usize] = whole;
                    continue;
                }
                // mirror image about x_{foot+1/2}
                let s = [at(foot + 3), at(foot + 2), at(foot + 1), at(foot), at(foot - 1)];
                h[k as usize] = whole - xi * dx * s[2];
                big_h[k as usize] = whole - dx * cand.reconstruct(&s, cfg);
            }
        }
    }
}

pub fn flux_first_order(line: &LineField) -> Vec<f64> {
    let n = line.len();
    let (mut h, mut big_h) = (vec![0.0; n], vec![0.0; n]);
    line_fluxes(line.u, &line.shift(), line.dx, &WenoConfig::linear(), &mut h, &mut big_h);
    h
}

pub fn flux_weno5(line: &LineField, cfg: &WenoConfig) -> Vec<f64> {
    let n = line.len();
    let (mut h, mut big_h) = (vec![0.0; n], vec![0.0; n]);
    line_fluxes(line.u, &line.shift(), line.dx, cfg, &mut h, &mut big_h);
    big_h
}
