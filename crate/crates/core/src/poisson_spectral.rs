//! Periodic 1D Poisson solve `-φ'' = ρ`, `E = -φ'`, by discrete Fourier transform.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::PoissonError;
use crate::phase_grid::{Distribution, PhaseGrid};

/// Charge density with its mean removed.
#[derive(Debug, Clone, PartialEq)]
pub struct ChargeDensity {
    pub rho: Vec<f64>,
    pub background: f64,
    /// Mean subtracted to enforce neutrality.
    pub removed_mean: f64,
}

/// `ρ_i = dv Σ_j f_ij - background`, made zero-mean.
pub fn density_from_f(f: &Distribution, grid: &PhaseGrid, background: f64) -> ChargeDensity {
    density_from_species(&[(1.0, f)], grid, background)
}

/// `ρ_i = Σ_s q_s dv Σ_j f_s,ij - background`, made zero-mean.
pub fn density_from_species(species: &[(f64, &Distribution)], grid: &PhaseGrid, background: f64) -> ChargeDensity {
    let (nx, nv) = (grid.nx(), grid.nv());
    let dv = grid.gv.dx();
    let mut rho = vec![-background; nx];
    for &(charge, f) in species {
        let mut n = vec![0.0; nx];
        for j in 0..nv {
            for (acc, &v) in n.iter_mut().zip(f.x_line(j)) {
                *acc += v;
            }
        }
        for (r, n) in rho.iter_mut().zip(n) {
            *r += charge * dv * n;
        }
    }
    let mean = rho.iter().sum::<f64>() / nx as f64;
    rho.iter_mut().for_each(|r| *r -= mean);
    ChargeDensity {
        rho,
        background,
        removed_mean: mean,
    }
}

/// FFT plans for one grid size. Not shared across concurrent solves.
pub struct PoissonSolver {
    n: usize,
    length: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    buf: Vec<Complex<f64>>,
}

impl std::fmt::Debug for PoissonSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PoissonSolver")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

impl Clone for PoissonSolver {
    fn clone(&self) -> Self {
        Self::new(self.n, self.length)
    }
}

impl PoissonSolver {
    pub fn new(n: usize, length: f64) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            length,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            buf: vec![Complex::new(0.0, 0.0); n],
        }
    }

    /// Returns `E` and the largest imaginary part left by the inverse transform.
    fn solve_complex(&mut self, rho: &[f64]) -> Result<(Vec<f64>, f64), PoissonError> {
        let n = self.n;
        if rho.len() != n {
            return Err(PoissonError::ShapeMismatch {
                expected: n,
                got: rho.len(),
            });
        }
        let scale = rho.iter().fold(1.0f64, |m, r| m.max(r.abs()));
        let mean = rho.iter().sum::<f64>() / n as f64;
        if mean.abs() > 1e-10 * scale {
            return Err(PoissonError::NonNeutral { mean });
        }
        for (b, &r) in self.buf.iter_mut().zip(rho) {
            *b = Complex::new(r, 0.0);
        }
        self.forward.process(&mut self.buf);
        self.buf[0] = Complex::new(0.0, 0.0);
        for m in 1..n {
            // E_k = -i ρ_k / k; the unpaired Nyquist mode has no real derivative
            if 2 * m == n {
                self.buf[m] = Complex::new(0.0, 0.0);
                continue;
            }
            let wave = if 2 * m < n { m as f64 } else { m as f64 - n as f64 };
            let k = 2.0 * PI * wave / self.length;
            let r = self.buf[m];
            self.buf[m] = Complex::new(r.im / k, -r.re / k);
        }
        self.inverse.process(&mut self.buf);
        let inv_n = 1.0 / n as f64;
        let mut max_imag = 0.0f64;
        let e = self
            .buf
            .iter()
            .map(|c| {
                max_imag = max_imag.max((c.im * inv_n).abs());
                c.re * inv_n
            })
            .collect();
        Ok((e, max_imag))
    }

    pub fn solve(&mut self, rho: &[f64]) -> Result<Vec<f64>, PoissonError> {
        self.solve_complex(rho).map(|(e, _)| e)
    }
}

/// One-shot field solve on a periodic domain of length `length`.
pub fn solve_efield(rho: &ChargeDensity, length: f64) -> Result<Vec<f64>, PoissonError> {
    PoissonSolver::new(rho.rho.len(), length).solve(&rho.rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_grid::make_phase_grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn max_abs(v: &[f64]) -> f64 {
        v.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    #[test]
    fn zero_density_gives_zero_field() {
        let e = PoissonSolver::new(16, 1.0).solve(&[0.0; 16]).unwrap();
        assert!(e.iter().all(|&x| x == 0.0));
        let g = make_phase_grid(1.0, 1.0, 16, 16).unwrap();
        let f = Distribution::from_fn(&g, |_, _| 0.0);
        assert!(density_from_f(&f, &g, 0.0).rho.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn single_mode_recovery() {
        for (alpha, k, m, n) in [(0.5, 0.5, 1usize, 64usize), (0.01, 2.0 / 13.0, 2, 80), (1.3, 3.0, 3, 128)] {
            let l = 2.0 * PI / k * m as f64;
            let dx = l / n as f64;
            let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * dx).collect();
            let rho: Vec<f64> = x.iter().map(|x| alpha * (k * x).cos()).collect();
            let e = PoissonSolver::new(n, l).solve(&rho).unwrap();
            let exact: Vec<f64> = x.iter().map(|x| alpha / k * (k * x).sin()).collect();
            let err = e.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(err <= 1e-12 * max_abs(&exact), "err {err}");
        }
    }

    #[test]
    fn band_limited_density_reproduced_by_spectral_second_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 64;
        let l = 5.0;
        let modes: Vec<(f64, f64)> = (1..16).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * l / n as f64).collect();
        let rho: Vec<f64> = x
            .iter()
            .map(|&x| {
                modes
                    .iter()
                    .enumerate()
                    .map(|(m, (a, b))| {
                        let k = 2.0 * PI * (m + 1) as f64 / l;
                        a * (k * x).cos() + b * (k * x).sin()
                    })
                    .sum()
            })
            .collect();
        let e = PoissonSolver::new(n, l).solve(&rho).unwrap();
        // oracle: spectral derivative of E, computed with a direct O(N^2) DFT
        let de: Vec<f64> = (0..n)
            .map(|p| {
                let mut acc = 0.0;
                for m in 1..n / 2 {
                    let k = 2.0 * PI * m as f64 / l;
                    let (mut re, mut im) = (0.0, 0.0);
                    for q in 0..n {
                        let ph = -2.0 * PI * (m * q) as f64 / n as f64;
                        re += e[q] * ph.cos();
                        im += e[q] * ph.sin();
                    }
                    // d/dx of 2 Re(c e^{ikx}) / n
                    let ph = 2.0 * PI * (m * p) as f64 / n as f64;
                    acc += 2.0 / n as f64 * k * (-(re * ph.sin() + im * ph.cos()));
                }
                acc
            })
            .collect();
        // -φ'' = ρ and E = -φ' give E' = ρ
        for (d, r) in de.iter().zip(&rho) {
            assert!((d - r).abs() < 1e-10, "{d} vs {r}");
        }
    }

    #[test]
    fn field_mean_linearity_and_realness() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let n = 96;
        let zero_mean = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let m = v.iter().sum::<f64>() / n as f64;
            v.iter_mut().for_each(|x| *x -= m);
            v
        };
        let (r1, r2) = (zero_mean(&mut rng), zero_mean(&mut rng));
        let mut s = PoissonSolver::new(n, 7.0);
        let (e1, im1) = s.solve_complex(&r1).unwrap();
        let e2 = s.solve(&r2).unwrap();
        let scale = max_abs(&e1).max(max_abs(&e2));
        assert!((e1.iter().sum::<f64>() / n as f64).abs() <= 1e-13 * scale);
        assert!(im1 < 1e-13 * scale);
        let (a, b) = (0.7, -1.9);
        let combo: Vec<f64> = r1.iter().zip(&r2).map(|(x, y)| a * x + b * y).collect();
        let ec = s.solve(&combo).unwrap();
        for i in 0..n {
            assert!((ec[i] - (a * e1[i] + b * e2[i])).abs() <= 1e-13 * scale * 4.0);
        }
    }

    #[test]
    fn non_neutral_density_is_rejected() {
        let err = PoissonSolver::new(16, 1.0).solve(&[0.1; 16]).unwrap_err();
        assert!(matches!(err, PoissonError::NonNeutral { .. }));
    }

    #[test]
    fn landau_density_matches_perturbation() {
        let (alpha, k) = (0.5, 0.5);
        let g = make_phase_grid(2.0 * PI / k, 2.0 * PI, 64, 160).unwrap();
        let f = Distribution::from_fn(&g, |x, v| (1.0 + alpha * (k * x).cos()) * (-0.5 * v * v).exp() / (2.0 * PI).sqrt());
        let rho = density_from_f(&f, &g, 1.0);
        for (i, r) in rho.rho.iter().enumerate() {
            let x = g.gx.center(i);
            assert!((r - alpha * (k * x).cos()).abs() < 1e-8);
        }
    }

    #[test]
    fn equal_species_cancel() {
        let g = make_phase_grid(3.0, 4.0, 16, 32).unwrap();
        let f = Distribution::from_fn(&g, |x, v| (1.0 + 0.1 * x.sin()) * (-v * v).exp());
        let rho = density_from_species(&[(1.0, &f), (-1.0, &f)], &g, 0.0);
        assert!(rho.rho.iter().all(|&r| r.abs() < 1e-15));
    }
}
