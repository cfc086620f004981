//! Mesh-refinement studies against exact or reference solutions.

use std::fmt::Write as _;

use slweno_core::phase_grid::{Distribution, PhaseGrid};

use crate::config::{preset, Preset, RunConfig};
use crate::error::HarnessError;
use crate::run::execute;
use crate::setup::{cos6_hump, grid};

/// Refinement factor of the reference run for presets without an exact solution.
pub const REFERENCE_FACTOR: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// Mean absolute error over grid points.
    pub l1: f64,
    pub l1_order: Option<f64>,
    pub linf: f64,
    pub linf_order: Option<f64>,
    /// Smallest value of `f` seen over the run.
    pub f_min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudyOptions {
    pub cfl: f64,
    pub limiter: bool,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            cfl: 0.8,
            limiter: true,
        }
    }
}

pub fn check_doubling(meshes: &[usize]) -> Result<(), HarnessError> {
    if meshes.is_empty() || meshes.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(HarnessError::MeshList(meshes.to_vec()));
    }
    Ok(())
}

/// Grid counts `(N_x, N_v)` for mesh parameter `n`.
pub fn mesh_shape(p: Preset, n: usize) -> (usize, usize) {
    match p {
        Preset::VpSmooth => (n, 2 * n),
        _ => (n, n),
    }
}

/// Exact solution at time `t`, when the preset has one.
pub fn exact_solution(p: Preset, x: f64, v: f64, t: f64) -> Option<f64> {
    match p {
        Preset::AdvectSin4 => Some((x + v - 2.0 * t).sin().powi(4)),
        Preset::RigidCos6 => {
            let (s, c) = t.sin_cos();
            Some(cos6_hump(x * c + v * s, -x * s + v * c))
        }
        _ => None,
    }
}

pub fn has_reference(p: Preset) -> bool {
    matches!(p, Preset::AdvectSin4 | Preset::RigidCos6 | Preset::VpSmooth)
}

/// `(mean |a - b|, max |a - b|)`.
pub fn error_norms(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut l1 = 0.0;
    let mut linf = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = (x - y).abs();
        l1 += d;
        linf = linf.max(d);
    }
    (l1 / a.len() as f64, linf)
}

fn mesh_config(base: &RunConfig, n: usize, opts: StudyOptions) -> RunConfig {
    let mut cfg = base.clone();
    (cfg.nx, cfg.nv) = mesh_shape(base.preset, n);
    cfg.cfl = opts.cfl;
    cfg.limiter = opts.limiter;
    cfg.diag_stride = 1;
    cfg.snapshot_times.clear();
    cfg
}

/// Final state of `base` at mesh `n`, and the smallest value seen on the way.
fn solve(base: &RunConfig, n: usize, opts: StudyOptions) -> Result<(PhaseGrid, Distribution, f64), HarnessError> {
    let cfg = mesh_config(base, n, opts);
    let res = execute(&cfg)?;
    let f_min = res.records().iter().map(|r| r.f_min()).fold(f64::INFINITY, f64::min);
    let f = res.sim.species[0].f.clone();
    Ok((res.sim.grid, f, f_min))
}

/// Target values on the coarse grid: the exact solution, or a run on a mesh
/// refined by [`REFERENCE_FACTOR`] sampled at the coincident centers.
fn reference(base: &RunConfig, g: &PhaseGrid, n: usize, opts: StudyOptions) -> Result<Vec<f64>, HarnessError> {
    let p = base.preset;
    if exact_solution(p, 0.0, 0.0, 0.0).is_some() {
        return Ok(g.sample(|x, v| exact_solution(p, x, v, base.t_final).expect("exact")));
    }
    if !has_reference(p) {
        return Err(HarnessError::NoReference(p.name().to_string()));
    }
    let r = REFERENCE_FACTOR;
    let (_, fine, _) = solve(base, n * r, opts)?;
    let (nx, nv) = (g.nx(), g.nv());
    let mut out = Vec::with_capacity(nx * nv);
    for j in 0..nv {
        for i in 0..nx {
            out.push(fine.get(r * i + r / 2, r * j + r / 2));
        }
    }
    Ok(out)
}

/// Error table for `base` over a doubling list of meshes.
pub fn convergence_study(base: &RunConfig, meshes: &[usize], opts: StudyOptions) -> Result<Vec<ConvergenceRow>, HarnessError> {
    check_doubling(meshes)?;
    if !has_reference(base.preset) {
        return Err(HarnessError::NoReference(base.preset.name().to_string()));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in meshes {
        let (g, f, f_min) = solve(base, n, opts)?;
        let target = reference(base, &g, n, opts)?;
        let (l1, linf) = error_norms(f.values(), &target);
        let prev = rows.last();
        rows.push(ConvergenceRow {
            n,
            l1,
            l1_order: prev.map(|p| (p.l1 / l1).log2()),
            linf,
            linf_order: prev.map(|p| (p.linf / linf).log2()),
            f_min,
        });
    }
    Ok(rows)
}

/// Study of a named preset at its default final time.
pub fn convergence_study_preset(p: Preset, meshes: &[usize], opts: StudyOptions) -> Result<Vec<ConvergenceRow>, HarnessError> {
    convergence_study(&preset(p), meshes, opts)
}

pub fn format_table(rows: &[ConvergenceRow]) -> String {
    let order = |o: Option<f64>| o.map_or("--".to_string(), |v| format!("{v:.2}"));
    let mut s = format!("{:>6} {:>12} {:>6} {:>12} {:>6} {:>12}\n", "N", "L1 error", "order", "Linf error", "order", "f_min");
    for r in rows {
        let _ = writeln!(
            s,
            "{:>6} {:>12.2E} {:>6} {:>12.2E} {:>6} {:>12.2E}",
            r.n,
            r.l1,
            order(r.l1_order),
            r.linf,
            order(r.linf_order),
            r.f_min
        );
    }
    s
}

pub fn format_csv(rows: &[ConvergenceRow]) -> String {
    let opt = |o: Option<f64>| o.map_or(String::new(), |v| format!("{v:.16e}"));
    let mut s = String::from("n,l1_error,l1_order,linf_error,linf_order,f_min\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{:.16e},{},{:.16e},{},{:.16e}",
            r.n,
            r.l1,
            opt(r.l1_order),
            r.linf,
            opt(r.linf_order),
            r.f_min
        );
    }
    s
}

/// Grid of a preset at mesh `n`, for callers that sample their own data.
pub fn study_grid(p: Preset, n: usize) -> Result<PhaseGrid, HarnessError> {
    let mut cfg = preset(p);
    (cfg.nx, cfg.nv) = mesh_shape(p, n);
    grid(&cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn mesh_lists_must_double() {
        assert!(check_doubling(&[40, 80, 160]).is_ok());
        assert!(check_doubling(&[40]).is_ok());
        assert!(check_doubling(&[40, 80, 120]).is_err());
        assert!(check_doubling(&[]).is_err());
        let err = convergence_study_preset(Preset::AdvectSin4, &[40, 60], StudyOptions::default());
        assert!(matches!(err, Err(HarnessError::MeshList(_))));
    }

    #[test]
    fn exact_solution_against_itself_has_zero_error() {
        let g = study_grid(Preset::RigidCos6, 32).unwrap();
        let a = g.sample(|x, v| exact_solution(Preset::RigidCos6, x, v, 1.3).unwrap());
        assert_eq!(error_norms(&a, &a), (0.0, 0.0));
    }

    #[test]
    fn rotation_returns_after_a_full_period() {
        for (x, v) in [(0.3, -0.2), (1.0, 0.5), (-0.7, 0.9)] {
            let a = exact_solution(Preset::RigidCos6, x, v, 2.0 * PI).unwrap();
            assert!((a - cos6_hump(x, v)).abs() < 1e-13);
            // quarter turn maps (x, v) to (-v, x)
            let q = exact_solution(Preset::RigidCos6, -v, x, 0.5 * PI).unwrap();
            assert!((q - cos6_hump(x, v)).abs() < 1e-13);
        }
    }

    #[test]
    fn presets_without_reference_are_rejected() {
        let r = convergence_study_preset(Preset::LandauStrong, &[16, 32], StudyOptions::default());
        assert!(matches!(r, Err(HarnessError::NoReference(_))));
    }

    #[test]
    fn small_advection_study_shows_high_order() {
        let rows = convergence_study_preset(Preset::AdvectSin4, &[40, 80], StudyOptions::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[1].l1_order.unwrap() > 3.0);
        assert!(rows.iter().all(|r| r.f_min >= -1e-12));
        let table = format_table(&rows);
        assert_eq!(table.lines().count(), 3);
    }
}
