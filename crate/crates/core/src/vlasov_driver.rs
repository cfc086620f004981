//! Strang-split time stepping for 1D-1V kinetic models.
//!
//! A step is an x half-sweep, a field solve, a full v-sweep and a second x
//! half-sweep. Each sweep advects independent lines in parallel.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::diagnostics::{self, DiagnosticsRecord};
use crate::error::{MonotoneViolation, SolverError};
use crate::phase_grid::{Distribution, PhaseGrid};
use crate::poisson_spectral::{density_from_species, PoissonSolver};
use crate::sl_advect::{advect_line_into, LineWorkspace};
use crate::sl_weno::{shift_decompose, WenoConfig};

/// Default Courant number.
pub const DEFAULT_CFL: f64 = 0.8;

/// Temporal envelope of an external drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope {
    /// Sine ramp to a plateau on [50, 150), cosine ramp down to zero at 200.
    KeenJ,
    /// Sigmoid switched on near t = 10 and off near t = 110.
    KeenA,
}

/// `E_ext(x, t) = A_d(t) sin(kx - ωt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drive {
    pub envelope: Envelope,
    pub amplitude: f64,
    pub omega: f64,
    pub k: f64,
}

impl Drive {
    pub fn keen_j() -> Self {
        Self {
            envelope: Envelope::KeenJ,
            amplitude: 0.052,
            omega: 0.37,
            k: 0.26,
        }
    }

    pub fn keen_a() -> Self {
        Self {
            envelope: Envelope::KeenA,
            amplitude: 0.4,
            omega: 0.37,
            k: 0.26,
        }
    }

    /// `A_d(t)`.
    pub fn envelope_at(&self, t: f64) -> f64 {
        let a = self.amplitude;
        match self.envelope {
            Envelope::KeenJ => {
                if t < 50.0 {
                    a * (t * PI / 100.0).sin()
                } else if t < 150.0 {
                    a
                } else if t < 200.0 {
                    a * ((t - 150.0) * PI / 100.0).cos()
                } else {
                    0.0
                }
            }
            Envelope::KeenA => {
                if t < 60.0 {
                    a / (1.0 + (-40.0 * (t - 10.0)).exp())
                } else {
                    a * (1.0 - 1.0 / (1.0 + (-40.0 * (t - 110.0)).exp()))
                }
            }
        }
    }

    pub fn field_at(&self, x: f64, t: f64) -> f64 {
        self.envelope_at(t) * (self.k * x - self.omega * t).sin()
    }
}

/// Which equation the sweeps solve.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    /// `f_t + f_x + f_v = 0`, `dt = CFL dx / 2`.
    Advection,
    /// `f_t - v f_x + x f_v = 0`, `dt = CFL dx / (2π)`.
    RigidRotation,
    /// Self-consistent field from `-φ'' = Σ q_s ∫ f_s dv - background`.
    VlasovPoisson { background: f64, drive: Option<Drive> },
}

/// One kinetic species.
#[derive(Debug, Clone, PartialEq)]
pub struct Species {
    pub name: String,
    /// Weight of `∫ f dv` in the charge density.
    pub charge: f64,
    /// Factor multiplying the field in the v-equation.
    pub coupling: f64,
    pub mass: f64,
    pub f: Distribution,
}

impl Species {
    /// Electrons against a fixed neutralizing background.
    pub fn single(f: Distribution) -> Self {
        Self {
            name: "f".into(),
            charge: 1.0,
            coupling: 1.0,
            mass: 1.0,
            f,
        }
    }

    pub fn electrons(f: Distribution) -> Self {
        Self {
            name: "electrons".into(),
            charge: -1.0,
            coupling: -1.0,
            mass: 1.0,
            f,
        }
    }

    pub fn ions(f: Distribution, mass_ratio: f64) -> Self {
        Self {
            name: "ions".into(),
            charge: 1.0,
            coupling: 1.0 / mass_ratio,
            mass: mass_ratio,
            f,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub cfl: f64,
    pub limiter: bool,
    pub weno: WenoConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            cfl: DEFAULT_CFL,
            limiter: true,
            weno: WenoConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPlan {
    pub dt: f64,
    pub cfl: f64,
    pub alpha_x: f64,
    pub alpha_v: f64,
}

/// Advects every x-line `j` with speed `speeds[j]` for `dt`.
pub fn sweep_x(
    f: &mut Distribution,
    grid: &PhaseGrid,
    speeds: &[f64],
    dt: f64,
    limiter: bool,
    cfg: &WenoConfig,
) -> Result<(), MonotoneViolation> {
    let nx = grid.nx();
    let dx = grid.gx.dx();
    let bounds = limiter.then(|| f.bounds());
    f.values_mut().par_chunks_mut(nx).zip(speeds).try_for_each_init(
        || (LineWorkspace::new(), Vec::with_capacity(nx)),
        |(ws, buf), (row, &a)| {
            buf.clear();
            buf.extend_from_slice(row);
            advect_line_into(buf, &shift_decompose(a, dt, dx), dx, bounds, cfg, ws, row)
        },
    )
}

/// Advects every v-line `i` with speed `speeds[i]` for `dt`. `scratch` holds a
/// v-major copy of the field.
pub fn sweep_v(
    f: &mut Distribution,
    grid: &PhaseGrid,
    speeds: &[f64],
    dt: f64,
    limiter: bool,
    cfg: &WenoConfig,
    scratch: &mut Vec<f64>,
) -> Result<(), MonotoneViolation> {
    let (nx, nv) = (grid.nx(), grid.nv());
    let dv = grid.gv.dx();
    let bounds = limiter.then(|| f.bounds());
    scratch.resize(nx * nv, 0.0);
    let values = f.values();
    scratch.par_chunks_mut(nv).enumerate().for_each(|(i, col)| {
        for (j, c) in col.iter_mut().enumerate() {
            *c = values[j * nx + i];
        }
    });
    scratch.par_chunks_mut(nv).zip(speeds).try_for_each_init(
        || (LineWorkspace::new(), Vec::with_capacity(nv)),
        |(ws, buf), (col, &a)| {
            buf.clear();
            buf.extend_from_slice(col);
            advect_line_into(buf, &shift_decompose(a, dt, dv), dv, bounds, cfg, ws, col)
        },
    )?;
    let src = &*scratch;
    f.values_mut().par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
        for (i, r) in row.iter_mut().enumerate() {
            *r = src[i * nv + j];
        }
    });
    Ok(())
}

/// What [`Simulation::run`] should record.
#[derive(Debug, Clone, PartialEq)]
pub struct RunControl {
    pub t_final: f64,
    /// Steps between diagnostics records; the first and last are always kept.
    pub diag_stride: usize,
    /// Times at which the state is captured. Steps are shortened to hit them.
    pub snapshot_times: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateSnapshot {
    pub t: f64,
    pub species: Vec<Distribution>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub snapshots: Vec<StateSnapshot>,
    pub steps: usize,
}

/// Phase-space state plus everything needed to advance it.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub grid: PhaseGrid,
    pub model: Model,
    pub config: SolverConfig,
    pub species: Vec<Species>,
    pub t: f64,
    poisson: PoissonSolver,
    scratch: Vec<f64>,
    x_speeds: Vec<f64>,
}

impl Simulation {
    pub fn new(grid: PhaseGrid, model: Model, config: SolverConfig, species: Vec<Species>) -> Result<Self, SolverError> {
        if species.is_empty() {
            return Err(SolverError::Config("at least one species is required".into()));
        }
        if !matches!(model, Model::VlasovPoisson { .. }) && species.len() != 1 {
            return Err(SolverError::Config("linear models take exactly one species".into()));
        }
        if !(config.cfl > 0.0 && config.cfl.is_finite()) {
            return Err(SolverError::Config(format!("cfl must be positive, got {}", config.cfl)));
        }
        for s in &species {
            if s.f.nx() != grid.nx() || s.f.nv() != grid.nv() {
                return Err(crate::error::GridError::ShapeMismatch {
                    expected: grid.nx() * grid.nv(),
                    got: s.f.nx() * s.f.nv(),
                }
                .into());
            }
            if !(s.mass >= 1.0) {
                return Err(SolverError::Config(format!("mass of {} must be at least 1", s.name)));
            }
        }
        let vs = grid.gv.centers();
        let x_speeds = match model {
            Model::Advection => vec![1.0; grid.nv()],
            Model::RigidRotation => vs.iter().map(|v| -v).collect(),
            Model::VlasovPoisson { .. } => vs,
        };
        Ok(Self {
            poisson: PoissonSolver::new(grid.nx(), grid.gx.length()),
            grid,
            model,
            config,
            species,
            t: 0.0,
            scratch: Vec::new(),
            x_speeds,
        })
    }

    /// Self-consistent field of the current state; zero for linear models.
    pub fn field(&mut self) -> Result<Vec<f64>, SolverError> {
        match self.model {
            Model::VlasovPoisson { background, .. } => {
                let parts: Vec<(f64, &Distribution)> = self.species.iter().map(|s| (s.charge, &s.f)).collect();
                let rho = density_from_species(&parts, &self.grid, background);
                Ok(self.poisson.solve(&rho.rho)?)
            }
            _ => Ok(vec![0.0; self.grid.nx()]),
        }
    }

    /// v-direction speed per x-cell for one species.
    fn v_speeds(&self, e: &[f64], coupling: f64, t: f64) -> Vec<f64> {
        match &self.model {
            Model::Advection => vec![1.0; self.grid.nx()],
            Model::RigidRotation => self.grid.gx.centers(),
            Model::VlasovPoisson { drive, .. } => e
                .iter()
                .enumerate()
                .map(|(i, &ei)| {
                    let ext = drive.map_or(0.0, |d| d.field_at(self.grid.gx.center(i), t));
                    coupling * (ei - ext)
                })
                .collect(),
        }
    }

    /// Time step from the current state.
    pub fn plan(&mut self) -> Result<StepPlan, SolverError> {
        let cfl = self.config.cfl;
        let (dx, dv) = (self.grid.gx.dx(), self.grid.gv.dx());
        let plan = match self.model {
            Model::Advection => StepPlan {
                dt: cfl * dx / 2.0,
                cfl,
                alpha_x: 1.0,
                alpha_v: 1.0,
            },
            Model::RigidRotation => StepPlan {
                dt: cfl * dx / (2.0 * PI),
                cfl,
                alpha_x: self.grid.gv.hi().abs().max(self.grid.gv.lo().abs()),
                alpha_v: self.grid.gx.hi().abs().max(self.grid.gx.lo().abs()),
            },
            Model::VlasovPoisson { .. } => {
                let e = self.field()?;
                let alpha_x = self.x_speeds.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let mut alpha_v = 0.0f64;
                for s in &self.species {
                    for a in self.v_speeds(&e, s.coupling, self.t) {
                        alpha_v = alpha_v.max(a.abs());
                    }
                }
                StepPlan {
                    dt: cfl / (alpha_x / dx + alpha_v / dv),
                    cfl,
                    alpha_x,
                    alpha_v,
                }
            }
        };
        Ok(plan)
    }

    fn monotone(&self, e: MonotoneViolation) -> SolverError {
        SolverError::Monotone { t: self.t, source: e }
    }

    fn half_x(&mut self, dt: f64) -> Result<(), SolverError> {
        let SolverConfig { limiter, weno, .. } = self.config;
        for k in 0..self.species.len() {
            sweep_x(&mut self.species[k].f, &self.grid, &self.x_speeds, dt, limiter, &weno)
                .map_err(|e| self.monotone(e))?;
        }
        Ok(())
    }

    /// Advances every species by `dt` and updates `t`.
    pub fn strang_step(&mut self, dt: f64) -> Result<(), SolverError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(SolverError::Config(format!("time step must be positive, got {dt}")));
        }
        let SolverConfig { limiter, weno, .. } = self.config;
        self.half_x(0.5 * dt)?;
        let e = self.field()?;
        let t_mid = self.t + 0.5 * dt;
        for k in 0..self.species.len() {
            let speeds = self.v_speeds(&e, self.species[k].coupling, t_mid);
            let mut scratch = std::mem::take(&mut self.scratch);
            let res = sweep_v(&mut self.species[k].f, &self.grid, &speeds, dt, limiter, &weno, &mut scratch);
            self.scratch = scratch;
            res.map_err(|e| self.monotone(e))?;
        }
        self.half_x(0.5 * dt)?;
        self.t += dt;
        for (k, s) in self.species.iter().enumerate() {
            if !s.f.all_finite() {
                return Err(SolverError::NonFinite { species: k, t: self.t });
            }
        }
        Ok(())
    }

    /// Diagnostics of the current state.
    pub fn record(&mut self) -> Result<DiagnosticsRecord, SolverError> {
        let e = self.field()?;
        let parts: Vec<(&Distribution, f64)> = self.species.iter().map(|s| (&s.f, s.mass)).collect();
        Ok(diagnostics::record(self.t, &parts, &e, &self.grid))
    }

    /// Steps until `t_final`, shortening the last step and any step that
    /// would pass a snapshot time.
    pub fn run(&mut self, control: &RunControl) -> Result<RunOutput, SolverError> {
        self.run_with(control, |_| {})
    }

    /// As [`Simulation::run`], calling `observe` with every record as it is made.
    pub fn run_with<F: FnMut(&DiagnosticsRecord)>(
        &mut self,
        control: &RunControl,
        mut observe: F,
    ) -> Result<RunOutput, SolverError> {
        let stride = control.diag_stride.max(1);
        let mut pending: Vec<f64> = control
            .snapshot_times
            .iter()
            .copied()
            .filter(|&t| t >= self.t && t <= control.t_final)
            .collect();
        pending.sort_by(f64::total_cmp);
        pending.dedup();
        pending.reverse();

        let mut out = RunOutput {
            records: Vec::new(),
            snapshots: Vec::new(),
            steps: 0,
        };
        let first = self.record()?;
        observe(&first);
        out.records.push(first);
        let take_snapshots = |sim: &Simulation, pending: &mut Vec<f64>, out: &mut RunOutput| {
            while pending.last().is_some_and(|&ts| ts <= sim.t * (1.0 + 1e-14)) {
                pending.pop();
                out.snapshots.push(StateSnapshot {
                    t: sim.t,
                    species: sim.species.iter().map(|s| s.f.clone()).collect(),
                });
            }
        };
        take_snapshots(self, &mut pending, &mut out);

        let eps = 1e-12 * control.t_final.abs().max(1.0);
        while self.t < control.t_final - eps {
            let plan = self.plan()?;
            let mut target = control.t_final;
            if let Some(&ts) = pending.last() {
                target = target.min(ts);
            }
            let mut dt = plan.dt;
            if self.t + dt > target - eps {
                dt = target - self.t;
            }
            self.strang_step(dt)?;
            if (self.t - target).abs() <= eps {
                self.t = target;
            }
            out.steps += 1;
            take_snapshots(self, &mut pending, &mut out);
            let last = self.t >= control.t_final - eps;
            if out.steps.is_multiple_of(stride) || last {
                let rec = self.record()?;
                observe(&rec);
                out.records.push(rec);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_grid::{make_phase_grid, Bounds, Grid1D};

    fn maxwell(v: f64) -> f64 {
        (-0.5 * v * v).exp() / (2.0 * PI).sqrt()
    }

    fn landau(alpha: f64, nx: usize, nv: usize) -> (PhaseGrid, Distribution) {
        let g = make_phase_grid(4.0 * PI, 2.0 * PI, nx, nv).unwrap();
        let f = Distribution::from_fn(&g, |x, v| (1.0 + alpha * (0.5 * x).cos()) * maxwell(v));
        (g, f)
    }

    fn vp(g: PhaseGrid, f: Distribution, cfg: SolverConfig) -> Simulation {
        let model = Model::VlasovPoisson {
            background: 1.0,
            drive: None,
        };
        Simulation::new(g, model, cfg, vec![Species::single(f)]).unwrap()
    }

    fn l1_diff(a: &Distribution, b: &Distribution) -> f64 {
        a.values().iter().zip(b.values()).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.values().len() as f64
    }

    #[test]
    fn zero_step_and_x_independent_fields_are_unchanged() {
        let g = make_phase_grid(2.0 * PI, PI, 16, 16).unwrap();
        let f0 = Distribution::from_fn(&g, |_, v| maxwell(v));
        let speeds = g.gv.centers();
        let mut f = f0.clone();
        sweep_x(&mut f, &g, &speeds, 0.0, true, &WenoConfig::default()).unwrap();
        assert_eq!(f, f0);
        sweep_x(&mut f, &g, &speeds, 0.37, true, &WenoConfig::default()).unwrap();
        for (a, b) in f.values().iter().zip(f0.values()) {
            assert!((a - b).abs() < 1e-13);
        }
        let mut scratch = Vec::new();
        sweep_v(&mut f, &g, &vec![0.0; 16], 0.5, true, &WenoConfig::default(), &mut scratch).unwrap();
        for (a, b) in f.values().iter().zip(f0.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn uniform_maxwellian_is_an_equilibrium() {
        let (g, f) = landau(0.0, 32, 64);
        let mut sim = vp(g, f.clone(), SolverConfig::default());
        assert!(sim.field().unwrap().iter().all(|e| e.abs() < 1e-13));
        let dt = sim.plan().unwrap().dt;
        sim.strang_step(dt).unwrap();
        for (a, b) in sim.species[0].f.values().iter().zip(f.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn time_step_rule() {
        let (g, f) = landau(0.5, 32, 64);
        let mut sim = vp(g, f, SolverConfig::default());
        let plan = sim.plan().unwrap();
        let e = sim.field().unwrap();
        let emax = e.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert_eq!(plan.alpha_v, emax);
        assert_eq!(plan.alpha_x, 2.0 * PI - g.gv.dx() / 2.0);
        let expect = 0.8 / (plan.alpha_x / g.gx.dx() + emax / g.gv.dx());
        assert!((plan.dt - expect).abs() < 1e-15 * expect);
    }

    #[test]
    fn splitting_error_is_third_order_per_step() {
        let (g, f) = landau(0.5, 64, 128);
        let cfg = SolverConfig {
            cfl: 0.8,
            limiter: false,
            weno: WenoConfig::linear(),
        };
        let diff = |dt: f64| {
            let mut one = vp(g, f.clone(), cfg);
            one.strang_step(dt).unwrap();
            let mut two = vp(g, f.clone(), cfg);
            two.strang_step(dt / 2.0).unwrap();
            two.strang_step(dt / 2.0).unwrap();
            l1_diff(&one.species[0].f, &two.species[0].f)
        };
        let (d1, d2, d3) = (diff(0.4), diff(0.2), diff(0.1));
        let (r1, r2) = (d1 / d2, d2 / d3);
        assert!((6.0..10.0).contains(&r1) && (6.0..10.0).contains(&r2), "ratios {r1} {r2}");
    }

    #[test]
    fn electron_and_ion_couplings_mirror_in_v() {
        // f even in v; opposite couplings give v-mirrored updates
        let (g, f) = landau(0.3, 32, 64);
        let e: Vec<f64> = g.gx.centers().iter().map(|x| 0.4 * (0.5 * x).sin()).collect();
        let mut scratch = Vec::new();
        let cfg = WenoConfig::default();
        let mut up = f.clone();
        let mut down = f.clone();
        sweep_v(&mut up, &g, &e, 0.3, true, &cfg, &mut scratch).unwrap();
        let neg: Vec<f64> = e.iter().map(|x| -x).collect();
        sweep_v(&mut down, &g, &neg, 0.3, true, &cfg, &mut scratch).unwrap();
        let nv = g.nv();
        let mut moved = 0.0f64;
        for i in 0..g.nx() {
            for j in 0..nv {
                assert!((up.get(i, j) - down.get(i, nv - 1 - j)).abs() < 1e-15);
                moved = moved.max((up.get(i, j) - f.get(i, j)).abs());
            }
        }
        assert!(moved > 1e-3);
    }

    #[test]
    fn mass_and_bounds_over_strong_landau_steps() {
        let (g, f) = landau(0.5, 32, 64);
        let bounds = f.bounds();
        let mass0 = f.values().iter().sum::<f64>();
        let mut sim = vp(g, f, SolverConfig::default());
        let out = sim
            .run(&RunControl {
                t_final: 5.0,
                diag_stride: 1,
                snapshot_times: vec![],
            })
            .unwrap();
        let fin = &sim.species[0].f;
        assert!((fin.values().iter().sum::<f64>() - mass0).abs() <= 1e-12 * mass0);
        assert!(fin.values().iter().all(|&v| bounds.contains(v)));
        assert_eq!(out.records.len(), out.steps + 1);
        assert!(out.records.iter().all(|r| r.is_finite()));
    }

    #[test]
    fn run_to_zero_time_emits_one_record() {
        let (g, f) = landau(0.01, 16, 32);
        let mut sim = vp(g, f, SolverConfig::default());
        let out = sim
            .run(&RunControl {
                t_final: 0.0,
                diag_stride: 1,
                snapshot_times: vec![0.0],
            })
            .unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.steps, 0);
        assert_eq!(out.snapshots.len(), 1);
    }

    #[test]
    fn run_hits_final_and_snapshot_times_exactly() {
        let (g, f) = landau(0.01, 16, 32);
        let mut sim = vp(g, f, SolverConfig::default());
        let out = sim
            .run(&RunControl {
                t_final: 1.0,
                diag_stride: 1000,
                snapshot_times: vec![0.25, 0.5],
            })
            .unwrap();
        assert_eq!(sim.t, 1.0);
        let ts: Vec<f64> = out.snapshots.iter().map(|s| s.t).collect();
        assert_eq!(ts, vec![0.25, 0.5]);
        assert_eq!(out.records.len(), 2);
    }

    #[test]
    fn advection_forward_then_back_converges_at_high_order() {
        let err = |n: usize| {
            let g = PhaseGrid::new(
                Grid1D::new(0.0, 2.0 * PI, n).unwrap(),
                Grid1D::new(-PI, PI, n).unwrap(),
            );
            let mut f = Distribution::from_fn(&g, |x, v| (x + v).sin().powi(4));
            f.set_bounds(Bounds::new(0.0, 1.0));
            let f0 = f.clone();
            let mut sim = Simulation::new(g, Model::Advection, SolverConfig::default(), vec![Species::single(f)]).unwrap();
            let ctl = RunControl {
                t_final: 0.5,
                diag_stride: 1000,
                snapshot_times: vec![],
            };
            sim.run(&ctl).unwrap();
            // reversed speeds: run again with the field mirrored in both directions
            let fwd = sim.species[0].f.clone();
            let mirrored: Vec<f64> = (0..n * n)
                .map(|k| {
                    let (i, j) = (k % n, k / n);
                    fwd.get(n - 1 - i, n - 1 - j)
                })
                .collect();
            let mut back = Distribution::new(&g, mirrored).unwrap();
            back.set_bounds(Bounds::new(0.0, 1.0));
            let mut sim = Simulation::new(g, Model::Advection, SolverConfig::default(), vec![Species::single(back)]).unwrap();
            sim.run(&ctl).unwrap();
            let res = &sim.species[0].f;
            (0..n * n)
                .map(|k| {
                    let (i, j) = (k % n, k / n);
                    (res.get(n - 1 - i, n - 1 - j) - f0.get(i, j)).abs()
                })
                .sum::<f64>()
                / (n * n) as f64
        };
        let (e1, e2) = (err(80), err(160));
        assert!((e1 / e2).log2() > 4.0, "{e1} {e2}");
    }

    #[test]
    fn drive_envelopes_at_breakpoints() {
        let j = Drive::keen_j();
        assert_eq!(j.envelope_at(0.0), 0.0);
        assert_eq!(j.envelope_at(50.0), 0.052);
        assert!((j.envelope_at(49.999999) - 0.052).abs() < 1e-12);
        assert_eq!(j.envelope_at(150.0), 0.052);
        assert!(j.envelope_at(200.0 - 1e-9).abs() < 1e-11);
        assert_eq!(j.envelope_at(200.0), 0.0);
        assert_eq!(j.envelope_at(250.0), 0.0);
        let a = Drive::keen_a();
        assert_eq!(a.envelope_at(10.0), 0.2);
        assert_eq!(a.envelope_at(110.0), 0.2);
        assert!((a.envelope_at(60.0) - 0.4).abs() < 1e-15);
        assert!(a.envelope_at(0.0) < 1e-170);
        assert!(a.envelope_at(300.0) < 1e-15);
    }

    #[test]
    fn configuration_errors() {
        let (g, f) = landau(0.01, 16, 32);
        let bad = SolverConfig {
            cfl: -1.0,
            ..SolverConfig::default()
        };
        assert!(Simulation::new(g, Model::Advection, bad, vec![Species::single(f.clone())]).is_err());
        assert!(Simulation::new(g, Model::Advection, SolverConfig::default(), vec![]).is_err());
        let two = vec![Species::single(f.clone()), Species::single(f)];
        assert!(Simulation::new(g, Model::RigidRotation, SolverConfig::default(), two).is_err());
    }
}
