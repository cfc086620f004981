//! Initial data and solver construction for each preset.

use std::f64::consts::PI;

use slweno_core::phase_grid::{Bounds, Distribution, Grid1D, PhaseGrid};
use slweno_core::sl_weno::WenoConfig;
use slweno_core::vlasov_driver::{Drive, Envelope, Model, Simulation, SolverConfig, Species};

use crate::config::{BoundsMode, Preset, RunConfig};
use crate::error::HarnessError;

fn maxwell(v: f64) -> f64 {
    (-0.5 * v * v).exp() / (2.0 * PI).sqrt()
}

pub fn grid(cfg: &RunConfig) -> Result<PhaseGrid, HarnessError> {
    let gx = Grid1D::new(cfg.x_lo, cfg.x_lo + cfg.length, cfg.nx).map_err(slweno_core::SolverError::from)?;
    let gv = Grid1D::new(-cfg.v_c, cfg.v_c, cfg.nv).map_err(slweno_core::SolverError::from)?;
    Ok(PhaseGrid::new(gx, gv))
}

/// `cos^6(r)` inside `r < π/2`.
pub fn cos6_hump(x: f64, v: f64) -> f64 {
    let r = x.hypot(v);
    if r < 0.5 * PI {
        r.cos().powi(6)
    } else {
        0.0
    }
}

/// Slotted disk, cone and cosine hump on the unit-scaled plane, stretched to
/// `[-π, π]^2` by `π / 1.57`.
pub fn slotted_disk_cone_hump(x: f64, v: f64) -> f64 {
    let s = 1.57 / PI;
    let (x, y) = (x * s, v * s);
    let r0 = 0.5;
    let disk = (x).hypot(y - 0.75);
    if disk <= r0 {
        let in_slot = x.abs() < 0.075 && y < 1.0;
        return if in_slot { 0.0 } else { 1.0 };
    }
    let cone = x.hypot(y + 0.75);
    if cone <= r0 {
        return 1.0 - cone / r0;
    }
    let hump = (x + 0.75).hypot(y);
    if hump <= r0 {
        return 0.25 * (1.0 + (PI * hump / r0).cos());
    }
    0.0
}

/// Sampled initial data, one distribution per species.
pub fn initial_species(cfg: &RunConfig, g: &PhaseGrid) -> Vec<Species> {
    let p = |k: &str| cfg.param(k);
    let single = |f: &dyn Fn(f64, f64) -> f64| vec![Species::single(Distribution::from_fn(g, f))];
    match cfg.preset {
        Preset::AdvectSin4 => single(&|x, v| (x + v).sin().powi(4)),
        Preset::RigidCos6 => single(&cos6_hump),
        Preset::RigidSlotted => single(&slotted_disk_cone_hump),
        Preset::VpSmooth => {
            let k = p("k");
            single(&|x, v| (k * x).cos().powi(4) * maxwell(v))
        }
        Preset::LandauWeak | Preset::LandauStrong => {
            let (a, k) = (p("alpha"), p("k"));
            single(&|x, v| (1.0 + a * (k * x).cos()) * maxwell(v))
        }
        Preset::TwostreamSym => {
            let (a, k, u, vt) = (p("alpha"), p("k"), p("u"), p("v_th"));
            single(&|x, v| {
                let g = |w: f64| (-(w * w) / (2.0 * vt * vt)).exp();
                (g(v - u) + g(v + u)) / (2.0 * vt * (2.0 * PI).sqrt()) * (1.0 + a * (k * x).cos())
            })
        }
        Preset::TwostreamUnstable => {
            let (a, k) = (p("alpha"), p("k"));
            single(&|x, v| {
                let pert = ((2.0 * k * x).cos() + (3.0 * k * x).cos()) / 1.2 + (k * x).cos();
                2.0 / (7.0 * (2.0 * PI).sqrt()) * (1.0 + 5.0 * v * v) * (1.0 + a * pert) * (-0.5 * v * v).exp()
            })
        }
        Preset::BumpOnTail => {
            let (a, k) = (p("alpha"), p("k"));
            let (np, nb, vb, vt) = (p("n_p"), p("n_b"), p("v_b"), p("v_t"));
            single(&|x, v| {
                let bot = np * maxwell(v) + nb / (2.0 * PI).sqrt() * (-(v - vb).powi(2) / (2.0 * vt * vt)).exp();
                bot * (1.0 + a * (k * x).cos())
            })
        }
        Preset::KeenJ | Preset::KeenA => single(&|_, v| maxwell(v)),
        Preset::IonAcoustic => {
            let (mr, ue) = (p("mass_ratio"), p("u_e"));
            let ions = Distribution::from_fn(g, |_, v| (mr / (2.0 * PI)).sqrt() * (-0.5 * mr * v * v).exp());
            let electrons = Distribution::from_fn(g, |x, v| (1.0 + perturbation(x)) * maxwell(v - ue));
            vec![Species::ions(ions, mr), Species::electrons(electrons)]
        }
    }
}

/// Multi-mode density perturbation of the ion-acoustic electrons.
pub fn perturbation(x: f64) -> f64 {
    let s: f64 = [1.0, 0.5, 0.1, 0.15, 0.2].iter().map(|k| (k * x).sin()).sum();
    let c: f64 = [0.25, 0.3, 0.35].iter().map(|k| (k * x).cos()).sum();
    0.01 * (s + c)
}

/// Supremum of each species' initial data over the unbounded phase space,
/// where it has a closed form.
pub fn analytic_max(cfg: &RunConfig) -> Vec<Option<f64>> {
    let p = |k: &str| cfg.param(k);
    let m0 = 1.0 / (2.0 * PI).sqrt();
    let one = |v: f64| vec![Some(v)];
    match cfg.preset {
        Preset::AdvectSin4 | Preset::RigidCos6 | Preset::RigidSlotted => one(1.0),
        Preset::VpSmooth | Preset::KeenJ | Preset::KeenA => one(m0),
        Preset::LandauWeak | Preset::LandauStrong => one((1.0 + p("alpha").abs()) * m0),
        Preset::TwostreamUnstable => {
            // (1 + 5v^2) e^{-v^2/2} peaks at v^2 = 9/5; every cosine peaks at x = 0
            let a = p("alpha");
            let pert = if a >= 0.0 { 2.0 / 1.2 + 1.0 } else { -1.0 };
            one(2.0 * m0 / 7.0 * 10.0 * (-0.9f64).exp() * (1.0 + a * pert))
        }
        Preset::TwostreamSym | Preset::BumpOnTail => vec![None],
        Preset::IonAcoustic => vec![Some((p("mass_ratio") / (2.0 * PI)).sqrt()), None],
    }
}

/// Applies the bounds selected by `cfg.bounds`.
pub fn assign_bounds(cfg: &RunConfig, species: &mut [Species]) {
    if cfg.bounds == BoundsMode::Sampled {
        return;
    }
    for (s, max) in species.iter_mut().zip(analytic_max(cfg)) {
        let sampled = s.f.bounds();
        let max = max.map_or(sampled.max, |m| m.max(sampled.max));
        s.f.set_bounds(Bounds::new(0.0f64.min(sampled.min), max));
    }
}

pub fn model(cfg: &RunConfig) -> Model {
    match cfg.preset {
        Preset::AdvectSin4 => Model::Advection,
        Preset::RigidCos6 | Preset::RigidSlotted => Model::RigidRotation,
        Preset::IonAcoustic => Model::VlasovPoisson {
            background: 0.0,
            drive: None,
        },
        Preset::KeenJ | Preset::KeenA => Model::VlasovPoisson {
            background: 1.0,
            drive: Some(Drive {
                envelope: if cfg.preset == Preset::KeenJ {
                    Envelope::KeenJ
                } else {
                    Envelope::KeenA
                },
                amplitude: cfg.param("amplitude"),
                omega: cfg.param("omega"),
                k: cfg.param("k"),
            }),
        },
        _ => Model::VlasovPoisson {
            background: 1.0,
            drive: None,
        },
    }
}

pub fn solver_config(cfg: &RunConfig) -> SolverConfig {
    SolverConfig {
        cfl: cfg.cfl,
        limiter: cfg.limiter,
        weno: WenoConfig {
            mode: cfg.weights,
            ..WenoConfig::default()
        },
    }
}

/// Grid, initial data and solver for a configuration.
pub fn build(cfg: &RunConfig) -> Result<Simulation, HarnessError> {
    let g = grid(cfg)?;
    let mut species = initial_species(cfg, &g);
    assign_bounds(cfg, &mut species);
    Ok(Simulation::new(g, model(cfg), solver_config(cfg), species)?)
}
