//! Conserved and tracked scalar quantities of a phase-space state.
//!
//! All integrals are midpoint sums over cell centers. Reductions run serially
//! in index order so a record does not depend on how the sweeps were scheduled.

use std::f64::consts::PI;

use crate::error::DiagnosticsError;
use crate::phase_grid::{Distribution, PhaseGrid};

/// Below this value `f log f` is taken as zero.
pub const ENTROPY_FLOOR: f64 = 1e-30;

/// Replaces `log10(0)` in the Fourier-mode probe.
pub const LOG_FOURIER_FLOOR: f64 = -16.0;

/// Cells whose density falls below this are left out of fluid-speed averages.
pub const DENSITY_FLOOR: f64 = 1e-14;

/// Number of log Fourier modes recorded.
pub const FOURIER_MODES: usize = 4;

/// Per-species quantities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpeciesRecord {
    pub l1: f64,
    pub l2: f64,
    pub kinetic_energy: f64,
    pub entropy: f64,
    /// Cells with `f < 0` that were skipped by the entropy sum.
    pub negative_cells: usize,
    pub f_min: f64,
    pub f_max: f64,
}

/// One time sample of all tracked quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub species: Vec<SpeciesRecord>,
    pub field_energy: f64,
    /// `Σ_s m_s ∫ f_s v² + ∫ E²`.
    pub total_energy: f64,
    pub e_l2: f64,
    pub e_max: f64,
    pub log_fourier: [f64; FOURIER_MODES],
    /// `|u_i - u_e|`, two-species runs only.
    pub fluid_speed_diff: Option<f64>,
}

impl DiagnosticsRecord {
    /// Smallest value of `f` over all species.
    pub fn f_min(&self) -> f64 {
        self.species.iter().map(|s| s.f_min).fold(f64::INFINITY, f64::min)
    }

    pub fn is_finite(&self) -> bool {
        self.species.iter().all(|s| {
            [s.l1, s.l2, s.kinetic_energy, s.entropy, s.f_min, s.f_max]
                .iter()
                .all(|v| v.is_finite())
        }) && [self.field_energy, self.total_energy, self.e_l2, self.e_max]
            .iter()
            .all(|v| v.is_finite())
            && self.log_fourier.iter().all(|v| v.is_finite())
            && self.fluid_speed_diff.is_none_or(f64::is_finite)
    }
}

/// Discrete `L^p` norm, `p ∈ {1, 2}`.
pub fn lp_norm(f: &Distribution, grid: &PhaseGrid, p: u32) -> f64 {
    let area = grid.cell_area();
    match p {
        1 => f.values().iter().map(|v| v.abs()).sum::<f64>() * area,
        2 => (f.values().iter().map(|v| v * v).sum::<f64>() * area).sqrt(),
        _ => {
            let p = p as f64;
            (f.values().iter().map(|v| v.abs().powf(p)).sum::<f64>() * area).powf(1.0 / p)
        }
    }
}

/// `∫∫ f v² dx dv`.
pub fn kinetic_energy(f: &Distribution, grid: &PhaseGrid) -> f64 {
    let mut acc = 0.0;
    for j in 0..grid.nv() {
        let v = grid.gv.center(j);
        acc += v * v * f.x_line(j).iter().sum::<f64>();
    }
    acc * grid.cell_area()
}

/// `∫ E² dx`.
pub fn field_energy(e: &[f64], grid: &PhaseGrid) -> f64 {
    e.iter().map(|x| x * x).sum::<f64>() * grid.gx.dx()
}

/// `(kinetic, field, total)` for a single species.
pub fn energies(f: &Distribution, e: &[f64], grid: &PhaseGrid) -> (f64, f64, f64) {
    let k = kinetic_energy(f, grid);
    let w = field_energy(e, grid);
    (k, w, k + w)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entropy {
    pub value: f64,
    pub negative_cells: usize,
}

/// `∫∫ f log f dx dv`, skipping cells at or below [`ENTROPY_FLOOR`].
pub fn entropy(f: &Distribution, grid: &PhaseGrid) -> Entropy {
    let mut acc = 0.0;
    let mut negative_cells = 0;
    for &v in f.values() {
        if v > ENTROPY_FLOOR {
            acc += v * v.ln();
        } else if v < 0.0 {
            negative_cells += 1;
        }
    }
    Entropy {
        value: acc * grid.cell_area(),
        negative_cells,
    }
}

/// `log10( |∫ E sin(nkx)|² + |∫ E cos(nkx)|² )^{1/2} / L )` with `k = 2π/L`.
pub fn log_fourier_mode(e: &[f64], grid: &PhaseGrid, n: usize) -> f64 {
    let l = grid.gx.length();
    let k = 2.0 * PI / l * n as f64;
    let (mut s, mut c) = (0.0, 0.0);
    for (i, &ei) in e.iter().enumerate() {
        let x = grid.gx.center(i) - grid.gx.lo();
        s += ei * (k * x).sin();
        c += ei * (k * x).cos();
    }
    let dx = grid.gx.dx();
    let mag = ((s * dx).powi(2) + (c * dx).powi(2)).sqrt() / l;
    if mag > 0.0 {
        mag.log10().max(LOG_FOURIER_FLOOR)
    } else {
        LOG_FOURIER_FLOOR
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidSpeedDiff {
    pub value: f64,
    /// Cells skipped because either density fell below [`DENSITY_FLOOR`].
    pub excluded_cells: usize,
}

/// `|⟨u_i - u_e⟩_x|` where `u_s(x) = ∫ v f_s dv / ∫ f_s dv`.
pub fn fluid_speed_difference(
    f_ion: &Distribution,
    f_electron: &Distribution,
    grid: &PhaseGrid,
) -> Result<FluidSpeedDiff, DiagnosticsError> {
    let (nx, nv) = (grid.nx(), grid.nv());
    let dv = grid.gv.dx();
    let moments = |f: &Distribution| {
        let mut n = vec![0.0; nx];
        let mut m = vec![0.0; nx];
        for j in 0..nv {
            let v = grid.gv.center(j);
            for (i, &val) in f.x_line(j).iter().enumerate() {
                n[i] += val * dv;
                m[i] += v * val * dv;
            }
        }
        (n, m)
    };
    let (ni, mi) = moments(f_ion);
    let (ne, me) = moments(f_electron);
    let mut acc = 0.0;
    let mut used = 0usize;
    for i in 0..nx {
        if ni[i] < DENSITY_FLOOR || ne[i] < DENSITY_FLOOR {
            continue;
        }
        acc += mi[i] / ni[i] - me[i] / ne[i];
        used += 1;
    }
    if used == 0 {
        return Err(DiagnosticsError::DegenerateDensity {
            threshold: DENSITY_FLOOR,
        });
    }
    Ok(FluidSpeedDiff {
        value: (acc / used as f64).abs(),
        excluded_cells: nx - used,
    })
}

/// `(q - q0) / |q0|`.
pub fn relative_deviation(q: f64, q0: f64) -> Result<f64, DiagnosticsError> {
    if q0 == 0.0 {
        return Err(DiagnosticsError::ZeroReference);
    }
    Ok((q - q0) / q0.abs())
}

pub fn species_record(f: &Distribution, grid: &PhaseGrid) -> SpeciesRecord {
    let ent = entropy(f, grid);
    SpeciesRecord {
        l1: lp_norm(f, grid, 1),
        l2: lp_norm(f, grid, 2),
        kinetic_energy: kinetic_energy(f, grid),
        entropy: ent.value,
        negative_cells: ent.negative_cells,
        f_min: f.min_value(),
        f_max: f.max_value(),
    }
}

/// Builds a record from every species, their masses, and the field.
/// With two species the first is taken as ions and the second as electrons
/// for the fluid-speed probe.
pub fn record(t: f64, species: &[(&Distribution, f64)], e: &[f64], grid: &PhaseGrid) -> DiagnosticsRecord {
    let recs: Vec<SpeciesRecord> = species.iter().map(|(f, _)| species_record(f, grid)).collect();
    let field = field_energy(e, grid);
    let kinetic: f64 = recs.iter().zip(species).map(|(r, (_, m))| m * r.kinetic_energy).sum();
    let log_fourier = std::array::from_fn(|n| log_fourier_mode(e, grid, n + 1));
    let fluid_speed_diff = if species.len() == 2 {
        fluid_speed_difference(species[0].0, species[1].0, grid).ok().map(|d| d.value)
    } else {
        None
    };
    DiagnosticsRecord {
        t,
        species: recs,
        field_energy: field,
        total_energy: kinetic + field,
        e_l2: field.sqrt(),
        e_max: e.iter().fold(0.0, |m, x| m.max(x.abs())),
        log_fourier,
        fluid_speed_diff,
    }
}
