//! CSV time series, snapshot files and manifests.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use slweno_core::diagnostics::{DiagnosticsRecord, FOURIER_MODES};
use slweno_core::phase_grid::PhaseGrid;
use slweno_core::vlasov_driver::StateSnapshot;

use crate::error::HarnessError;

/// Totals over species used for the summary columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Totals {
    pub l1: f64,
    pub l2: f64,
    pub kinetic: f64,
    pub entropy: f64,
    pub total_energy: f64,
}

impl Totals {
    pub fn of(r: &DiagnosticsRecord) -> Self {
        Self {
            l1: r.species.iter().map(|s| s.l1).sum(),
            l2: r.species.iter().map(|s| s.l2 * s.l2).sum::<f64>().sqrt(),
            // the record's total already carries the mass weights
            kinetic: r.total_energy - r.field_energy,
            entropy: r.species.iter().map(|s| s.entropy).sum(),
            total_energy: r.total_energy,
        }
    }
}

/// `(q - q0) / |q0|`, NaN when `q0 == 0`.
fn rel(q: f64, q0: f64) -> f64 {
    if q0 == 0.0 {
        f64::NAN
    } else {
        (q - q0) / q0.abs()
    }
}

/// Streams diagnostics rows. Relative columns refer to the first row.
pub struct SeriesWriter<W: Write> {
    out: W,
    names: Vec<String>,
    first: Option<DiagnosticsRecord>,
}

impl<W: Write> SeriesWriter<W> {
    pub fn new(out: W, species_names: &[String]) -> Self {
        Self {
            out,
            names: species_names.to_vec(),
            first: None,
        }
    }

    fn header(&self) -> String {
        let mut cols: Vec<String> = [
            "t",
            "e_l2",
            "e_max",
            "l1",
            "l2",
            "kinetic_energy",
            "field_energy",
            "total_energy",
            "entropy",
            "rel_l1",
            "rel_l2",
            "rel_kinetic",
            "rel_entropy",
            "rel_total_energy",
            "f_min",
            "f_max",
            "negative_cells",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        cols.extend((1..=FOURIER_MODES).map(|n| format!("log_fm{n}")));
        if self.names.len() > 1 {
            for n in &self.names {
                cols.push(format!("l1_{n}"));
                cols.push(format!("rel_l1_{n}"));
            }
            cols.push("fluid_speed_diff".into());
        }
        cols.join(",")
    }

    pub fn write(&mut self, r: &DiagnosticsRecord) -> std::io::Result<()> {
        if self.first.is_none() {
            let h = self.header();
            writeln!(self.out, "{h}")?;
            self.first = Some(r.clone());
        }
        let r0 = self.first.as_ref().expect("first record");
        let (tot, tot0) = (Totals::of(r), Totals::of(r0));
        let mut vals = vec![
            r.t,
            r.e_l2,
            r.e_max,
            tot.l1,
            tot.l2,
            tot.kinetic,
            r.field_energy,
            tot.total_energy,
            tot.entropy,
            rel(tot.l1, tot0.l1),
            rel(tot.l2, tot0.l2),
            rel(tot.kinetic, tot0.kinetic),
            rel(tot.entropy, tot0.entropy),
            rel(tot.total_energy, tot0.total_energy),
            r.f_min(),
            r.species.iter().map(|s| s.f_max).fold(f64::NEG_INFINITY, f64::max),
        ];
        let negative: usize = r.species.iter().map(|s| s.negative_cells).sum();
        let mut line: Vec<String> = vals.drain(..).map(|v| format!("{v:.16e}")).collect();
        line.push(negative.to_string());
        line.extend(r.log_fourier.iter().map(|v| format!("{v:.16e}")));
        if self.names.len() > 1 {
            for (s, s0) in r.species.iter().zip(&r0.species) {
                line.push(format!("{:.16e}", s.l1));
                line.push(format!("{:.16e}", rel(s.l1, s0.l1)));
            }
            line.push(format!("{:.16e}", r.fluid_speed_diff.unwrap_or(f64::NAN)));
        }
        writeln!(self.out, "{}", line.join(","))
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Writes all records to `path` in one go.
pub fn emit_series(path: &Path, records: &[DiagnosticsRecord], species_names: &[String]) -> Result<(), HarnessError> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut w = SeriesWriter::new(BufWriter::new(file), species_names);
    for r in records {
        w.write(r).map_err(|e| HarnessError::io(path, e))?;
    }
    w.into_inner().flush().map_err(|e| HarnessError::io(path, e))
}

pub fn ensure_dir(dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))
}

/// One file per species, named `<species>_t<time>.dat`.
pub fn write_snapshot(
    dir: &Path,
    grid: &PhaseGrid,
    snap: &StateSnapshot,
    species_names: &[String],
) -> Result<Vec<PathBuf>, HarnessError> {
    let mut paths = Vec::new();
    for (f, name) in snap.species.iter().zip(species_names) {
        let path = dir.join(format!("{name}_t{:.6}.dat", snap.t));
        let file = File::create(&path).map_err(|e| HarnessError::io(&path, e))?;
        let mut w = BufWriter::new(file);
        f.write_snapshot(grid, snap.t, &mut w)
            .and_then(|_| w.flush())
            .map_err(|e| HarnessError::io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), HarnessError> {
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}
