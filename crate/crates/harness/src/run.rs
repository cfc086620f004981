//! Executes a configuration and writes its artifacts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use slweno_core::diagnostics::DiagnosticsRecord;
use slweno_core::vlasov_driver::{RunControl, RunOutput, Simulation};

use crate::config::RunConfig;
use crate::error::HarnessError;
use crate::output::{ensure_dir, write_snapshot, write_text, SeriesWriter};
use crate::setup::build;

pub const SERIES_FILE: &str = "series.csv";
pub const MANIFEST_FILE: &str = "manifest.txt";
pub const FAILURE_FILE: &str = "failure.txt";

pub fn control(cfg: &RunConfig) -> RunControl {
    RunControl {
        t_final: cfg.t_final,
        diag_stride: cfg.diag_stride,
        snapshot_times: cfg.snapshot_times.clone(),
    }
}

/// Final state and everything recorded on the way.
#[derive(Debug)]
pub struct RunResult {
    pub sim: Simulation,
    pub output: RunOutput,
}

impl RunResult {
    pub fn records(&self) -> &[DiagnosticsRecord] {
        &self.output.records
    }
}

/// Runs in memory without touching the file system.
pub fn execute(cfg: &RunConfig) -> Result<RunResult, HarnessError> {
    let mut sim = build(cfg)?;
    let output = sim.run(&control(cfg))?;
    Ok(RunResult { sim, output })
}

/// Paths written by [`execute_to_dir`].
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub dir: PathBuf,
    pub series: PathBuf,
    pub manifest: PathBuf,
    pub snapshots: Vec<PathBuf>,
}

/// Runs and writes the manifest, the CSV series (streamed) and snapshots into
/// `cfg.output_dir`. On a numerical failure a dump is written next to them.
pub fn execute_to_dir(cfg: &RunConfig) -> Result<(RunResult, Artifacts), HarnessError> {
    let dir = cfg.output_dir.clone();
    ensure_dir(&dir)?;
    let manifest = dir.join(MANIFEST_FILE);
    write_text(&manifest, &cfg.to_manifest())?;

    let mut sim = build(cfg)?;
    let names: Vec<String> = sim.species.iter().map(|s| s.name.clone()).collect();
    let series = dir.join(SERIES_FILE);
    let file = File::create(&series).map_err(|e| HarnessError::io(&series, e))?;
    let mut writer = SeriesWriter::new(BufWriter::new(file), &names);
    let mut io_err = None;
    let mut last: Option<DiagnosticsRecord> = None;
    let res = sim.run_with(&control(cfg), |r| {
        if io_err.is_none() {
            io_err = writer.write(r).err();
        }
        last = Some(r.clone());
    });
    let flushed = writer.into_inner().flush();
    if let Some(e) = io_err {
        return Err(HarnessError::io(&series, e));
    }
    flushed.map_err(|e| HarnessError::io(&series, e))?;
    let output = match res {
        Ok(o) => o,
        Err(e) => {
            write_failure(&dir.join(FAILURE_FILE), &e.to_string(), &sim, last.as_ref())?;
            return Err(e.into());
        }
    };
    let mut snapshots = Vec::new();
    for snap in &output.snapshots {
        snapshots.extend(write_snapshot(&dir, &sim.grid, snap, &names)?);
    }
    Ok((
        RunResult { sim, output },
        Artifacts {
            dir,
            series,
            manifest,
            snapshots,
        },
    ))
}

fn write_failure(path: &Path, msg: &str, sim: &Simulation, last: Option<&DiagnosticsRecord>) -> Result<(), HarnessError> {
    let mut s = format!("error: {msg}\nt = {:?}\n", sim.t);
    for (k, sp) in sim.species.iter().enumerate() {
        let non_finite = sp.f.values().iter().filter(|v| !v.is_finite()).count();
        let b = sp.f.bounds();
        s += &format!(
            "species {k} ({}): min = {:e}, max = {:e}, bounds = [{:e}, {:e}], non-finite cells = {non_finite}\n",
            sp.name,
            sp.f.min_value(),
            sp.f.max_value(),
            b.min,
            b.max
        );
    }
    if let Some(r) = last {
        s += &format!("last record: {r:?}\n");
    }
    write_text(path, &s)
}
