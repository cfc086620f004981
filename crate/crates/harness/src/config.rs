//! Run configuration: presets, `key=value` overrides and manifest files.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use slweno_core::sl_weno::WeightsMode;

use crate::error::HarnessError;

/// Environment variable naming the base output directory.
pub const OUTPUT_DIR_ENV: &str = "SLWENO_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    AdvectSin4,
    RigidCos6,
    RigidSlotted,
    VpSmooth,
    LandauWeak,
    LandauStrong,
    TwostreamSym,
    TwostreamUnstable,
    BumpOnTail,
    KeenJ,
    KeenA,
    IonAcoustic,
}

impl Preset {
    pub const ALL: [Preset; 12] = [
        Preset::AdvectSin4,
        Preset::RigidCos6,
        Preset::RigidSlotted,
        Preset::VpSmooth,
        Preset::LandauWeak,
        Preset::LandauStrong,
        Preset::TwostreamSym,
        Preset::TwostreamUnstable,
        Preset::BumpOnTail,
        Preset::KeenJ,
        Preset::KeenA,
        Preset::IonAcoustic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::AdvectSin4 => "advect_sin4",
            Preset::RigidCos6 => "rigid_cos6",
            Preset::RigidSlotted => "rigid_slotted",
            Preset::VpSmooth => "vp_smooth",
            Preset::LandauWeak => "landau_weak",
            Preset::LandauStrong => "landau_strong",
            Preset::TwostreamSym => "twostream_sym",
            Preset::TwostreamUnstable => "twostream_unstable",
            Preset::BumpOnTail => "bump_on_tail",
            Preset::KeenJ => "keen_J",
            Preset::KeenA => "keen_A",
            Preset::IonAcoustic => "ion_acoustic",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::AdvectSin4 => "linear advection of sin^4(x+v) at unit speed",
            Preset::RigidCos6 => "rigid-body rotation of a cos^6 hump",
            Preset::RigidSlotted => "rigid-body rotation of a slotted disk, cone and hump",
            Preset::VpSmooth => "Vlasov-Poisson with smooth cos^4 data",
            Preset::LandauWeak => "weak Landau damping",
            Preset::LandauStrong => "strong Landau damping",
            Preset::TwostreamSym => "symmetric two-stream instability",
            Preset::TwostreamUnstable => "two-stream instability from an unstable distribution",
            Preset::BumpOnTail => "bump-on-tail instability",
            Preset::KeenJ => "KEEN wave, ramped plateau drive",
            Preset::KeenA => "KEEN wave, sigmoid drive",
            Preset::IonAcoustic => "two-species ion-acoustic turbulence",
        }
    }

    /// Whether the x extent follows `2π/k`.
    fn length_from_k(self) -> bool {
        !matches!(self, Preset::AdvectSin4 | Preset::RigidCos6 | Preset::RigidSlotted | Preset::IonAcoustic)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownPreset(s.to_string()))
    }
}

/// How the frozen solution bounds are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsMode {
    /// Range of the continuous initial data: zero below, the closed-form
    /// supremum above where one exists, else the sampled maximum.
    Analytic,
    /// Minimum and maximum of the sampled initial data.
    Sampled,
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Preset,
    pub nx: usize,
    pub nv: usize,
    pub cfl: f64,
    pub t_final: f64,
    pub limiter: bool,
    pub weights: WeightsMode,
    pub bounds: BoundsMode,
    pub x_lo: f64,
    pub length: f64,
    pub v_c: f64,
    pub diag_stride: usize,
    pub snapshot_times: Vec<f64>,
    pub output_dir: PathBuf,
    /// Initial-condition and drive parameters, keyed by name.
    pub params: BTreeMap<String, f64>,
    /// Overrides in the order they were applied.
    pub overrides: Vec<(String, String)>,
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn default_output_base() -> PathBuf {
    std::env::var_os(OUTPUT_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("output"))
}

/// Default configuration of a preset.
pub fn preset(p: Preset) -> RunConfig {
    let two_pi = 2.0 * PI;
    let mut c = RunConfig {
        preset: p,
        nx: 80,
        nv: 160,
        cfl: 0.8,
        t_final: 40.0,
        limiter: true,
        weights: WeightsMode::Nonlinear,
        bounds: BoundsMode::Analytic,
        x_lo: 0.0,
        length: two_pi,
        v_c: two_pi,
        diag_stride: 1,
        snapshot_times: Vec::new(),
        output_dir: default_output_base().join(p.name()),
        params: BTreeMap::new(),
        overrides: Vec::new(),
    };
    match p {
        Preset::AdvectSin4 => {
            c.nv = 80;
            c.t_final = 1.0;
            c.v_c = PI;
        }
        Preset::RigidCos6 | Preset::RigidSlotted => {
            c.x_lo = -PI;
            c.v_c = PI;
            if p == Preset::RigidCos6 {
                c.nv = 80;
                c.t_final = two_pi;
            } else {
                c.nx = 100;
                c.nv = 100;
                c.t_final = 12.0 * PI;
                c.weights = WeightsMode::Linear;
                c.diag_stride = 10;
            }
        }
        Preset::VpSmooth => {
            c.t_final = 0.01;
            c.v_c = 20.0;
            c.params = params(&[("k", 0.5)]);
        }
        Preset::LandauWeak => c.params = params(&[("alpha", 0.01), ("k", 0.5)]),
        Preset::LandauStrong => c.params = params(&[("alpha", 0.5), ("k", 0.5)]),
        Preset::TwostreamSym => {
            c.t_final = 100.0;
            c.params = params(&[("alpha", 0.05), ("k", 2.0 / 13.0), ("u", 0.99), ("v_th", 0.3)]);
        }
        Preset::TwostreamUnstable => {
            c.t_final = 50.0;
            c.params = params(&[("alpha", 0.01), ("k", 0.5)]);
        }
        Preset::BumpOnTail => {
            c.nx = 256;
            c.nv = 256;
            c.t_final = 500.0;
            c.v_c = 8.0;
            c.diag_stride = 10;
            c.params = params(&[
                ("alpha", 0.04),
                ("k", 0.3),
                ("n_b", 0.2),
                ("n_p", 0.9),
                ("v_b", 4.5),
                ("v_t", 0.5),
            ]);
        }
        Preset::KeenJ | Preset::KeenA => {
            c.nx = 200;
            c.nv = 400;
            c.t_final = 300.0;
            c.v_c = 8.0;
            c.diag_stride = 10;
            let amp = if p == Preset::KeenJ { 0.052 } else { 0.4 };
            c.params = params(&[("amplitude", amp), ("k", 0.26), ("omega", 0.37)]);
            if p == Preset::KeenA {
                c.snapshot_times = vec![15.0, 60.0, 120.0, 300.0];
            }
        }
        Preset::IonAcoustic => {
            c.nx = 256;
            c.nv = 256;
            c.t_final = 2000.0;
            c.v_c = 8.0;
            c.length = two_pi / 0.05;
            c.diag_stride = 10;
            c.params = params(&[("mass_ratio", 1000.0), ("u_e", -2.0)]);
        }
    }
    if p.length_from_k() {
        c.length = two_pi / c.params["k"];
    }
    c
}

pub fn preset_by_name(name: &str) -> Result<RunConfig, HarnessError> {
    Ok(preset(name.parse()?))
}

fn bad(key: &str, value: &str, reason: impl Into<String>) -> HarnessError {
    HarnessError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.into(),
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, HarnessError> {
    let x: f64 = value.trim().parse().map_err(|_| bad(key, value, "not a number"))?;
    if !x.is_finite() {
        return Err(bad(key, value, "must be finite"));
    }
    Ok(x)
}

fn parse_positive(key: &str, value: &str) -> Result<f64, HarnessError> {
    let x = parse_f64(key, value)?;
    if x <= 0.0 {
        return Err(bad(key, value, "must be positive"));
    }
    Ok(x)
}

fn parse_usize(key: &str, value: &str) -> Result<usize, HarnessError> {
    value.trim().parse().map_err(|_| bad(key, value, "not a non-negative integer"))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, HarnessError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(bad(key, value, "expected true or false")),
    }
}

impl RunConfig {
    /// Applies one override. Unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        let key = key.trim();
        match key {
            "nx" => self.nx = parse_usize(key, value)?,
            "nv" => self.nv = parse_usize(key, value)?,
            "cfl" => self.cfl = parse_positive(key, value)?,
            "t_final" | "T" => {
                self.t_final = parse_f64(key, value)?;
                if self.t_final < 0.0 {
                    return Err(bad(key, value, "must be non-negative"));
                }
            }
            "limiter" => self.limiter = parse_bool(key, value)?,
            "weights" => {
                self.weights = match value.trim() {
                    "nonlinear" => WeightsMode::Nonlinear,
                    "linear" => WeightsMode::Linear,
                    _ => return Err(bad(key, value, "expected nonlinear or linear")),
                }
            }
            "bounds" => {
                self.bounds = match value.trim() {
                    "analytic" => BoundsMode::Analytic,
                    "sampled" => BoundsMode::Sampled,
                    _ => return Err(bad(key, value, "expected analytic or sampled")),
                }
            }
            "x_lo" => self.x_lo = parse_f64(key, value)?,
            "length" | "L" => self.length = parse_positive(key, value)?,
            "v_c" => self.v_c = parse_positive(key, value)?,
            "diag_stride" => {
                self.diag_stride = parse_usize(key, value)?;
                if self.diag_stride == 0 {
                    return Err(bad(key, value, "must be at least 1"));
                }
            }
            "snapshot_times" => {
                self.snapshot_times = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| parse_f64(key, s))
                    .collect::<Result<_, _>>()?;
            }
            "output_dir" => self.output_dir = PathBuf::from(value.trim()),
            _ => {
                let slot = self.params.get_mut(key).ok_or_else(|| HarnessError::UnknownKey {
                    key: key.to_string(),
                    preset: self.preset.name().to_string(),
                })?;
                *slot = parse_f64(key, value)?;
                if key == "k" && self.preset.length_from_k() {
                    if *slot <= 0.0 {
                        return Err(bad(key, value, "must be positive"));
                    }
                    self.length = 2.0 * PI / *slot;
                }
            }
        }
        Ok(())
    }

    /// Applies `key=value` strings in order and records them.
    pub fn apply_overrides<S: AsRef<str>>(&mut self, items: &[S]) -> Result<(), HarnessError> {
        for item in items {
            let item = item.as_ref();
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| bad(item, "", "expected key=value"))?;
            self.set(k, v)?;
            self.overrides.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(())
    }

    /// Every resolved setting, one `key = value` line each, in a fixed order.
    pub fn to_manifest(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "preset = {}", self.preset);
        let _ = writeln!(s, "nx = {}", self.nx);
        let _ = writeln!(s, "nv = {}", self.nv);
        let _ = writeln!(s, "cfl = {:?}", self.cfl);
        let _ = writeln!(s, "t_final = {:?}", self.t_final);
        let _ = writeln!(s, "limiter = {}", self.limiter);
        let weights = match self.weights {
            WeightsMode::Nonlinear => "nonlinear",
            WeightsMode::Linear => "linear",
        };
        let _ = writeln!(s, "weights = {weights}");
        let bounds = match self.bounds {
            BoundsMode::Analytic => "analytic",
            BoundsMode::Sampled => "sampled",
        };
        let _ = writeln!(s, "bounds = {bounds}");
        let _ = writeln!(s, "x_lo = {:?}", self.x_lo);
        let _ = writeln!(s, "length = {:?}", self.length);
        let _ = writeln!(s, "v_c = {:?}", self.v_c);
        let _ = writeln!(s, "diag_stride = {}", self.diag_stride);
        let times: Vec<String> = self.snapshot_times.iter().map(|t| format!("{t:?}")).collect();
        let _ = writeln!(s, "snapshot_times = {}", times.join(","));
        let _ = writeln!(s, "output_dir = {}", self.output_dir.display());
        for (k, v) in &self.params {
            let _ = writeln!(s, "{k} = {v:?}");
        }
        if !self.overrides.is_empty() {
            let o: Vec<String> = self.overrides.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "# overrides: {}", o.join(" "));
        }
        s
    }

    /// Parses manifest text. `preset` may be omitted when `default_preset` is
    /// given. Lines after a `[name]` header only apply to that preset.
    pub fn from_manifest(text: &str, path: &Path, default_preset: Option<Preset>) -> Result<Self, HarnessError> {
        let err = |line: usize, msg: String| HarnessError::Manifest {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let mut entries: Vec<(usize, Option<String>, String, String)> = Vec::new();
        let mut section: Option<String> = None;
        let mut chosen = default_preset;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = Some(name.trim().to_string());
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err(n + 1, format!("expected `key = value`, got `{line}`")))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if k == "preset" && section.is_none() {
                chosen = Some(v.parse().map_err(|e: HarnessError| err(n + 1, e.to_string()))?);
                continue;
            }
            entries.push((n + 1, section.clone(), k, v));
        }
        let p = chosen.ok_or_else(|| err(0, "no preset given".into()))?;
        let mut cfg = preset(p);
        for (line, sec, k, v) in entries {
            if sec.is_some_and(|s| !s.eq_ignore_ascii_case(p.name())) {
                continue;
            }
            cfg.set(&k, &v).map_err(|e| err(line, e.to_string()))?;
        }
        Ok(cfg)
    }

    pub fn from_manifest_file(path: &Path, default_preset: Option<Preset>) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_manifest(&text, path, default_preset)
    }

    pub fn param(&self, key: &str) -> f64 {
        self.params[key]
    }
}
