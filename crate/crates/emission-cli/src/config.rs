//! TOML run configuration and its resolution against command-line flags.
//!
//! Every section is optional in the file; each subcommand validates the
//! presence of what it actually needs, so one config file can drive several
//! commands. Flags always win over file values.

use crate::CliError;
use emission_core::angular::HalfIntegerJ;
use emission_core::modebath::{DensityProfile, ModeGridSpec};
use emission_core::observables::HgCoefficient;
use emission_core::wwa::{InitialState, TransitionSpec, WwaScheme};
use emission_core::{Complex64, CyclotronSpec};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Raw deserialized file contents.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub transition: Option<TransitionSection>,
    /// m_H → [re, im] amplitude, keys like `"1"`, `"-1"`, `"3/2"`.
    pub state: Option<BTreeMap<String, [f64; 2]>>,
    pub scheme: Option<SchemeSection>,
    pub grids: Option<GridsSection>,
    pub oracle: Option<OracleSection>,
    pub cyclotron: Option<CyclotronSection>,
    pub output: Option<OutputSection>,
}

/// Angular momentum in TOML: bare integer or a string like `"3/2"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum JValue {
    Int(u32),
    Text(String),
}

impl JValue {
    fn resolve(&self) -> Result<HalfIntegerJ, CliError> {
        match self {
            JValue::Int(n) => Ok(HalfIntegerJ::integer(*n)),
            JValue::Text(s) => HalfIntegerJ::from_str(s).map_err(CliError::Core),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSection {
    pub h: Option<JValue>,
    pub g: Option<JValue>,
    pub omega0_over_gamma: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSection {
    /// `"pure"` or `"modified"`.
    pub variant: Option<String>,
    /// Pure: half-width W of the symmetric window (−W, W).
    pub half_window: Option<f64>,
    /// Modified: lower cutoff L of the window (−L, U).
    pub lower: Option<f64>,
    /// Modified: upper cutoff U.
    pub upper: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridsSection {
    pub time: Option<TimeGridSection>,
    pub radial: Option<RadialGridSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGridSection {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialGridSection {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    /// `"linear"` (default) or `"log"` (requires start > 0).
    pub spacing: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSection {
    pub n_modes: usize,
    pub half_span_in_gamma: f64,
    /// `"flat"` (default) or `"cubic"`.
    pub density_profile: Option<String>,
    pub tau_end: f64,
    pub dt: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclotronSection {
    pub q_charge: f64,
    pub b_field: f64,
    pub mass: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<String>,
    pub path: Option<PathBuf>,
}

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Csv,
    Json,
}

impl OutFormat {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(OutFormat::Csv),
            "json" => Ok(OutFormat::Json),
            other => Err(CliError::Config(format!(
                "output format must be \"csv\" or \"json\", got {other:?}"
            ))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutFormat::Csv => "csv",
            OutFormat::Json => "json",
        }
    }
}

/// File config merged with the command-line flags.
pub struct Resolved {
    file: FileConfig,
    flag_format: Option<String>,
    flag_scheme: Option<String>,
    flag_out: Option<PathBuf>,
    as_printed: bool,
}

impl Resolved {
    pub fn load(
        path: &Path,
        flag_format: Option<String>,
        flag_scheme: Option<String>,
        flag_out: Option<PathBuf>,
        as_printed: bool,
    ) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        let file: FileConfig = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Ok(Self { file, flag_format, flag_scheme, flag_out, as_printed })
    }

    /// ω₀/γ; defaults to 1e6 when the file does not set it.
    pub fn ratio(&self) -> f64 {
        self.file
            .transition
            .as_ref()
            .and_then(|t| t.omega0_over_gamma)
            .unwrap_or(1e6)
    }

    /// Validated transition; H defaults to 1 and G to 0.
    pub fn transition(&self) -> Result<TransitionSpec, CliError> {
        let (h, g) = match &self.file.transition {
            Some(t) => (
                t.h.as_ref().map(JValue::resolve).transpose()?,
                t.g.as_ref().map(JValue::resolve).transpose()?,
            ),
            None => (None, None),
        };
        let h = h.unwrap_or(HalfIntegerJ::integer(1));
        let g = g.unwrap_or(HalfIntegerJ::integer(0));
        TransitionSpec::new(h, g, self.ratio()).map_err(CliError::Core)
    }

    /// Initial excited state from the `[state]` table (required).
    pub fn state(&self, spec: &TransitionSpec) -> Result<InitialState, CliError> {
        let table = self.file.state.as_ref().ok_or_else(|| {
            CliError::Config("this command needs a [state] table of m_H amplitudes".into())
        })?;
        let mut pairs = Vec::new();
        for (key, [re, im]) in table {
            pairs.push((parse_twice_m(key)?, Complex64::new(*re, *im)));
        }
        InitialState::new(spec.h(), &pairs).map_err(CliError::Core)
    }

    /// Detuning window scheme: flag > file > modified defaults.
    pub fn scheme(&self) -> Result<WwaScheme, CliError> {
        let section = self.file.scheme.as_ref();
        let variant = self
            .flag_scheme
            .clone()
            .or_else(|| section.and_then(|s| s.variant.clone()))
            .unwrap_or_else(|| "modified".into());
        match variant.as_str() {
            "pure" => match section.and_then(|s| s.half_window) {
                Some(w) => WwaScheme::pure_with(w).map_err(CliError::Core),
                None => Ok(WwaScheme::pure()),
            },
            "modified" => {
                let lower = section.and_then(|s| s.lower);
                let upper = section.and_then(|s| s.upper);
                match (lower, upper) {
                    (None, None) => Ok(WwaScheme::modified()),
                    (l, u) => {
                        let (dl, du) = WwaScheme::modified().window();
                        WwaScheme::modified_with(l.unwrap_or(-dl), u.unwrap_or(du))
                            .map_err(CliError::Core)
                    }
                }
            }
            other => Err(CliError::Config(format!(
                "scheme variant must be \"pure\" or \"modified\", got {other:?}"
            ))),
        }
    }

    /// Uniform τ grid from `[grids.time]` (required).
    pub fn time_grid(&self) -> Result<Vec<f64>, CliError> {
        let grid = self
            .file
            .grids
            .as_ref()
            .and_then(|g| g.time.as_ref())
            .ok_or_else(|| {
                CliError::Config("this command needs a [grids.time] section".into())
            })?;
        let taus = linspace(grid.start, grid.stop, grid.count)?;
        emission_core::wwa::validate_tau_grid(&taus).map_err(CliError::Core)?;
        Ok(taus)
    }

    /// Radial grid from `[grids.radial]` (required), linear or logarithmic.
    pub fn radial_grid(&self) -> Result<Vec<f64>, CliError> {
        let grid = self
            .file
            .grids
            .as_ref()
            .and_then(|g| g.radial.as_ref())
            .ok_or_else(|| {
                CliError::Config("this command needs a [grids.radial] section".into())
            })?;
        match grid.spacing.as_deref().unwrap_or("linear") {
            "linear" => linspace(grid.start, grid.stop, grid.count),
            "log" => {
                if grid.start <= 0.0 {
                    return Err(CliError::Config(
                        "log radial spacing needs start > 0".into(),
                    ));
                }
                let logs = linspace(grid.start.ln(), grid.stop.ln(), grid.count)?;
                Ok(logs.into_iter().map(f64::exp).collect())
            }
            other => Err(CliError::Config(format!(
                "radial spacing must be \"linear\" or \"log\", got {other:?}"
            ))),
        }
    }

    /// Mode-bath parameters from `[oracle]` (required):
    /// (grid, tau_end, dt, profile name).
    pub fn oracle(&self) -> Result<(ModeGridSpec, f64, f64, &'static str), CliError> {
        let section = self.file.oracle.as_ref().ok_or_else(|| {
            CliError::Config("this command needs an [oracle] section".into())
        })?;
        let (profile, name) = match section.density_profile.as_deref().unwrap_or("flat") {
            "flat" => (DensityProfile::Flat, "flat"),
            "cubic" => (DensityProfile::Cubic, "cubic"),
            other => {
                return Err(CliError::Config(format!(
                    "density_profile must be \"flat\" or \"cubic\", got {other:?}"
                )))
            }
        };
        if section.tau_end < 5.0 {
            return Err(CliError::Config(format!(
                "the oracle summary fits the decay rate and line shape, which needs \
                 tau_end >= 5, got {}",
                section.tau_end
            )));
        }
        let grid = ModeGridSpec::new(
            section.n_modes,
            section.half_span_in_gamma,
            profile,
            self.ratio(),
        )
        .map_err(CliError::Core)?;
        Ok((grid, section.tau_end, section.dt, name))
    }

    /// Cyclotron parameters from `[cyclotron]` (required).
    pub fn cyclotron(&self) -> Result<CyclotronSpec, CliError> {
        let section = self.file.cyclotron.as_ref().ok_or_else(|| {
            CliError::Config("this command needs a [cyclotron] section".into())
        })?;
        CyclotronSpec::new(section.q_charge, section.b_field, section.mass)
            .map_err(CliError::Core)
    }

    /// Output format: flag > file > CSV.
    pub fn format(&self) -> Result<OutFormat, CliError> {
        if let Some(f) = &self.flag_format {
            return OutFormat::parse(f);
        }
        if let Some(f) = self.file.output.as_ref().and_then(|o| o.format.as_deref()) {
            return OutFormat::parse(f);
        }
        Ok(OutFormat::Csv)
    }

    /// Output path: flag > file > stdout (None).
    pub fn out_path(&self) -> Option<PathBuf> {
        self.flag_out
            .clone()
            .or_else(|| self.file.output.as_ref().and_then(|o| o.path.clone()))
    }

    /// Closed-form coefficient choice for the H = G field bracket.
    pub fn hg_coefficient(&self) -> HgCoefficient {
        if self.as_printed {
            HgCoefficient::AsPrinted
        } else {
            HgCoefficient::ConservationConsistent
        }
    }
}

/// `count` evenly spaced points across [start, stop].
fn linspace(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
    if count == 0 {
        return Err(CliError::Config("grid count must be at least 1".into()));
    }
    if !(start.is_finite() && stop.is_finite()) || stop < start {
        return Err(CliError::Config(format!(
            "grid bounds must be finite with stop >= start, got [{start}, {stop}]"
        )));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    if stop == start {
        return Err(CliError::Config(
            "grid with more than one point needs stop > start".into(),
        ));
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i == count - 1 { stop } else { start + step * i as f64 })
        .collect())
}

/// Magnetic quantum number key: `"2"`, `"-1"`, `"3/2"`, `"-1/2"`, or an
/// exact half decimal like `"0.5"`; returns twice the value.
pub fn parse_twice_m(s: &str) -> Result<i32, CliError> {
    let bad = || CliError::Config(format!("cannot parse m_H key {s:?}"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(bad());
        }
        return num.trim().parse().map_err(|_| bad());
    }
    if let Ok(n) = s.parse::<i32>() {
        return n.checked_mul(2).ok_or_else(bad);
    }
    let v: f64 = s.parse().map_err(|_| bad())?;
    let twice = v * 2.0;
    if twice.fract() != 0.0 || twice.abs() > i32::MAX as f64 {
        return Err(bad());
    }
    Ok(twice as i32)
}
