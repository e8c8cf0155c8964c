//! Pipeline parameters and the `key = value` config file.
//!
//! ```text
//! # every key is optional; CLI flags override file values
//! image = fragment.png
//! binding = fragment.bind
//! output_dir = out
//! hsv = 0.399,0.78,0.32,1,0.2,1
//! se_size = 3
//! morph_order = dilate_first
//! min_area = 50
//! operator = sobel
//! edge_threshold = 0
//! area_mode = corrected
//! emit_diagnostics = false
//! ```

use std::fmt;
use std::path::PathBuf;

use shoreline_core::{AreaMode, HsvRange, MorphOrder, OperatorKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },
    #[error("missing required setting `{0}`")]
    Missing(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub image_path: PathBuf,
    pub binding_path: PathBuf,
    pub hsv_range: HsvRange,
    pub se_size: usize,
    pub morph_order: MorphOrder,
    pub min_area: usize,
    pub operator: OperatorKind,
    pub edge_threshold: f64,
    pub area_mode: AreaMode,
    pub output_dir: PathBuf,
    pub emit_diagnostics: bool,
}

impl PipelineConfig {
    /// Defaults for everything except the three paths.
    pub fn new(image_path: impl Into<PathBuf>, binding_path: impl Into<PathBuf>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            image_path: image_path.into(),
            binding_path: binding_path.into(),
            hsv_range: HsvRange::default(),
            se_size: 3,
            morph_order: MorphOrder::DilateFirst,
            min_area: 50,
            operator: OperatorKind::Sobel,
            edge_threshold: 0.0,
            area_mode: AreaMode::Corrected,
            output_dir: output_dir.into(),
            emit_diagnostics: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (key, path) in [("image", &self.image_path), ("binding", &self.binding_path), ("output_dir", &self.output_dir)] {
            if path.as_os_str().is_empty() {
                return Err(ConfigError::InvalidValue { key: key.into(), reason: "path is empty".into() });
            }
        }
        if self.se_size == 0 || self.se_size.is_multiple_of(2) {
            return Err(ConfigError::InvalidValue {
                key: "se_size".into(),
                reason: format!("{} is not an odd size >= 1", self.se_size),
            });
        }
        if !(self.edge_threshold >= 0.0 && self.edge_threshold.is_finite()) {
            return Err(ConfigError::InvalidValue {
                key: "edge_threshold".into(),
                reason: format!("{} is not a finite non-negative number", self.edge_threshold),
            });
        }
        Ok(())
    }
}

pub fn parse_hsv(value: &str) -> Result<HsvRange, String> {
    let parts: Vec<f64> = value
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("`{s}` is not a number")))
        .collect::<Result<_, _>>()?;
    let [h0, h1, s0, s1, v0, v1] = parts[..] else {
        return Err(format!("expected 6 comma-separated values, got {}", parts.len()));
    };
    HsvRange::new(h0, h1, s0, s1, v0, v1).map_err(|e| e.to_string())
}

pub fn parse_morph_order(value: &str) -> Result<MorphOrder, String> {
    match value.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "dilate_first" => Ok(MorphOrder::DilateFirst),
        "erode_first" => Ok(MorphOrder::ErodeFirst),
        other => Err(format!("unknown morphology order `{other}` (expected dilate_first or erode_first)")),
    }
}

fn parse_bool(value: &str) -> Result<bool, String> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

/// Settings read from a config file; unset keys stay `None`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub image_path: Option<PathBuf>,
    pub binding_path: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub hsv_range: Option<HsvRange>,
    pub se_size: Option<usize>,
    pub morph_order: Option<MorphOrder>,
    pub min_area: Option<usize>,
    pub operator: Option<OperatorKind>,
    pub edge_threshold: Option<f64>,
    pub area_mode: Option<AreaMode>,
    pub emit_diagnostics: Option<bool>,
}

impl ConfigOverrides {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut out = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(ConfigError::Syntax { line: i + 1, reason: format!("expected `key = value`, got `{line}`") });
            };
            let (key, value) = (key.trim(), value.trim());
            out.set(key, value).map_err(|reason| ConfigError::Syntax { line: i + 1, reason })?;
        }
        Ok(out)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let num = |v: &str| v.parse::<usize>().map_err(|_| format!("{key}: `{v}` is not a non-negative integer"));
        match key {
            "image" => self.image_path = Some(value.into()),
            "binding" => self.binding_path = Some(value.into()),
            "output_dir" | "out" => self.output_dir = Some(value.into()),
            "hsv" => self.hsv_range = Some(parse_hsv(value)?),
            "se_size" | "se" => self.se_size = Some(num(value)?),
            "morph_order" => self.morph_order = Some(parse_morph_order(value)?),
            "min_area" => self.min_area = Some(num(value)?),
            "operator" => self.operator = Some(value.parse().map_err(|e| format!("{e}"))?),
            "edge_threshold" => {
                self.edge_threshold =
                    Some(value.parse().map_err(|_| format!("edge_threshold: `{value}` is not a number"))?)
            }
            "area_mode" => self.area_mode = Some(value.parse()?),
            "emit_diagnostics" | "diagnostics" => self.emit_diagnostics = Some(parse_bool(value)?),
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    /// Layers `other` on top of `self`; values set in `other` win.
    pub fn merge(self, other: ConfigOverrides) -> Self {
        Self {
            image_path: other.image_path.or(self.image_path),
            binding_path: other.binding_path.or(self.binding_path),
            output_dir: other.output_dir.or(self.output_dir),
            hsv_range: other.hsv_range.or(self.hsv_range),
            se_size: other.se_size.or(self.se_size),
            morph_order: other.morph_order.or(self.morph_order),
            min_area: other.min_area.or(self.min_area),
            operator: other.operator.or(self.operator),
            edge_threshold: other.edge_threshold.or(self.edge_threshold),
            area_mode: other.area_mode.or(self.area_mode),
            emit_diagnostics: other.emit_diagnostics.or(self.emit_diagnostics),
        }
    }

    pub fn into_config(self) -> Result<PipelineConfig, ConfigError> {
        let mut cfg = PipelineConfig::new(
            self.image_path.ok_or(ConfigError::Missing("image"))?,
            self.binding_path.ok_or(ConfigError::Missing("binding"))?,
            self.output_dir.ok_or(ConfigError::Missing("output_dir"))?,
        );
        if let Some(v) = self.hsv_range {
            cfg.hsv_range = v;
        }
        if let Some(v) = self.se_size {
            cfg.se_size = v;
        }
        if let Some(v) = self.morph_order {
            cfg.morph_order = v;
        }
        if let Some(v) = self.min_area {
            cfg.min_area = v;
        }
        if let Some(v) = self.operator {
            cfg.operator = v;
        }
        if let Some(v) = self.edge_threshold {
            cfg.edge_threshold = v;
        }
        if let Some(v) = self.area_mode {
            cfg.area_mode = v;
        }
        if let Some(v) = self.emit_diagnostics {
            cfg.emit_diagnostics = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl fmt::Display for PipelineConfig {
    /// Renders the config in file syntax, one key per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [h0, h1, s0, s1, v0, v1] = self.hsv_range.bounds();
        writeln!(f, "image = {}", self.image_path.display())?;
        writeln!(f, "binding = {}", self.binding_path.display())?;
        writeln!(f, "output_dir = {}", self.output_dir.display())?;
        writeln!(f, "hsv = {h0},{h1},{s0},{s1},{v0},{v1}")?;
        writeln!(f, "se_size = {}", self.se_size)?;
        let order = match self.morph_order {
            MorphOrder::DilateFirst => "dilate_first",
            MorphOrder::ErodeFirst => "erode_first",
        };
        writeln!(f, "morph_order = {order}")?;
        writeln!(f, "min_area = {}", self.min_area)?;
        writeln!(f, "operator = {}", self.operator)?;
        writeln!(f, "edge_threshold = {}", self.edge_threshold)?;
        writeln!(f, "area_mode = {}", self.area_mode)?;
        write!(f, "emit_diagnostics = {}", self.emit_diagnostics)
    }
}
