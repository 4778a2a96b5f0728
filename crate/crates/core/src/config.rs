//! Run configuration: defaults, a flat `key = value` file format, and
//! validation that reports every problem at once.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::data::PairMode;
use crate::selection::ColorSumRule;

pub const DEFAULT_D_THRES: f64 = 0.995;
pub const DEFAULT_K: usize = 16;
pub const DEFAULT_GRID: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(field: &str, message: impl Into<String>) -> Self {
        Self { field: field.to_string(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    AllPairs,
    Bipartite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    pub label: String,
    pub delimiter: u8,
    pub mode: Mode,
    pub x_dims: Vec<String>,
    pub y_dims: Vec<String>,
    pub d_thres: f64,
    pub k: usize,
    pub grid: usize,
    pub omega: Option<f64>,
    pub color_sum: ColorSumRule,
    pub out_dir: PathBuf,
    pub sweep: Option<Vec<f64>>,
    pub dump_meshes: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: PathBuf::new(),
            label: "label".to_string(),
            delimiter: b',',
            mode: Mode::AllPairs,
            x_dims: Vec::new(),
            y_dims: Vec::new(),
            d_thres: DEFAULT_D_THRES,
            k: DEFAULT_K,
            grid: DEFAULT_GRID,
            omega: None,
            color_sum: ColorSumRule::VectorNorm,
            out_dir: PathBuf::from("out"),
            sweep: None,
            dump_meshes: false,
        }
    }
}

pub const KEYS: [&str; 14] = [
    "input",
    "label",
    "delimiter",
    "mode",
    "x_dims",
    "y_dims",
    "d_thres",
    "k",
    "grid",
    "omega",
    "color_sum",
    "out_dir",
    "sweep",
    "dump_meshes",
];

fn parse_list(value: &str) -> Vec<String> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Diagnostic> {
    value.parse().map_err(|_| Diagnostic::new(key, format!("`{value}` is not a valid number")))
}

fn parse_delimiter(value: &str) -> Result<u8, Diagnostic> {
    match value {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        "comma" => Ok(b','),
        "semicolon" => Ok(b';'),
        s if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        s => Err(Diagnostic::new("delimiter", format!("`{s}` is not a single ASCII character"))),
    }
}

impl RunConfig {
    /// Sets one field from its textual form. Keys use underscores; dashes
    /// are accepted too so flag names can be passed through unchanged.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Diagnostic> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "input" => self.input = PathBuf::from(value),
            "label" => self.label = value.to_string(),
            "delimiter" => self.delimiter = parse_delimiter(value)?,
            "mode" => {
                self.mode = match value {
                    "all-pairs" | "all_pairs" => Mode::AllPairs,
                    "bipartite" => Mode::Bipartite,
                    other => return Err(Diagnostic::new("mode", format!("unknown mode `{other}`"))),
                }
            }
            "x_dims" => self.x_dims = parse_list(value),
            "y_dims" => self.y_dims = parse_list(value),
            "d_thres" => self.d_thres = parse_num(&key, value)?,
            "k" => self.k = parse_num(&key, value)?,
            "grid" => self.grid = parse_num(&key, value)?,
            "omega" => self.omega = if value.is_empty() { None } else { Some(parse_num(&key, value)?) },
            "color_sum" => self.color_sum = value.parse().map_err(|e: String| Diagnostic::new("color_sum", e))?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "sweep" => {
                let items = parse_list(value);
                let parsed: Result<Vec<f64>, _> = items.iter().map(|v| parse_num("sweep", v)).collect();
                self.sweep = Some(parsed?);
            }
            "dump_meshes" => {
                self.dump_meshes = match value {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    other => return Err(Diagnostic::new("dump_meshes", format!("`{other}` is not a boolean"))),
                }
            }
            other => return Err(Diagnostic::new(other, "unknown configuration key")),
        }
        Ok(())
    }

    /// Applies every entry; collects all problems rather than stopping at the first.
    pub fn apply(&mut self, entries: &BTreeMap<String, String>) -> Vec<Diagnostic> {
        entries.iter().filter_map(|(k, v)| self.set(k, v).err()).collect()
    }

    pub fn pair_mode(&self) -> PairMode {
        match self.mode {
            Mode::AllPairs => PairMode::AllPairs,
            Mode::Bipartite => PairMode::Bipartite { x_dims: self.x_dims.clone(), y_dims: self.y_dims.clone() },
        }
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.input.as_os_str().is_empty() {
            out.push(Diagnostic::new("input", "no input file given"));
        }
        if self.label.is_empty() {
            out.push(Diagnostic::new("label", "label column name is empty"));
        }
        if !(self.d_thres.is_finite() && (-1.0..=1.0).contains(&self.d_thres)) {
            out.push(Diagnostic::new("d_thres", format!("{} is outside [-1, 1]", self.d_thres)));
        }
        if self.k < 1 {
            out.push(Diagnostic::new("k", "K must be at least 1"));
        }
        if self.grid < 1 {
            out.push(Diagnostic::new("grid", "grid must have at least 1 cell per axis"));
        }
        if let Some(w) = self.omega {
            if !(w.is_finite() && w > 0.0) {
                out.push(Diagnostic::new("omega", format!("{w} is not a positive length")));
            }
        }
        if let Some(sweep) = &self.sweep {
            if sweep.is_empty() {
                out.push(Diagnostic::new("sweep", "threshold list is empty"));
            }
            for t in sweep {
                if !(t.is_finite() && (-1.0..=1.0).contains(t)) {
                    out.push(Diagnostic::new("sweep", format!("threshold {t} is outside [-1, 1]")));
                }
            }
        }
        match self.mode {
            Mode::Bipartite => {
                if self.x_dims.is_empty() {
                    out.push(Diagnostic::new("x_dims", "bipartite mode needs at least one x dimension"));
                }
                if self.y_dims.is_empty() {
                    out.push(Diagnostic::new("y_dims", "bipartite mode needs at least one y dimension"));
                }
                let overlap: Vec<&str> =
                    self.x_dims.iter().filter(|x| self.y_dims.contains(x)).map(String::as_str).collect();
                if !overlap.is_empty() {
                    out.push(Diagnostic::new(
                        "x_dims",
                        format!("dimensions on both axes: {}", overlap.join(", ")),
                    ));
                }
            }
            Mode::AllPairs => {
                if !self.x_dims.is_empty() || !self.y_dims.is_empty() {
                    out.push(Diagnostic::new("mode", "x_dims/y_dims are only used in bipartite mode"));
                }
            }
        }
        out
    }
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// skipped. A later duplicate key is an error, as is a line without `=`.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, Vec<Diagnostic>> {
    let mut map = BTreeMap::new();
    let mut errors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = format!("line {}", i + 1);
        let Some((k, v)) = line.split_once('=') else {
            errors.push(Diagnostic::new(&field, "expected `key = value`"));
            continue;
        };
        let key = k.trim().replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            errors.push(Diagnostic::new(&field, format!("unknown key `{key}`")));
        } else if map.insert(key.clone(), v.trim().to_string()).is_some() {
            errors.push(Diagnostic::new(&field, format!("duplicate key `{key}`")));
        }
    }
    if errors.is_empty() { Ok(map) } else { Err(errors) }
}
