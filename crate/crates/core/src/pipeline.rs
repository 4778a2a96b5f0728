//! End-to-end run: load, score, color, select, render, report.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::config::{Diagnostic, RunConfig};
use crate::data::{self, DataError};
use crate::metrics::{self, MetricParams, MetricsError};
use crate::render::{self, PlotStyle, RenderError};
use crate::report::{self, ReportError};
use crate::selection;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("invalid configuration:\n{}", join(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Data(#[from] DataError),
    #[error("{0}")]
    Metrics(#[from] MetricsError),
    #[error("{0}")]
    Render(#[from] RenderError),
    #[error("{0}")]
    Report(#[from] ReportError),
}

fn join(diags: &[Diagnostic]) -> String {
    diags.iter().map(|d| format!("  {d}")).collect::<Vec<_>>().join("\n")
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub n_rows: usize,
    pub n_plots: usize,
    pub edges: usize,
    pub colors: usize,
    pub chosen_color: usize,
    pub selected: Vec<usize>,
    pub clamp_events: usize,
    pub artifacts: Vec<PathBuf>,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.selected.iter().map(|i| i.to_string()).collect();
        writeln!(f, "rows: {}", self.n_rows)?;
        writeln!(f, "scatterplots: {}", self.n_plots)?;
        writeln!(f, "edges: {}", self.edges)?;
        writeln!(f, "colors: {}", self.colors)?;
        writeln!(f, "chosen color: {}", self.chosen_color)?;
        writeln!(f, "selected: {}", ids.join(" "))?;
        if self.clamp_events > 0 {
            writeln!(f, "clamped scores: {}", self.clamp_events)?;
        }
        for p in &self.artifacts {
            writeln!(f, "wrote {}", p.display())?;
        }
        Ok(())
    }
}

/// Artifact file names relative to the output directory, with contents.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub files: Vec<(String, String)>,
    pub summary: RunSummary,
}

impl Artifacts {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }
}

/// Runs everything in memory without touching the output directory.
pub fn compute(config: &RunConfig) -> Result<Artifacts, PipelineError> {
    let diags = config.validate();
    if !diags.is_empty() {
        return Err(PipelineError::Invalid(diags));
    }
    let file = fs::File::open(&config.input)
        .map_err(|source| PipelineError::Io { path: config.input.clone(), source })?;
    let d = data::load_dataset(std::io::BufReader::new(file), &config.label, config.delimiter)?;
    let specs = data::enumerate_scatterplots(&d, &config.pair_mode())?;

    let params = MetricParams { grid: config.grid, omega: config.omega };
    let table = metrics::score_all(&d, &specs, &params)?;
    let (graph, result) = selection::select(&table.scores, config.d_thres, config.k, config.color_sum);

    let style = PlotStyle::default();
    let mut files = vec![
        ("scores.csv".to_string(), report::scores_csv(&d, &specs, &table.scores)?),
        ("scores.json".to_string(), report::scores_json(&d, &specs, &table.scores)?),
        ("graph.json".to_string(), report::graph_json(&graph, &result, config.color_sum)?),
        ("selection.svg".to_string(), render::render_grid(&d, &specs, &table.scores, &result.selected, &style)?),
        ("scores-chart.svg".to_string(), render::render_score_chart(&table.scores, &result.selected)?),
    ];
    if let Some(thresholds) = &config.sweep {
        let rows = selection::threshold_sweep(&table.scores, thresholds);
        files.push(("sweep.csv".to_string(), report::sweep_csv(&rows)?));
    }
    if config.dump_meshes {
        let nd = d.normalize();
        for &id in &result.selected {
            let mesh = metrics::scatterplot_mesh(&specs[id], &nd, config.omega);
            files.push((format!("mesh-{id}.svg"), render::render_mesh(&mesh, 400.0)));
        }
    }

    let summary = RunSummary {
        n_rows: d.n_rows(),
        n_plots: specs.len(),
        edges: result.diagnostics.edge_count,
        colors: result.diagnostics.color_count,
        chosen_color: result.chosen_color,
        selected: result.selected.clone(),
        clamp_events: table.clamp_events,
        artifacts: files.iter().map(|(n, _)| config.out_dir.join(n)).collect(),
    };
    Ok(Artifacts { files, summary })
}

fn write_all(dir: &Path, files: &[(String, String)]) -> Result<(), PipelineError> {
    fs::create_dir_all(dir).map_err(|source| PipelineError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    for (name, content) in files {
        let path = dir.join(name);
        if let Err(source) = fs::write(&path, content) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            let _ = fs::remove_file(&path);
            return Err(PipelineError::Io { path, source });
        }
        written.push(path);
    }
    Ok(())
}

/// Computes every artifact, then writes them. Nothing is written if any step
/// fails, and files from a failed write are removed again.
pub fn run(config: &RunConfig) -> Result<RunSummary, PipelineError> {
    let artifacts = compute(config)?;
    write_all(&config.out_dir, &artifacts.files)?;
    Ok(artifacts.summary)
}
