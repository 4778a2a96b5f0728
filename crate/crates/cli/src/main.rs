use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use scatsel_core::config::{parse_config, Diagnostic};
use scatsel_core::{PipelineError, RunConfig};

/// Score every scatterplot of a labelled table and select a varied top-K set.
#[derive(Debug, Parser)]
#[command(name = "scatsel", version)]
struct Args {
    /// Flat `key = value` config file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Name of the class label column.
    #[arg(long)]
    label: Option<String>,
    /// all-pairs or bipartite.
    #[arg(long)]
    mode: Option<String>,
    /// Comma-separated x dimensions (bipartite mode).
    #[arg(long)]
    x_dims: Option<String>,
    /// Comma-separated y dimensions (bipartite mode).
    #[arg(long)]
    y_dims: Option<String>,
    /// Similarity above which two plots are linked, in [-1, 1].
    #[arg(long, allow_hyphen_values = true)]
    d_thres: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Entropy grid cells per axis.
    #[arg(long)]
    grid: Option<String>,
    /// Fixed edge-length cutoff in place of the data-driven one.
    #[arg(long)]
    omega: Option<String>,
    /// vector-norm or scalar-s4.
    #[arg(long)]
    color_sum: Option<String>,
    /// Comma-separated thresholds; writes sweep.csv.
    #[arg(long, allow_hyphen_values = true)]
    sweep: Option<String>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Field delimiter: a single character, or `tab`.
    #[arg(long)]
    delimiter: Option<String>,
    /// Also write the pruned mesh of each selected plot as SVG.
    #[arg(long)]
    dump_meshes: bool,
}

impl Args {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.to_string_lossy().into_owned());
        let mut out: Vec<(&'static str, Option<String>)> = vec![
            ("input", path(&self.input)),
            ("label", self.label.clone()),
            ("mode", self.mode.clone()),
            ("x_dims", self.x_dims.clone()),
            ("y_dims", self.y_dims.clone()),
            ("d_thres", self.d_thres.clone()),
            ("k", self.k.clone()),
            ("grid", self.grid.clone()),
            ("omega", self.omega.clone()),
            ("color_sum", self.color_sum.clone()),
            ("sweep", self.sweep.clone()),
            ("out_dir", path(&self.out_dir)),
            ("delimiter", self.delimiter.clone()),
        ];
        if self.dump_meshes {
            out.push(("dump_meshes", Some("true".into())));
        }
        out.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect()
    }
}

fn build_config(args: &Args) -> anyhow::Result<Result<RunConfig, Vec<Diagnostic>>> {
    let mut config = RunConfig::default();
    let mut diags = Vec::new();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        match parse_config(&text) {
            Ok(entries) => diags.extend(config.apply(&entries)),
            Err(errs) => diags.extend(errs),
        }
    }
    for (key, value) in args.overrides() {
        if let Err(d) = config.set(key, &value) {
            diags.push(d);
        }
    }
    if diags.is_empty() {
        diags = config.validate();
    }
    Ok(if diags.is_empty() { Ok(config) } else { Err(diags) })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match build_config(&args) {
        Ok(Ok(c)) => c,
        Ok(Err(diags)) => {
            for d in diags {
                eprintln!("error: {d}");
            }
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match scatsel_core::run(&config) {
        Ok(summary) => {
            print!("{summary}");
            ExitCode::SUCCESS
        }
        Err(PipelineError::Invalid(diags)) => {
            for d in diags {
                eprintln!("error: {d}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
