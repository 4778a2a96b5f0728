//! Tabular and JSON reports: per-plot scores, the similarity graph with its
//! coloring and selection, and the threshold sweep table.

use serde::Serialize;

use crate::data::{Dataset, ScatterplotSpec};
use crate::metrics::ScoreVector;
use crate::selection::{ColorSumRule, SelectionResult, SimilarityGraph, SweepRow};

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} scatterplots but {1} score vectors")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Serialize)]
struct ScoreRow<'a> {
    id: usize,
    x: &'a str,
    y: &'a str,
    s1: f64,
    s2: f64,
    s3: f64,
    s4: f64,
    norm: f64,
}

fn score_rows<'a>(
    d: &'a Dataset,
    specs: &[ScatterplotSpec],
    scores: &[ScoreVector],
) -> Result<Vec<ScoreRow<'a>>, ReportError> {
    if specs.len() != scores.len() {
        return Err(ReportError::LengthMismatch(specs.len(), scores.len()));
    }
    Ok(specs
        .iter()
        .zip(scores)
        .map(|(spec, s)| ScoreRow {
            id: spec.id,
            x: d.dim_name(spec.x_dim),
            y: d.dim_name(spec.y_dim),
            s1: s.s1,
            s2: s.s2,
            s3: s.s3,
            s4: s.s4,
            norm: s.norm(),
        })
        .collect())
}

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, ReportError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| ReportError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn scores_csv(d: &Dataset, specs: &[ScatterplotSpec], scores: &[ScoreVector]) -> Result<String, ReportError> {
    csv_string(&score_rows(d, specs, scores)?)
}

pub fn scores_json(d: &Dataset, specs: &[ScatterplotSpec], scores: &[ScoreVector]) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(&score_rows(d, specs, scores)?)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct Vertex {
    id: usize,
    s1: f64,
    s2: f64,
    s3: f64,
    s4: f64,
    norm: f64,
    color: Option<usize>,
}

#[derive(Serialize)]
struct Edge {
    i: usize,
    j: usize,
    similarity: f64,
}

#[derive(Serialize)]
struct GraphReport<'a> {
    d_thres: f64,
    color_sum: &'static str,
    edge_count: usize,
    color_count: usize,
    chosen_color: usize,
    color_sums: &'a [f64],
    members: &'a [usize],
    selection_order: &'a [usize],
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

pub fn graph_json(g: &SimilarityGraph, result: &SelectionResult, rule: ColorSumRule) -> Result<String, ReportError> {
    let colors = g.colors();
    let report = GraphReport {
        d_thres: g.d_thres,
        color_sum: rule.as_str(),
        edge_count: result.diagnostics.edge_count,
        color_count: result.diagnostics.color_count,
        chosen_color: result.chosen_color,
        color_sums: &result.diagnostics.color_sums,
        members: &result.members,
        selection_order: &result.selected,
        vertices: g
            .scores
            .iter()
            .enumerate()
            .map(|(id, s)| Vertex {
                id,
                s1: s.s1,
                s2: s.s2,
                s3: s.s3,
                s4: s.s4,
                norm: s.norm(),
                color: colors.map(|c| c[id]),
            })
            .collect(),
        edges: g.edges.iter().map(|e| Edge { i: e.i, j: e.j, similarity: e.similarity }).collect(),
    };
    let mut s = serde_json::to_string_pretty(&report)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct SweepLine {
    d_thres: f64,
    edges: usize,
    colors: usize,
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, ReportError> {
    let lines: Vec<SweepLine> =
        rows.iter().map(|r| SweepLine { d_thres: r.d_thres, edges: r.edges, colors: r.colors }).collect();
    if lines.is_empty() {
        return Ok("d_thres,edges,colors\n".to_string());
    }
    csv_string(&lines)
}
