//! Scatterplot scoring and selection: Delaunay-based shape scores, class
//! separation by grid entropy, a cosine-similarity graph over score vectors,
//! and greedy coloring to pick a varied top-K set.

pub mod config;
pub mod data;
pub mod geometry;
pub mod metrics;
pub mod pipeline;
pub mod render;
pub mod report;
pub mod selection;

pub use config::{Diagnostic, Mode, RunConfig};
pub use data::{load_dataset, DataError, Dataset, PairMode, ScatterplotSpec};
pub use geometry::{Point, TriMesh, Triangulation};
pub use metrics::{MetricParams, ScoreTable, ScoreVector};
pub use pipeline::{run, PipelineError, RunSummary};
pub use selection::{ColorSumRule, SelectionResult, SimilarityGraph, SweepRow};
