//! Per-scatterplot scores: correlation, thinness, clumpiness and label separateness.
//!
//! All scores are computed on the normalized dataset and clamped to `[0, 1]`.

use rayon::prelude::*;
use thiserror::Error;

use crate::data::{Dataset, ScatterplotSpec};
use crate::geometry::{
    delaunay, minimum_spanning_tree, prune, prune_threshold, DisjointSets, MeshEdge, TriMesh, Triangulation,
};

/// Sums of grid entropy at or below this are treated as zero.
pub const ENTROPY_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("columns differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("grid must have at least one cell per axis")]
    EmptyGrid,
}

/// The four scores of one scatterplot.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ScoreVector {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
}

impl ScoreVector {
    pub fn new(s1: f64, s2: f64, s3: f64, s4: f64) -> Self {
        Self { s1, s2, s3, s4 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.s1, self.s2, self.s3, self.s4]
    }

    pub fn norm(&self) -> f64 {
        self.as_array().iter().map(|s| s * s).sum::<f64>().sqrt()
    }

    pub fn max_component(&self) -> f64 {
        self.as_array().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn dot(&self, other: &ScoreVector) -> f64 {
        self.as_array().iter().zip(other.as_array()).map(|(a, b)| a * b).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    /// Entropy grid cells per axis.
    pub grid: usize,
    /// Fixed prune threshold; `None` derives it from each mesh's edge lengths.
    pub omega: Option<f64>,
}

impl Default for MetricParams {
    fn default() -> Self {
        Self { grid: 5, omega: None }
    }
}

/// Clamps to `[0, 1]` (NaN maps to 0) and reports whether the value moved.
fn clamp_unit(v: f64) -> (f64, bool) {
    if v.is_nan() {
        return (0.0, true);
    }
    let c = v.clamp(0.0, 1.0);
    (c, c != v)
}

/// Average (fractional) ranks, 1-based.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return 0.0;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

/// Spearman's rank correlation with average ranks for ties. A constant column
/// (or fewer than two values) gives 0.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, MetricsError> {
    if x.len() != y.len() {
        return Err(MetricsError::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 2 {
        return Ok(0.0);
    }
    Ok(pearson(&average_ranks(x), &average_ranks(y)))
}

/// Squared Spearman correlation of the spec's two dimensions.
pub fn score_correlation(spec: &ScatterplotSpec, d: &Dataset) -> f64 {
    let rho = spearman(d.column(spec.x_dim), d.column(spec.y_dim)).expect("dataset columns share a length");
    clamp_unit(rho * rho).0
}

/// `1 - sqrt(4π·area) / perimeter` of the pruned mesh; 0 for an empty mesh.
pub fn thinness(mesh: &TriMesh) -> f64 {
    if mesh.is_empty() || mesh.total_perimeter <= 0.0 {
        return 0.0;
    }
    1.0 - (4.0 * std::f64::consts::PI * mesh.total_area).sqrt() / mesh.total_perimeter
}

/// Runt-based clumpiness over the minimum spanning tree of `n` distinct points.
///
/// Walking the tree edges in ascending order, each edge `e` joins two
/// clusters; the smaller one is the runt. Cutting `e` (and every longer edge)
/// leaves the runt's longest edge `e_r` behind, and the merge scores
/// `(2 |runt| / n) (1 - |e_r| / |e|)`. Runts of a single point have no edge
/// and score 0. The result is the best merge.
pub fn clumpiness(n: usize, mst: &[MeshEdge]) -> f64 {
    if n < 3 || mst.is_empty() {
        return 0.0;
    }
    let mut sets = DisjointSets::new(n);
    let mut longest = vec![0.0f64; n];
    let mut best = 0.0f64;
    for e in mst {
        let (ra, rb) = (sets.find(e.a), sets.find(e.b));
        let (sa, sb) = (sets.size(ra), sets.size(rb));
        let runt_score = |size: usize, runt_longest: f64| {
            if size < 2 || e.length.is_nan() || e.length <= 0.0 {
                return 0.0;
            }
            (2.0 * size as f64 / n as f64) * (1.0 - runt_longest / e.length)
        };
        let score = match sa.cmp(&sb) {
            std::cmp::Ordering::Less => runt_score(sa, longest[ra]),
            std::cmp::Ordering::Greater => runt_score(sb, longest[rb]),
            std::cmp::Ordering::Equal => runt_score(sa, longest[ra]).max(runt_score(sb, longest[rb])),
        };
        best = best.max(score);
        let merged_longest = longest[ra].max(longest[rb]).max(e.length);
        sets.union(ra, rb);
        let root = sets.find(ra);
        longest[root] = merged_longest;
    }
    best
}

/// Delaunay triangulation of one scatterplot with its pruned mesh.
#[derive(Debug, Clone)]
pub struct PlotGeometry {
    pub triangulation: Triangulation,
    pub mesh: TriMesh,
}

impl PlotGeometry {
    pub fn build(points: &[[f64; 2]], omega: Option<f64>) -> Self {
        let triangulation = delaunay(points);
        let omega = omega.unwrap_or_else(|| prune_threshold(&triangulation.edge_lengths()));
        let mesh = prune(&triangulation, omega);
        Self { triangulation, mesh }
    }

    pub fn thinness(&self) -> f64 {
        thinness(&self.mesh)
    }

    /// 0 when the points span no triangle.
    pub fn clumpiness(&self) -> f64 {
        if self.triangulation.triangles.is_empty() {
            return 0.0;
        }
        clumpiness(self.triangulation.points.len(), &minimum_spanning_tree(&self.triangulation))
    }
}

/// Builds the pruned mesh of `spec` on the normalized dataset `nd`.
pub fn scatterplot_mesh(spec: &ScatterplotSpec, nd: &Dataset, omega: Option<f64>) -> TriMesh {
    PlotGeometry::build(&nd.points(spec), omega).mesh
}

pub fn score_thinness(spec: &ScatterplotSpec, nd: &Dataset, omega: Option<f64>) -> f64 {
    clamp_unit(thinness(&scatterplot_mesh(spec, nd, omega))).0
}

pub fn score_clumpy(spec: &ScatterplotSpec, nd: &Dataset, omega: Option<f64>) -> f64 {
    clamp_unit(PlotGeometry::build(&nd.points(spec), omega).clumpiness()).0
}

/// Label counts over a `g × g` partition of the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyGrid {
    pub cells_per_axis: usize,
    /// `counts[cell][class]`, cells in row-major order (`cell = iy * g + ix`).
    pub counts: Vec<Vec<usize>>,
    /// Per-cell entropy in bits, weighted by the cell's share of all points.
    pub cell_entropy: Vec<f64>,
    pub n_points: usize,
}

impl EntropyGrid {
    pub fn total_entropy(&self) -> f64 {
        self.cell_entropy.iter().sum()
    }

    pub fn n_cells(&self) -> usize {
        self.counts.len()
    }
}

/// Index of the grid cell holding a normalized coordinate; 1.0 lands in the last cell.
pub fn grid_cell(v: f64, g: usize) -> usize {
    ((v * g as f64).floor().max(0.0) as usize).min(g - 1)
}

pub fn entropy_grid(spec: &ScatterplotSpec, nd: &Dataset, g: usize) -> Result<EntropyGrid, MetricsError> {
    if g == 0 {
        return Err(MetricsError::EmptyGrid);
    }
    let n = nd.n_rows();
    let classes = nd.n_classes();
    let mut counts = vec![vec![0usize; classes]; g * g];
    let xs = nd.column(spec.x_dim);
    let ys = nd.column(spec.y_dim);
    for ((&x, &y), &label) in xs.iter().zip(ys).zip(nd.labels()) {
        counts[grid_cell(y, g) * g + grid_cell(x, g)][label] += 1;
    }
    let cell_entropy = counts
        .iter()
        .map(|cell| {
            let total: usize = cell.iter().sum();
            if total == 0 {
                return 0.0;
            }
            let h: f64 = cell
                .iter()
                .filter(|&&c| c > 0)
                .map(|&c| {
                    let p = c as f64 / total as f64;
                    -p * p.log2()
                })
                .sum();
            // -0.0 from single-class cells
            (total as f64 / n as f64) * h.max(0.0)
        })
        .collect();
    Ok(EntropyGrid { cells_per_axis: g, counts, cell_entropy, n_points: n })
}

/// `(H_max - H_k) / H_max` over the run's grid entropies; all zero when
/// `H_max` is (numerically) zero.
pub fn score_separateness(entropies: &[f64], k: usize) -> f64 {
    let h_max = entropies.iter().copied().fold(0.0, f64::max);
    if h_max <= ENTROPY_EPS {
        return 0.0;
    }
    clamp_unit((h_max - entropies[k]) / h_max).0
}

/// Scores of every candidate, plus how many raw values had to be clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub scores: Vec<ScoreVector>,
    pub entropies: Vec<f64>,
    pub clamp_events: usize,
}

struct Partial {
    s1: f64,
    s2: f64,
    s3: f64,
    entropy: f64,
    clamped: usize,
}

fn score_one(spec: &ScatterplotSpec, nd: &Dataset, params: &MetricParams) -> Result<Partial, MetricsError> {
    let rho = spearman(nd.column(spec.x_dim), nd.column(spec.y_dim))?;
    let geometry = PlotGeometry::build(&nd.points(spec), params.omega);
    let (s1, c1) = clamp_unit(rho * rho);
    let (s2, c2) = clamp_unit(geometry.thinness());
    let (s3, c3) = clamp_unit(geometry.clumpiness());
    let entropy = entropy_grid(spec, nd, params.grid)?.total_entropy();
    Ok(Partial { s1, s2, s3, entropy, clamped: [c1, c2, c3].iter().filter(|&&c| c).count() })
}

/// Scores every spec. Expects `d` to be raw; normalization happens here.
/// The separateness pass runs after all grid entropies are known.
pub fn score_all(d: &Dataset, specs: &[ScatterplotSpec], params: &MetricParams) -> Result<ScoreTable, MetricsError> {
    if params.grid == 0 {
        return Err(MetricsError::EmptyGrid);
    }
    let nd = d.normalize();
    let partials: Vec<Partial> = specs
        .par_iter()
        .map(|spec| score_one(spec, &nd, params))
        .collect::<Result<_, _>>()?;
    let entropies: Vec<f64> = partials.iter().map(|p| p.entropy).collect();
    let mut clamp_events = partials.iter().map(|p| p.clamped).sum();
    let h_max = entropies.iter().copied().fold(0.0, f64::max);
    let scores = partials
        .iter()
        .map(|p| {
            let s4 = if h_max <= ENTROPY_EPS {
                0.0
            } else {
                let (s4, clamped) = clamp_unit((h_max - p.entropy) / h_max);
                clamp_events += clamped as usize;
                s4
            };
            ScoreVector::new(p.s1, p.s2, p.s3, s4)
        })
        .collect();
    Ok(ScoreTable { scores, entropies, clamp_events })
}
