//! Similarity graph over score vectors, breadth-first greedy coloring, and
//! selection of one color class.

use std::collections::{BTreeSet, VecDeque};

use crate::metrics::ScoreVector;

/// Score vectors with a norm at or below this are treated as zero.
pub const ZERO_NORM_EPS: f64 = 1e-12;

/// Cosine similarity; 0 when either vector is (numerically) zero.
pub fn cosine_similarity(a: &ScoreVector, b: &ScoreVector) -> f64 {
    let (na, nb) = (a.norm(), b.norm());
    if na <= ZERO_NORM_EPS || nb <= ZERO_NORM_EPS {
        return 0.0;
    }
    (a.dot(b) / (na * nb)).clamp(-1.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    pub similarity: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph {
    pub scores: Vec<ScoreVector>,
    pub d_thres: f64,
    /// `(i, j)` with `i < j`, in lexicographic order.
    pub edges: Vec<GraphEdge>,
    adjacency: Vec<Vec<usize>>,
    colors: Option<Vec<usize>>,
}

/// Connects every pair whose cosine similarity is strictly above `d_thres`.
/// Zero score vectors get no edges, whatever the threshold.
pub fn build_graph(scores: &[ScoreVector], d_thres: f64) -> SimilarityGraph {
    let n = scores.len();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    let featureless: Vec<bool> = scores.iter().map(|s| s.norm() <= ZERO_NORM_EPS).collect();
    for i in 0..n {
        if featureless[i] {
            continue;
        }
        for j in i + 1..n {
            if featureless[j] {
                continue;
            }
            let similarity = cosine_similarity(&scores[i], &scores[j]);
            if similarity > d_thres {
                edges.push(GraphEdge { i, j, similarity });
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    SimilarityGraph { scores: scores.to_vec(), d_thres, edges, adjacency, colors: None }
}

impl SimilarityGraph {
    pub fn n_vertices(&self) -> usize {
        self.scores.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbours in ascending id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn colors(&self) -> Option<&[usize]> {
        self.colors.as_deref()
    }

    pub fn color_count(&self) -> usize {
        self.colors
            .as_ref()
            .map(|c| c.iter().copied().max().map_or(0, |m| m + 1))
            .unwrap_or(0)
    }

    pub fn is_proper(&self) -> bool {
        match &self.colors {
            None => false,
            Some(c) => self.edges.iter().all(|e| c[e.i] != c[e.j]),
        }
    }

    /// Greedy coloring in breadth-first order.
    ///
    /// Each traversal starts at the uncolored vertex with the highest `s4`
    /// (lowest id on ties) and enqueues neighbours in ascending id order. A
    /// vertex takes the smallest color not used by an already-colored
    /// neighbour when it is dequeued. Returns the visit order.
    pub fn greedy_color(&mut self) -> Vec<usize> {
        let n = self.n_vertices();
        let mut colors: Vec<Option<usize>> = vec![None; n];
        let mut queued = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while let Some(start) = self.next_start(&queued) {
            let mut queue = VecDeque::from([start]);
            queued[start] = true;
            while let Some(v) = queue.pop_front() {
                let used: BTreeSet<usize> = self.adjacency[v].iter().filter_map(|&u| colors[u]).collect();
                let color = (0..).find(|c| !used.contains(c)).unwrap();
                colors[v] = Some(color);
                order.push(v);
                for &u in &self.adjacency[v] {
                    if !queued[u] {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        self.colors = Some(colors.into_iter().map(|c| c.expect("all vertices visited")).collect());
        order
    }

    fn next_start(&self, queued: &[bool]) -> Option<usize> {
        (0..self.n_vertices())
            .filter(|&v| !queued[v])
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if self.scores[b].s4 >= self.scores[v].s4 => Some(b),
                _ => Some(v),
            })
    }

    pub fn members(&self, color: usize) -> Vec<usize> {
        self.colors
            .as_ref()
            .map(|c| (0..c.len()).filter(|&v| c[v] == color).collect())
            .unwrap_or_default()
    }

    /// Sum of the class weights per color, indexed by color id.
    pub fn color_sums(&self, rule: ColorSumRule) -> Vec<f64> {
        let mut sums = vec![0.0; self.color_count()];
        if let Some(colors) = &self.colors {
            for (v, &c) in colors.iter().enumerate() {
                sums[c] += rule.weight(&self.scores[v]);
            }
        }
        sums
    }
}

/// How a color class is weighed when picking the class to display.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorSumRule {
    /// Euclidean length of each member's full score vector.
    #[default]
    VectorNorm,
    /// Each member's separateness score alone.
    ScalarS4,
}

impl ColorSumRule {
    pub fn weight(&self, s: &ScoreVector) -> f64 {
        match self {
            ColorSumRule::VectorNorm => s.norm(),
            ColorSumRule::ScalarS4 => s.s4,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ColorSumRule::VectorNorm => "vector-norm",
            ColorSumRule::ScalarS4 => "scalar-s4",
        }
    }
}

impl std::str::FromStr for ColorSumRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "vector-norm" => Ok(ColorSumRule::VectorNorm),
            "scalar-s4" => Ok(ColorSumRule::ScalarS4),
            other => Err(format!("unknown color-sum rule `{other}` (expected vector-norm or scalar-s4)")),
        }
    }
}

/// Color with the largest class sum; lowest id on ties. `None` before coloring.
pub fn choose_color_class(g: &SimilarityGraph, rule: ColorSumRule) -> Option<usize> {
    let sums = g.color_sums(rule);
    let mut best: Option<usize> = None;
    for (c, &s) in sums.iter().enumerate() {
        if best.is_none_or(|b| s > sums[b]) {
            best = Some(c);
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionDiagnostics {
    pub edge_count: usize,
    pub color_count: usize,
    pub color_sums: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub chosen_color: usize,
    /// Every vertex of the chosen color, ranked.
    pub members: Vec<usize>,
    /// The first `min(K, members)` ranked members.
    pub selected: Vec<usize>,
    pub diagnostics: SelectionDiagnostics,
}

/// Ranks the class by descending max component, then descending norm, then
/// ascending id, and keeps the first `k`.
pub fn select_top_k(g: &SimilarityGraph, color: usize, k: usize, rule: ColorSumRule) -> SelectionResult {
    let mut members = g.members(color);
    members.sort_by(|&a, &b| {
        let (sa, sb) = (&g.scores[a], &g.scores[b]);
        sb.max_component()
            .total_cmp(&sa.max_component())
            .then(sb.norm().total_cmp(&sa.norm()))
            .then(a.cmp(&b))
    });
    let selected = members.iter().copied().take(k).collect();
    SelectionResult {
        chosen_color: color,
        members,
        selected,
        diagnostics: SelectionDiagnostics {
            edge_count: g.edge_count(),
            color_count: g.color_count(),
            color_sums: g.color_sums(rule),
        },
    }
}

/// Graph construction through top-`k` selection in one call.
pub fn select(scores: &[ScoreVector], d_thres: f64, k: usize, rule: ColorSumRule) -> (SimilarityGraph, SelectionResult) {
    let mut g = build_graph(scores, d_thres);
    g.greedy_color();
    let color = choose_color_class(&g, rule).unwrap_or(0);
    let result = select_top_k(&g, color, k, rule);
    (g, result)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub d_thres: f64,
    pub edges: usize,
    pub colors: usize,
}

/// Edge and color counts for each threshold, in the given order.
pub fn threshold_sweep(scores: &[ScoreVector], thresholds: &[f64]) -> Vec<SweepRow> {
    thresholds
        .iter()
        .map(|&d_thres| {
            let mut g = build_graph(scores, d_thres);
            g.greedy_color();
            SweepRow { d_thres, edges: g.edge_count(), colors: g.color_count() }
        })
        .collect()
}
