//! Property tests across geometry, metrics and selection.

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;
use scatsel_core::data::{enumerate_scatterplots, Dataset, PairMode, ScatterplotSpec};
use scatsel_core::geometry::{delaunay, prune, prune_threshold, triangle_area};
use scatsel_core::metrics::{
    entropy_grid, score_all, score_clumpy, score_correlation, score_thinness, MetricParams, ScoreVector,
};
use scatsel_core::selection::{build_graph, select, ColorSumRule};

fn point() -> impl Strategy<Value = [f64; 2]> {
    (0.0..1.0f64, 0.0..1.0f64).prop_map(|(x, y)| [x, y])
}

fn lattice_point() -> impl Strategy<Value = [f64; 2]> {
    (0..5i32, 0..5i32).prop_map(|(x, y)| [x as f64, y as f64])
}

fn in_circle(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let (adx, ady) = (a[0] - d[0], a[1] - d[1]);
    let (bdx, bdy) = (b[0] - d[0], b[1] - d[1]);
    let (cdx, cdy) = (c[0] - d[0], c[1] - d[1]);
    let det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) - (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    let orient = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    det * orient.signum()
}

fn coord_triangles(pts: &[[f64; 2]], tris: &[[usize; 3]]) -> BTreeSet<[(u64, u64); 3]> {
    tris.iter()
        .map(|t| {
            let mut v = t.map(|i| (pts[i][0].to_bits(), pts[i][1].to_bits()));
            v.sort_unstable();
            v
        })
        .collect()
}

fn labelled(xs: Vec<f64>, ys: Vec<f64>, labels: Vec<u8>) -> Dataset {
    let names: Vec<&str> = labels.iter().map(|&l| ["p", "q", "r"][l as usize % 3]).collect();
    Dataset::new(vec!["x".into(), "y".into()], vec![xs, ys], &names).unwrap()
}

fn columns(n: std::ops::Range<usize>) -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<u8>)> {
    n.prop_flat_map(|n| {
        (
            prop::collection::vec(-10.0..10.0f64, n),
            prop::collection::vec(-10.0..10.0f64, n),
            prop::collection::vec(0u8..3, n),
        )
    })
}

fn score_vec() -> impl Strategy<Value = ScoreVector> {
    prop_oneof![
        1 => Just(ScoreVector::default()),
        6 => (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64)
            .prop_map(|(a, b, c, d)| ScoreVector::new(a, b, c, d)),
    ]
}

const SPEC: ScatterplotSpec = ScatterplotSpec { id: 0, x_dim: 0, y_dim: 1 };

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn delaunay_circles_are_empty(pts in prop::collection::vec(prop_oneof![point(), lattice_point()], 3..=12)) {
        let tri = delaunay(&pts);
        for t in &tri.triangles {
            let [a, b, c] = t.map(|i| tri.points[i]);
            for (k, &d) in tri.points.iter().enumerate() {
                if !t.contains(&k) {
                    prop_assert!(in_circle(a, b, c, d) <= 1e-9, "{t:?} contains point {k}");
                }
            }
        }
    }

    #[test]
    fn delaunay_ignores_input_order(pts in prop::collection::vec(point(), 3..=30), seed in any::<u64>()) {
        let mut shuffled = pts.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = delaunay(&pts);
        let b = delaunay(&shuffled);
        prop_assert_eq!(coord_triangles(&a.points, &a.triangles), coord_triangles(&b.points, &b.triangles));
    }

    #[test]
    fn pruning_is_monotone(pts in prop::collection::vec(point(), 3..=40), w1 in 0.0..0.8f64, dw in 0.0..0.5f64) {
        let tri = delaunay(&pts);
        let small: BTreeSet<_> = prune(&tri, w1).triangles.into_iter().collect();
        let large: BTreeSet<_> = prune(&tri, w1 + dw).triangles.into_iter().collect();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn mesh_totals_match_triangles(pts in prop::collection::vec(point(), 3..=40), w in 0.05..1.5f64) {
        let mesh = prune(&delaunay(&pts), w);
        let area: f64 = mesh.triangles.iter().map(|t| triangle_area(mesh.points[t[0]], mesh.points[t[1]], mesh.points[t[2]])).sum();
        prop_assert!((area - mesh.total_area).abs() < 1e-12);
        for e in &mesh.boundary_edges {
            let incident = mesh.triangles.iter().filter(|t| t.contains(&e.a) && t.contains(&e.b)).count();
            prop_assert_eq!(incident, 1);
        }
        let perimeter: f64 = mesh.boundary_edges.iter().map(|e| e.length).sum();
        prop_assert!((perimeter - mesh.total_perimeter).abs() < 1e-12);
        prop_assert!(mesh.kept_edges.iter().all(|e| e.length <= w));
    }

    #[test]
    fn threshold_lies_above_upper_quartile(lengths in prop::collection::vec(0.0..5.0f64, 1..50)) {
        let mut sorted = lengths.clone();
        sorted.sort_by(f64::total_cmp);
        let w = prune_threshold(&lengths);
        prop_assert!(w >= sorted[(sorted.len() - 1) * 3 / 4] - 1e-12);
    }

    #[test]
    fn normalize_is_idempotent((xs, ys, labels) in columns(1..40)) {
        let once = labelled(xs, ys, labels).normalize();
        let twice = once.normalize();
        for c in 0..2 {
            prop_assert!(once.column(c).iter().all(|v| (0.0..=1.0).contains(v)));
            prop_assert_eq!(once.column(c), twice.column(c));
        }
    }

    #[test]
    fn scores_in_unit_interval((xs, ys, labels) in columns(1..60), grid in 1usize..7, dup in any::<bool>(), flat in any::<bool>()) {
        let mut xs = xs;
        let mut ys = ys;
        if dup {
            for i in 0..xs.len() { xs[i] = xs[i / 3 * 3]; ys[i] = ys[i / 3 * 3]; }
        }
        if flat {
            xs.iter_mut().for_each(|v| *v = 1.5);
        }
        let d = labelled(xs, ys, labels);
        let specs = enumerate_scatterplots(&d, &PairMode::AllPairs).unwrap();
        let table = score_all(&d, &specs, &MetricParams { grid, omega: None }).unwrap();
        for s in &table.scores {
            prop_assert!(s.as_array().iter().all(|v| (0.0..=1.0).contains(v)), "{s:?}");
        }
    }

    #[test]
    fn correlation_ignores_monotone_maps((xs, ys, labels) in columns(2..50)) {
        let d = labelled(xs.clone(), ys.clone(), labels.clone());
        let mapped = labelled(xs.iter().map(|v| v.exp()).collect(), ys.iter().map(|v| v * v * v + 3.0 * v).collect(), labels.clone());
        let swapped = labelled(ys, xs, labels);
        let s1 = score_correlation(&SPEC, &d);
        prop_assert!((s1 - score_correlation(&SPEC, &mapped)).abs() < 1e-12);
        prop_assert!((s1 - score_correlation(&SPEC, &swapped)).abs() < 1e-12);
    }

    #[test]
    fn entropy_grid_conserves_points((xs, ys, labels) in columns(1..80), g in 1usize..8) {
        let nd = labelled(xs, ys, labels).normalize();
        let grid = entropy_grid(&SPEC, &nd, g).unwrap();
        let total: usize = grid.counts.iter().flatten().sum();
        prop_assert_eq!(total, nd.n_rows());
        prop_assert!(grid.cell_entropy.iter().all(|&h| h >= 0.0));
    }

    #[test]
    fn parallel_scores_match_direct_calls((xs, ys, labels) in columns(3..60)) {
        let d = labelled(xs, ys, labels);
        let table = score_all(&d, &[SPEC], &MetricParams::default()).unwrap();
        let nd = d.normalize();
        let s = table.scores[0];
        prop_assert_eq!(s.s1, score_correlation(&SPEC, &nd));
        prop_assert_eq!(s.s2, score_thinness(&SPEC, &nd, None));
        prop_assert_eq!(s.s3, score_clumpy(&SPEC, &nd, None));
        // A single scatterplot attains the maximum entropy itself.
        prop_assert_eq!(s.s4, 0.0);
    }

    #[test]
    fn coloring_is_proper(scores in prop::collection::vec(score_vec(), 1..40), d_thres in -1.0..=1.0f64) {
        let mut g = build_graph(&scores, d_thres);
        g.greedy_color();
        prop_assert!(g.is_proper());
        prop_assert!(g.color_count() <= g.max_degree() + 1);
    }

    #[test]
    fn edges_grow_as_threshold_drops(scores in prop::collection::vec(score_vec(), 1..40), a in -1.0..=1.0f64, b in -1.0..=1.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let strict = build_graph(&scores, hi);
        let loose = build_graph(&scores, lo);
        let loose_edges: BTreeSet<(usize, usize)> = loose.edges.iter().map(|e| (e.i, e.j)).collect();
        prop_assert!(strict.edges.iter().all(|e| loose_edges.contains(&(e.i, e.j))));
    }

    #[test]
    fn coloring_replays_breadth_first_order(scores in prop::collection::vec(score_vec(), 1..=8), d_thres in 0.5..1.0f64) {
        let mut g = build_graph(&scores, d_thres);
        let order = g.greedy_color();
        let n = scores.len();
        let adj: Vec<Vec<usize>> = (0..n).map(|v| {
            let mut a = g.neighbors(v).to_vec();
            a.sort_unstable();
            a
        }).collect();
        let mut colors: Vec<Option<usize>> = vec![None; n];
        let mut queued = vec![false; n];
        let mut expected = Vec::new();
        loop {
            let start = (0..n).filter(|&v| !queued[v]).max_by(|&a, &b| scores[a].s4.total_cmp(&scores[b].s4).then(b.cmp(&a)));
            let Some(start) = start else { break };
            let mut queue = VecDeque::from([start]);
            queued[start] = true;
            while let Some(v) = queue.pop_front() {
                let mut c = 0;
                while adj[v].iter().any(|&u| colors[u] == Some(c)) { c += 1; }
                colors[v] = Some(c);
                expected.push(v);
                for &u in &adj[v] {
                    if !queued[u] { queued[u] = true; queue.push_back(u); }
                }
            }
        }
        prop_assert_eq!(order, expected);
        let colors: Vec<usize> = colors.into_iter().map(Option::unwrap).collect();
        prop_assert_eq!(g.colors().unwrap(), colors.as_slice());
    }

    #[test]
    fn ranking_follows_max_component(scores in prop::collection::vec(score_vec(), 1..40), d_thres in 0.9..1.0f64, k in 1usize..20) {
        let (_, result) = select(&scores, d_thres, k, ColorSumRule::VectorNorm);
        let maxes: Vec<f64> = result.members.iter().map(|&m| scores[m].max_component()).collect();
        prop_assert!(maxes.windows(2).all(|w| w[0] >= w[1]));
        if let Some(first_zero) = result.selected.iter().position(|&m| scores[m].norm() == 0.0) {
            prop_assert!(result.selected[first_zero..].iter().all(|&m| scores[m].max_component() == 0.0));
        }
        prop_assert!(result.selected.len() == k.min(result.members.len()));
    }
}
