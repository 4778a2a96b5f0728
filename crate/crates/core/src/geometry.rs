//! Delaunay triangulation of scatterplot points and long-edge pruning.
//!
//! The triangulation is built incrementally (Bowyer–Watson). Instead of a
//! finite super-triangle, the convex hull is closed off with "ghost" triangles
//! that share a vertex at infinity, so the result always covers the hull
//! exactly. Orientation and in-circle signs come from adaptive exact
//! predicates.

use std::collections::HashMap;

use robust::{incircle, orient2d, Coord};

pub type Point = [f64; 2];

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

/// A triangulation of distinct points. Triangles are counter-clockwise index
/// triples into `points`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Triangulation {
    pub points: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<_> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |i| ordered(t[i], t[(i + 1) % 3])))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn edge_length(&self, (a, b): (usize, usize)) -> f64 {
        dist(self.points[a], self.points[b])
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.edges().into_iter().map(|e| self.edge_length(e)).collect()
    }
}

/// Removes exact duplicate positions, keeping first occurrences in input order.
pub fn dedup_points(points: &[Point]) -> Vec<Point> {
    let mut seen = HashMap::with_capacity(points.len());
    points
        .iter()
        .filter(|p| seen.insert((p[0].to_bits(), p[1].to_bits()), ()).is_none())
        .copied()
        .collect()
}

fn coord(p: Point) -> Coord<f64> {
    Coord { x: p[0], y: p[1] }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    orient2d(coord(a), coord(b), coord(c))
}

fn in_circle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    incircle(coord(a), coord(b), coord(c), coord(d))
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [usize; 3],
    /// `n[i]` is the neighbour across the edge opposite `v[i]`.
    n: [usize; 3],
    alive: bool,
}

impl Tri {
    fn is_ghost(&self) -> bool {
        self.v[2] == GHOST
    }
}

struct Builder<'a> {
    pts: &'a [Point],
    tris: Vec<Tri>,
    free: Vec<usize>,
    last: usize,
}

impl<'a> Builder<'a> {
    fn alloc(&mut self, v: [usize; 3]) -> usize {
        let t = Tri { v, n: [NONE; 3], alive: true };
        match self.free.pop() {
            Some(i) => {
                self.tris[i] = t;
                i
            }
            None => {
                self.tris.push(t);
                self.tris.len() - 1
            }
        }
    }

    fn init(pts: &'a [Point], a: usize, b: usize, c: usize) -> Self {
        let (b, c) = if orient(pts[a], pts[b], pts[c]) > 0.0 { (b, c) } else { (c, b) };
        let mut s = Builder { pts, tris: Vec::new(), free: Vec::new(), last: 0 };
        let t = s.alloc([a, b, c]);
        // Ghosts sit across each hull edge, with the edge reversed.
        let g_ab = s.alloc([b, a, GHOST]);
        let g_bc = s.alloc([c, b, GHOST]);
        let g_ca = s.alloc([a, c, GHOST]);
        s.tris[t].n = [g_bc, g_ca, g_ab];
        // Ghost [x, y, G]: opposite x is edge (y, G), opposite y is (G, x).
        s.tris[g_ab].n = [g_ca, g_bc, t];
        s.tris[g_bc].n = [g_ab, g_ca, t];
        s.tris[g_ca].n = [g_bc, g_ab, t];
        s.last = t;
        s
    }

    fn in_circumcircle(&self, t: usize, p: Point) -> bool {
        let tri = &self.tris[t];
        let [a, b, c] = tri.v;
        if tri.is_ghost() {
            let (pa, pb) = (self.pts[a], self.pts[b]);
            let o = orient(pa, pb, p);
            if o > 0.0 {
                return true;
            }
            // On the hull edge's open segment.
            o == 0.0 && (p[0] - pa[0]) * (p[0] - pb[0]) + (p[1] - pa[1]) * (p[1] - pb[1]) < 0.0
        } else {
            in_circle(self.pts[a], self.pts[b], self.pts[c], p) > 0.0
        }
    }

    /// Visibility walk to a triangle whose circumcircle contains `p`.
    fn locate(&self, p: Point) -> usize {
        let mut t = self.last;
        if !self.tris[t].alive || self.tris[t].is_ghost() {
            t = self.tris.iter().position(|x| x.alive && !x.is_ghost()).expect("no real triangle");
        }
        let mut steps = 0usize;
        'walk: loop {
            steps += 1;
            if steps > 4 * self.tris.len() + 16 {
                break;
            }
            let tri = self.tris[t];
            for k in 0..3 {
                let i = (k + steps) % 3;
                let a = self.pts[tri.v[(i + 1) % 3]];
                let b = self.pts[tri.v[(i + 2) % 3]];
                if orient(a, b, p) < 0.0 {
                    let nb = tri.n[i];
                    if self.tris[nb].is_ghost() {
                        return nb;
                    }
                    t = nb;
                    continue 'walk;
                }
            }
            return t;
        }
        (0..self.tris.len())
            .find(|&i| self.tris[i].alive && self.in_circumcircle(i, p))
            .expect("point not covered by triangulation")
    }

    fn insert(&mut self, pi: usize) {
        let p = self.pts[pi];
        let start = self.locate(p);

        let mut cavity = vec![start];
        let mut in_cavity: HashMap<usize, ()> = HashMap::new();
        in_cavity.insert(start, ());
        let mut rejected: HashMap<usize, ()> = HashMap::new();
        let mut head = 0;
        while head < cavity.len() {
            let t = cavity[head];
            head += 1;
            for &nb in &self.tris[t].n {
                if in_cavity.contains_key(&nb) || rejected.contains_key(&nb) {
                    continue;
                }
                if self.in_circumcircle(nb, p) {
                    in_cavity.insert(nb, ());
                    cavity.push(nb);
                } else {
                    rejected.insert(nb, ());
                }
            }
        }

        // Boundary edges (u, v) keep the orientation of their cavity triangle.
        let mut boundary = Vec::new();
        for &t in &cavity {
            let tri = self.tris[t];
            for i in 0..3 {
                let nb = tri.n[i];
                if !in_cavity.contains_key(&nb) {
                    boundary.push((tri.v[(i + 1) % 3], tri.v[(i + 2) % 3], nb, t));
                }
            }
        }
        for &t in &cavity {
            self.tris[t].alive = false;
        }

        let mut by_first: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut by_second: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut created = Vec::with_capacity(boundary.len());
        for &(u, v, outside, old) in &boundary {
            // Rotate so a ghost vertex, if any, comes last.
            let verts = if u == GHOST {
                [v, pi, GHOST]
            } else if v == GHOST {
                [pi, u, GHOST]
            } else {
                [u, v, pi]
            };
            let t = self.alloc(verts);
            // The slot opposite `pi` faces the outside triangle.
            let slot = verts.iter().position(|&x| x == pi).unwrap();
            self.tris[t].n[slot] = outside;
            let back = self.tris[outside].n.iter().position(|&x| x == old).expect("broken adjacency");
            self.tris[outside].n[back] = t;
            by_first.insert(u, t);
            by_second.insert(v, t);
            created.push((t, u, v));
        }
        // Cavity slots are only recycled once the outside links are rewired.
        self.free.extend_from_slice(&cavity);
        for &(t, u, v) in &created {
            let verts = self.tris[t].v;
            // Edge (v, p) borders the new triangle starting at v; edge (p, u)
            // the one ending at u.
            let across_vp = by_first[&v];
            let across_pu = by_second[&u];
            let pos_u = verts.iter().position(|&x| x == u).unwrap();
            let pos_v = verts.iter().position(|&x| x == v).unwrap();
            self.tris[t].n[pos_u] = across_vp;
            self.tris[t].n[pos_v] = across_pu;
            if !self.tris[t].is_ghost() {
                self.last = t;
            }
        }
    }
}

/// Delaunay triangulation of `points` after removing exact duplicates.
///
/// Returns an empty triangulation when fewer than three distinct
/// non-collinear points remain. Where four or more points are cocircular the
/// diagonal with the lexicographically smallest index pair is kept.
pub fn delaunay(points: &[Point]) -> Triangulation {
    let pts = dedup_points(points);
    let n = pts.len();
    let empty = Triangulation { points: pts.clone(), triangles: Vec::new() };
    if n < 3 {
        return empty;
    }
    let Some(c) = (2..n).find(|&k| orient(pts[0], pts[1], pts[k]) != 0.0) else {
        return empty;
    };

    let mut builder = Builder::init(&pts, 0, 1, c);
    for i in insertion_order(&pts) {
        if i != 0 && i != 1 && i != c {
            builder.insert(i);
        }
    }

    let mut triangles: Vec<[usize; 3]> = builder
        .tris
        .iter()
        .filter(|t| t.alive && !t.is_ghost())
        .map(|t| t.v)
        .collect();
    break_cocircular_ties(&pts, &mut triangles);
    for t in &mut triangles {
        *t = canonical_rotation(*t);
    }
    triangles.sort_unstable();
    Triangulation { points: pts, triangles }
}

/// Column-snake order over a coarse grid, so consecutive insertions are near
/// each other and point location walks stay short.
fn insertion_order(pts: &[Point]) -> Vec<usize> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let cols = ((pts.len() as f64).sqrt() / 2.0).ceil().max(1.0) as usize;
    let span = (hi[0] - lo[0]).max(f64::MIN_POSITIVE);
    let col_of = |p: &Point| (((p[0] - lo[0]) / span * cols as f64) as usize).min(cols - 1);
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (col_of(&pts[a]), col_of(&pts[b]));
        ca.cmp(&cb).then_with(|| {
            let ord = pts[a][1].total_cmp(&pts[b][1]);
            let ord = if ca % 2 == 1 { ord.reverse() } else { ord };
            ord.then(a.cmp(&b))
        })
    });
    order
}

fn canonical_rotation(t: [usize; 3]) -> [usize; 3] {
    let m = (0..3).min_by_key(|&i| t[i]).unwrap();
    [t[m], t[(m + 1) % 3], t[(m + 2) % 3]]
}

/// Flips diagonals of exactly cocircular quads toward the smaller index pair.
/// Each flip replaces one edge by a lexicographically smaller one, so this
/// terminates.
fn break_cocircular_ties(pts: &[Point], triangles: &mut [[usize; 3]]) {
    loop {
        let mut edge_map: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (ti, t) in triangles.iter().enumerate() {
            for i in 0..3 {
                edge_map.entry(ordered(t[(i + 1) % 3], t[(i + 2) % 3])).or_default().push((ti, i));
            }
        }
        let mut keys: Vec<_> = edge_map.keys().copied().collect();
        keys.sort_unstable();
        let mut flipped = false;
        for key in keys {
            let sides = &edge_map[&key];
            if sides.len() != 2 {
                continue;
            }
            let (t1, i1) = sides[0];
            let (t2, i2) = sides[1];
            let (c, d) = (triangles[t1][i1], triangles[t2][i2]);
            if ordered(c, d) >= key {
                continue;
            }
            let (a, b) = (triangles[t1][(i1 + 1) % 3], triangles[t1][(i1 + 2) % 3]);
            if in_circle(pts[a], pts[b], pts[c], pts[d]) != 0.0 {
                continue;
            }
            // t1 = (c, a, b) ccw and d lies across (a, b).
            triangles[t1] = [c, a, d];
            triangles[t2] = [d, b, c];
            flipped = true;
            break;
        }
        if !flipped {
            return;
        }
    }
}

/// Interquartile-range multiplier of the prune fence (Tukey's outer fence).
pub const FENCE_MULTIPLIER: f64 = 3.0;

/// Upper outer Tukey fence `q75 + 3 (q75 - q25)` with linearly interpolated
/// quartiles. Returns 0 for an empty slice.
///
/// The inner fence (1.5 IQR) cuts into the interior of uniformly filled
/// regions, since Delaunay edge lengths are right-skewed even without any
/// outliers.
pub fn prune_threshold(edge_lengths: &[f64]) -> f64 {
    if edge_lengths.is_empty() {
        return 0.0;
    }
    let mut sorted = edge_lengths.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q25 = quantile_sorted(&sorted, 0.25);
    let q75 = quantile_sorted(&sorted, 0.75);
    q75 + FENCE_MULTIPLIER * (q75 - q25)
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshEdge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
}

/// A triangulation with every triangle that has an edge longer than
/// `prune_threshold` removed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriMesh {
    pub points: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub kept_edges: Vec<MeshEdge>,
    pub boundary_edges: Vec<MeshEdge>,
    pub total_area: f64,
    pub total_perimeter: f64,
    pub prune_threshold: f64,
}

impl TriMesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Length of the longest kept edge, 0 for an empty mesh.
    pub fn longest_kept_edge(&self) -> f64 {
        self.kept_edges.iter().map(|e| e.length).fold(0.0, f64::max)
    }
}

/// Euclidean minimum spanning tree (forest, for an empty triangulation) over
/// the triangulation's edges, in the order Kruskal accepts them: ascending
/// length, ties by index pair.
pub fn minimum_spanning_tree(tri: &Triangulation) -> Vec<MeshEdge> {
    let mut edges: Vec<MeshEdge> = tri
        .edges()
        .into_iter()
        .map(|(a, b)| MeshEdge { a, b, length: tri.edge_length((a, b)) })
        .collect();
    edges.sort_by(|x, y| x.length.total_cmp(&y.length).then((x.a, x.b).cmp(&(y.a, y.b))));
    let mut sets = DisjointSets::new(tri.points.len());
    edges.into_iter().filter(|e| sets.union(e.a, e.b)).collect()
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    /// Merges the sets of `a` and `b`; false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

pub fn triangle_area(a: Point, b: Point, c: Point) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs()
}

pub fn prune(tri: &Triangulation, omega: f64) -> TriMesh {
    let pts = &tri.points;
    let kept: Vec<[usize; 3]> = tri
        .triangles
        .iter()
        .copied()
        .filter(|t| (0..3).all(|i| dist(pts[t[i]], pts[t[(i + 1) % 3]]) <= omega))
        .collect();

    let mut incidence: HashMap<(usize, usize), usize> = HashMap::new();
    for t in &kept {
        for i in 0..3 {
            *incidence.entry(ordered(t[i], t[(i + 1) % 3])).or_default() += 1;
        }
    }
    let mut edges: Vec<_> = incidence.into_iter().collect();
    edges.sort_unstable();
    let as_edge = |(a, b): (usize, usize)| MeshEdge { a, b, length: dist(pts[a], pts[b]) };
    let kept_edges: Vec<MeshEdge> = edges.iter().map(|&(e, _)| as_edge(e)).collect();
    let boundary_edges: Vec<MeshEdge> =
        edges.iter().filter(|&&(_, count)| count == 1).map(|&(e, _)| as_edge(e)).collect();

    let total_area = kept.iter().map(|t| triangle_area(pts[t[0]], pts[t[1]], pts[t[2]])).sum();
    let total_perimeter = boundary_edges.iter().map(|e| e.length).sum();
    TriMesh {
        points: pts.clone(),
        triangles: kept,
        kept_edges,
        boundary_edges,
        total_area,
        total_perimeter,
        prune_threshold: omega,
    }
}

/// Triangulates, derives the Tukey-fence threshold (unless `omega_override`
/// is given) and prunes.
pub fn build_mesh(points: &[Point], omega_override: Option<f64>) -> TriMesh {
    let tri = delaunay(points);
    let omega = omega_override.unwrap_or_else(|| prune_threshold(&tri.edge_lengths()));
    prune(&tri, omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Circumcircle containment computed from the circumcentre in plain f64.
    fn strictly_inside_circumcircle(a: Point, b: Point, c: Point, p: Point) -> bool {
        let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
        let sq = |q: Point| q[0] * q[0] + q[1] * q[1];
        let ux = (sq(a) * (b[1] - c[1]) + sq(b) * (c[1] - a[1]) + sq(c) * (a[1] - b[1])) / d;
        let uy = (sq(a) * (c[0] - b[0]) + sq(b) * (a[0] - c[0]) + sq(c) * (b[0] - a[0])) / d;
        let r = (a[0] - ux).hypot(a[1] - uy);
        (p[0] - ux).hypot(p[1] - uy) < r * (1.0 - 1e-9)
    }

    fn assert_delaunay(tri: &Triangulation) {
        for t in &tri.triangles {
            let [a, b, c] = t.map(|i| tri.points[i]);
            assert!(orient(a, b, c) > 0.0, "triangle {t:?} not ccw");
            for (i, &p) in tri.points.iter().enumerate() {
                if t.contains(&i) {
                    continue;
                }
                assert!(!strictly_inside_circumcircle(a, b, c, p), "point {i} inside {t:?}");
            }
        }
    }

    fn lcg_points(seed: u64, n: usize) -> Vec<Point> {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        (0..n).map(|_| [next(), next()]).collect()
    }

    #[test]
    fn single_triangle() {
        let tri = delaunay(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(tri.triangles.len(), 1);
        assert_eq!(tri.edges().len(), 3);
    }

    #[test]
    fn unit_square_keeps_smallest_diagonal() {
        // Diagonals are (0,2) and (1,3); both are empty-circle valid.
        let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let tri = delaunay(&pts);
        assert_eq!(tri.triangles.len(), 2);
        assert!(tri.edges().contains(&(0, 2)));
        assert!(!tri.edges().contains(&(1, 3)));
        // Relabelled so the other diagonal wins.
        let pts = [[1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.0, 0.0]];
        let tri = delaunay(&pts);
        assert!(tri.edges().contains(&(0, 2)));
        assert_delaunay(&tri);
    }

    #[test]
    fn random_points_are_delaunay() {
        for seed in 0..20 {
            let tri = delaunay(&lcg_points(seed, 10));
            assert_delaunay(&tri);
            // Euler: 2n - 2 - h triangles, at least n - 2.
            assert!(tri.triangles.len() >= 8);
        }
    }

    #[test]
    fn covers_convex_hull() {
        let pts = lcg_points(7, 200);
        let tri = delaunay(&pts);
        let area: f64 = tri.triangles.iter().map(|t| triangle_area(pts[t[0]], pts[t[1]], pts[t[2]])).sum();
        assert!((area - convex_hull_area(&pts)).abs() < 1e-12);
    }

    fn convex_hull_area(pts: &[Point]) -> f64 {
        let mut p = pts.to_vec();
        p.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        let cross = |o: Point, a: Point, b: Point| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
        let mut hull: Vec<Point> = Vec::new();
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
            for &q in iter {
                while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
                    hull.pop();
                }
                hull.push(q);
            }
            hull.pop();
        }
        let n = hull.len();
        (0..n).map(|i| hull[i][0] * hull[(i + 1) % n][1] - hull[(i + 1) % n][0] * hull[i][1]).sum::<f64>() / 2.0
    }

    #[test]
    fn degenerate_inputs_give_empty() {
        assert!(delaunay(&[]).triangles.is_empty());
        assert!(delaunay(&[[0.0, 0.0], [1.0, 1.0]]).triangles.is_empty());
        assert!(delaunay(&[[0.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.25, 0.25]]).triangles.is_empty());
        assert!(delaunay(&[[0.3, 0.3]; 10]).triangles.is_empty());
    }

    #[test]
    fn duplicates_are_removed() {
        let tri = delaunay(&[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]);
        assert_eq!(tri.points.len(), 3);
        assert_eq!(tri.triangles.len(), 1);
    }

    #[test]
    fn collinear_points_then_offset() {
        let mut pts: Vec<Point> = (0..10).map(|i| [i as f64 / 9.0, 0.0]).collect();
        pts.push([0.5, 0.4]);
        let tri = delaunay(&pts);
        assert_eq!(tri.triangles.len(), 9);
        assert_delaunay(&tri);
    }

    #[test]
    fn regular_grid_is_deterministic_and_delaunay() {
        let pts: Vec<Point> = (0..6).flat_map(|i| (0..6).map(move |j| [i as f64 / 5.0, j as f64 / 5.0])).collect();
        let a = delaunay(&pts);
        assert_eq!(a.triangles.len(), 50);
        assert_delaunay(&a);
        assert_eq!(a, delaunay(&pts));
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(prune_threshold(&[0.3; 7]), 0.3);
        assert_eq!(prune_threshold(&[1.0, 1.0, 1.0, 1.0, 10.0]), 1.0);
        assert_eq!(prune_threshold(&[5.0]), 5.0);
        // q25 = 1.75, q75 = 3.25 by interpolation over [1, 2, 3, 4].
        assert!((prune_threshold(&[4.0, 1.0, 3.0, 2.0]) - (3.25 + 3.0 * 1.5)).abs() < 1e-15);
    }

    #[test]
    fn prune_extremes() {
        let pts = lcg_points(3, 30);
        let tri = delaunay(&pts);
        let max = tri.edge_lengths().into_iter().fold(0.0, f64::max);
        let full = prune(&tri, max);
        assert_eq!(full.triangles.len(), tri.triangles.len());
        // Boundary of the unpruned mesh is the hull: perimeter == hull perimeter
        // and the area is the hull area.
        assert!((full.total_area - convex_hull_area(&tri.points)).abs() < 1e-12);

        let min = tri.edge_lengths().into_iter().fold(f64::INFINITY, f64::min);
        let none = prune(&tri, min * 0.5);
        assert!(none.is_empty());
        assert_eq!(none.total_area, 0.0);
        assert_eq!(none.total_perimeter, 0.0);
        assert_eq!(none.longest_kept_edge(), 0.0);
    }

    #[test]
    fn spike_is_pruned() {
        // 5x5 lattice on [0, 0.4]^2 plus a far point; the spike triangles go.
        let mut pts: Vec<Point> = (0..5).flat_map(|i| (0..5).map(move |j| [i as f64 * 0.1, j as f64 * 0.1])).collect();
        pts.push([1.0, 0.2]);
        let mesh = build_mesh(&pts, None);
        assert!((mesh.total_area - 0.16).abs() < 1e-12);
        assert!((mesh.total_perimeter - 1.6).abs() < 1e-12);
        assert_eq!(mesh.boundary_edges.len(), 16);
        assert!(mesh.kept_edges.iter().all(|e| e.a != 25 && e.b != 25));
    }

    #[test]
    fn mst_spans_and_is_minimal() {
        let pts = lcg_points(5, 40);
        let tri = delaunay(&pts);
        let mst = minimum_spanning_tree(&tri);
        assert_eq!(mst.len(), 39);
        // Prim's algorithm on the complete graph gives the same total weight.
        let n = pts.len();
        let mut in_tree = vec![false; n];
        let mut best = vec![f64::INFINITY; n];
        best[0] = 0.0;
        let mut total = 0.0;
        for _ in 0..n {
            let u = (0..n).filter(|&i| !in_tree[i]).min_by(|&a, &b| best[a].total_cmp(&best[b])).unwrap();
            in_tree[u] = true;
            total += best[u];
            for v in 0..n {
                if !in_tree[v] {
                    best[v] = best[v].min(dist(pts[u], pts[v]));
                }
            }
        }
        let mst_total: f64 = mst.iter().map(|e| e.length).sum();
        assert!((mst_total - total).abs() < 1e-12);
    }

    #[test]
    fn longest_kept_edge_is_max() {
        let tri = delaunay(&[[0.0, 0.0], [0.3, 0.0], [0.0, 0.4]]);
        let mesh = prune(&tri, 1.0);
        assert!((mesh.longest_kept_edge() - 0.5).abs() < 1e-15);
        let mesh = build_mesh(&lcg_points(11, 50), None);
        let brute = mesh.kept_edges.iter().fold(0.0f64, |m, e| m.max(e.length));
        assert_eq!(mesh.longest_kept_edge(), brute);
    }
}
