//! Seeded random instances on planar point clouds.
//!
//! All generators are pure functions of their spec. Randomness comes from
//! `ChaCha8Rng` seeded with the spec's seed, so the same spec yields the
//! same instance on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::instance::{Instance, Maps};
use crate::metric::{euclidean, DistanceMatrix, MetricSpace, PointSet, SubsetPair};
use crate::operators::{CyclicMap, MapPair};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MapRule {
    /// Every point goes to its nearest point of the other set.
    NearestInTarget,
    /// `x ↦ c_target + factor·(x − c_source)` using the set centroids,
    /// snapped to the nearest point of the target set.
    AffineTowardCentroid(f64),
    /// B is the mirror image of A across the box's vertical midline and `T`
    /// swaps mirror partners, an isometry. Needs `n_a == n_b`.
    Mirror,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphRule {
    Complete,
    Diagonal,
    /// Each ordered pair `(i, j)`, `i ≠ j`, is an edge with probability `p`,
    /// drawn from its own stream seeded with `seed`. Δ is always added.
    Random {
        p: f64,
        seed: u64,
    },
    MinSeparation(f64),
}

/// Axis-aligned sampling box `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl BoundingBox {
    pub const UNIT: BoundingBox = BoundingBox { x0: 0.0, x1: 1.0, y0: 0.0, y1: 1.0 };

    fn check(&self) -> Result<()> {
        let ok = [self.x0, self.x1, self.y0, self.y1].iter().all(|v| v.is_finite())
            && self.x0 < self.x1
            && self.y0 < self.y1;
        if ok {
            Ok(())
        } else {
            Err(Error::Spec(format!("degenerate box {self:?}")))
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        vec![rng.random_range(self.x0..self.x1), rng.random_range(self.y0..self.y1)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub seed: u64,
    pub n_a: usize,
    pub n_b: usize,
    pub bbox: BoundingBox,
    pub map_rule: MapRule,
    pub graph_rule: GraphRule,
}

/// Points `0..n_a` form A and `n_a..n_a+n_b` form B.
pub fn random_instance(spec: &RandomSpec) -> Result<Instance> {
    if spec.n_a == 0 || spec.n_b == 0 {
        return Err(Error::Spec("random instances need n_a, n_b >= 1".into()));
    }
    spec.bbox.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (na, nb) = (spec.n_a, spec.n_b);
    let coords: Vec<Vec<f64>> = match spec.map_rule {
        MapRule::Mirror => {
            if na != nb {
                return Err(Error::Spec("mirror instances need n_a == n_b".into()));
            }
            let mid = 0.5 * (spec.bbox.x0 + spec.bbox.x1);
            let left = BoundingBox { x1: mid, ..spec.bbox };
            let a: Vec<Vec<f64>> = (0..na).map(|_| left.draw(&mut rng)).collect();
            let b: Vec<Vec<f64>> = a.iter().map(|p| vec![2.0 * mid - p[0], p[1]]).collect();
            a.into_iter().chain(b).collect()
        }
        _ => (0..na + nb).map(|_| spec.bbox.draw(&mut rng)).collect(),
    };
    let a_ix: Vec<usize> = (0..na).collect();
    let b_ix: Vec<usize> = (na..na + nb).collect();
    let table: Vec<usize> = match spec.map_rule {
        MapRule::NearestInTarget => {
            (0..na + nb).map(|i| nearest(&coords, &coords[i], if i < na { &b_ix } else { &a_ix })).collect()
        }
        MapRule::AffineTowardCentroid(factor) => {
            if !(factor.is_finite() && factor >= 0.0) {
                return Err(Error::Spec(format!("affine factor must be >= 0, got {factor}")));
            }
            let ca = centroid(&coords, &a_ix);
            let cb = centroid(&coords, &b_ix);
            (0..na + nb)
                .map(|i| {
                    let (src, dst, target) = if i < na { (&ca, &cb, &b_ix) } else { (&cb, &ca, &a_ix) };
                    let ideal: Vec<f64> = (0..2).map(|k| dst[k] + factor * (coords[i][k] - src[k])).collect();
                    nearest(&coords, &ideal, target)
                })
                .collect()
        }
        MapRule::Mirror => (0..na + nb).map(|i| if i < na { i + na } else { i - na }).collect(),
    };
    let n = na + nb;
    let m = DistanceMatrix::from_coords(&coords)?;
    let graph = build_graph(spec.graph_rule, n)?;
    Instance::new(
        format!("random-{}", spec.seed),
        MetricSpace::Tabulated(m),
        SubsetPair::new(PointSet::finite(a_ix), PointSet::finite(b_ix))?,
        graph,
        Maps::Single(CyclicMap::Table(table)),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomPairSpec {
    pub seed: u64,
    pub n_a: usize,
    pub n_b: usize,
    pub bbox: BoundingBox,
    pub graph_rule: GraphRule,
}

/// Interleaved clouds A and B in the same box; `T` is the nearest-point
/// projection onto B and `S` the projection onto A, both defined on all of
/// `A∪B`.
pub fn random_pair_instance(spec: &RandomPairSpec) -> Result<Instance> {
    if spec.n_a == 0 || spec.n_b == 0 {
        return Err(Error::Spec("random instances need n_a, n_b >= 1".into()));
    }
    spec.bbox.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (na, nb) = (spec.n_a, spec.n_b);
    let coords: Vec<Vec<f64>> = (0..na + nb).map(|_| spec.bbox.draw(&mut rng)).collect();
    let a_ix: Vec<usize> = (0..na).collect();
    let b_ix: Vec<usize> = (na..na + nb).collect();
    let t = (0..na + nb).map(|i| nearest(&coords, &coords[i], &b_ix)).collect();
    let s = (0..na + nb).map(|i| nearest(&coords, &coords[i], &a_ix)).collect();
    let m = DistanceMatrix::from_coords(&coords)?;
    let graph = build_graph(spec.graph_rule, na + nb)?;
    Instance::new(
        format!("random-pair-{}", spec.seed),
        MetricSpace::Tabulated(m),
        SubsetPair::new(PointSet::finite(a_ix), PointSet::finite(b_ix))?,
        graph,
        Maps::Pair(MapPair { t: CyclicMap::Table(t), s: CyclicMap::Table(s) }),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpec {
    pub seed: u64,
    /// Number of orbits sharing the centre.
    pub orbits: usize,
    /// Points per orbit, not counting the centre.
    pub depth: usize,
    /// Linear contraction factor λ; must lie in `(0, 0.4)`.
    pub factor: f64,
    pub graph_rule: GraphRule,
}

/// Orbits of a rotation-contraction `x ↦ c + λ·R(x − c)`, truncated after
/// `depth` points with the last point sent to the centre `c`.
///
/// Even orbit levels and `c` form A, odd levels and `c` form B, so the map
/// is cyclic and `d(A,B) = 0`. Starting radii lie in `[1, 1.5)`; with
/// `λ < 0.4` this keeps every level strictly inside the previous one and
/// makes the map a contraction on the complete graph, with factor at most
/// `λ / (1 − 1.5·λ)`.
pub fn orbit_instance(spec: &OrbitSpec) -> Result<Instance> {
    if spec.orbits == 0 || spec.depth == 0 {
        return Err(Error::Spec("orbit instances need orbits, depth >= 1".into()));
    }
    if !(spec.factor > 0.0 && spec.factor < 0.4) {
        return Err(Error::Spec(format!("orbit factor must lie in (0, 0.4), got {}", spec.factor)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let centre = vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
    let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let (sin, cos) = phi.sin_cos();
    let step = |v: &[f64]| -> Vec<f64> {
        vec![spec.factor * (cos * v[0] - sin * v[1]), spec.factor * (sin * v[0] + cos * v[1])]
    };

    let mut coords = vec![centre.clone()];
    let mut table = vec![0usize];
    let mut a_ix = vec![0usize];
    let mut b_ix = vec![0usize];
    for _ in 0..spec.orbits {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r: f64 = rng.random_range(1.0..1.5);
        let mut rel = vec![r * theta.cos(), r * theta.sin()];
        for level in 0..spec.depth {
            let idx = coords.len();
            coords.push(vec![centre[0] + rel[0], centre[1] + rel[1]]);
            table.push(if level + 1 < spec.depth { idx + 1 } else { 0 });
            if level % 2 == 0 {
                a_ix.push(idx);
            } else {
                b_ix.push(idx);
            }
            rel = step(&rel);
        }
    }
    let n = coords.len();
    let m = DistanceMatrix::from_coords(&coords)?;
    let graph = build_graph(spec.graph_rule, n)?;
    Instance::new(
        format!("orbit-{}", spec.seed),
        MetricSpace::Tabulated(m),
        SubsetPair::new(PointSet::finite(a_ix), PointSet::finite(b_ix))?,
        graph,
        Maps::Single(CyclicMap::Table(table)),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub seed: u64,
    /// Number of four-point gadgets.
    pub gadgets: usize,
    /// Probability of each extra edge beyond the gadget edges.
    pub extra_edges: f64,
}

/// Separated gadgets of four collinear points `x, t, s, y` with
/// `x, s ∈ A` and `t, y ∈ B`, `T(x) = t` and `S(y) = s`.
///
/// The gaps are `d(x,t) = u`, `d(t,s) = g` and `d(s,y) = v` with
/// `u, v ∈ [D, 3D)` and `g ∈ [D, 1.5D)`, where `D = d(A,B)` is attained by
/// the first gadget. The graph holds `(x, y)` for every gadget plus random
/// extra edges. On a gadget edge `d(x,Tx) + d(Sy,y) = (u+v)/(u+g+v)·d(x,y)`,
/// so the pair hypothesis holds with a factor below 1 unless an extra edge
/// breaks it.
pub fn chain_pair_instance(spec: &ChainSpec) -> Result<Instance> {
    if spec.gadgets == 0 {
        return Err(Error::Spec("chain instances need at least one gadget".into()));
    }
    if !(0.0..=1.0).contains(&spec.extra_edges) {
        return Err(Error::Spec(format!("edge probability must lie in [0, 1], got {}", spec.extra_edges)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let d: f64 = rng.random_range(0.5..1.5);
    let mut coords = Vec::with_capacity(4 * spec.gadgets);
    let mut edges = Vec::new();
    for k in 0..spec.gadgets {
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let dir = [theta.cos(), theta.sin()];
        let u = rng.random_range(d..3.0 * d);
        let g = if k == 0 { d } else { rng.random_range(d..1.5 * d) };
        let v = rng.random_range(d..3.0 * d);
        let base = [30.0 * k as f64, 0.0];
        for offset in [0.0, u, u + g, u + g + v] {
            coords.push(vec![base[0] + offset * dir[0], base[1] + offset * dir[1]]);
        }
        edges.push((4 * k, 4 * k + 3));
    }
    let n = coords.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random::<f64>() < spec.extra_edges {
                edges.push((i, j));
            }
        }
    }
    // per gadget: x = 4k, t = 4k+1, s = 4k+2, y = 4k+3
    let mut t = vec![0; n];
    let mut s = vec![0; n];
    for k in 0..spec.gadgets {
        let [x, tt, ss, y] = [4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3];
        t[x] = tt;
        t[ss] = tt;
        t[tt] = ss;
        t[y] = ss;
        s[y] = ss;
        s[tt] = x;
        s[x] = y;
        s[ss] = y;
    }
    let a_ix = (0..n).filter(|i| i % 4 == 0 || i % 4 == 2).collect();
    let b_ix = (0..n).filter(|i| i % 4 == 1 || i % 4 == 3).collect();
    Instance::new(
        format!("chain-{}", spec.seed),
        MetricSpace::Tabulated(DistanceMatrix::from_coords(&coords)?),
        SubsetPair::new(PointSet::finite(a_ix), PointSet::finite(b_ix))?,
        DirectedGraph::from_edges_with_diagonal(n, edges),
        Maps::Pair(MapPair { t: CyclicMap::Table(t), s: CyclicMap::Table(s) }),
    )
}

fn nearest(coords: &[Vec<f64>], p: &[f64], candidates: &[usize]) -> usize {
    let mut best = candidates[0];
    let mut best_d = f64::INFINITY;
    for &c in candidates {
        let d = euclidean(&coords[c], p);
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

fn centroid(coords: &[Vec<f64>], ix: &[usize]) -> Vec<f64> {
    let n = ix.len() as f64;
    (0..2).map(|k| ix.iter().map(|&i| coords[i][k]).sum::<f64>() / n).collect()
}

fn build_graph(rule: GraphRule, n: usize) -> Result<DirectedGraph> {
    Ok(match rule {
        GraphRule::Complete => DirectedGraph::Complete,
        GraphRule::Diagonal => DirectedGraph::Diagonal,
        GraphRule::MinSeparation(r) => DirectedGraph::MinSeparation(r),
        GraphRule::Random { p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Spec(format!("edge probability must lie in [0, 1], got {p}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.random::<f64>() < p {
                        edges.push((i, j));
                    }
                }
            }
            DirectedGraph::from_edges_with_diagonal(n, edges)
        }
    })
}
