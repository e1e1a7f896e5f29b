use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::metric::{pair_distance, MetricSpace, Point, PointSet, SetDistance, SubsetPair, Tolerance};
use crate::operators::{CyclicMap, MapPair};

/// The map data carried by an instance.
#[derive(Debug, Clone, PartialEq)]
pub enum Maps {
    Single(CyclicMap),
    Pair(MapPair),
}

/// A metric space, the subsets A and B, a directed graph on `X = A∪B` and
/// the map(s) under study.
///
/// Immutable after construction. The finite point list `X` (the
/// "universe") and `d(A,B)` are computed once: for tabulated spaces `X` is
/// `0..n`, for Euclidean spaces it is the samples of A followed by the
/// samples of B not already in A.
#[derive(Debug, Clone)]
pub struct Instance {
    name: String,
    space: MetricSpace,
    sets: SubsetPair,
    graph: DirectedGraph,
    maps: Maps,
    tol: Tolerance,
    universe: Vec<Point>,
    in_a: Vec<bool>,
    in_b: Vec<bool>,
    dab: SetDistance,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.space == other.space
            && self.sets == other.sets
            && self.graph == other.graph
            && self.maps == other.maps
    }
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        space: MetricSpace,
        sets: SubsetPair,
        graph: DirectedGraph,
        maps: Maps,
    ) -> Result<Self> {
        let tol = Tolerance::DEFAULT;
        let (universe, in_a, in_b) = match (&space, &sets.a, &sets.b) {
            (MetricSpace::Tabulated(m), PointSet::Finite(a), PointSet::Finite(b)) => {
                let n = m.len();
                let mut in_a = vec![false; n];
                let mut in_b = vec![false; n];
                for &i in a {
                    *in_a.get_mut(i).ok_or_else(|| Error::ForeignPoint(format!("#{i}")))? = true;
                }
                for &i in b {
                    *in_b.get_mut(i).ok_or_else(|| Error::ForeignPoint(format!("#{i}")))? = true;
                }
                if let Some(i) = (0..n).find(|&i| !in_a[i] && !in_b[i]) {
                    return Err(Error::Spec(format!("point #{i} is in neither A nor B")));
                }
                ((0..n).map(Point::Index).collect(), in_a, in_b)
            }
            (
                MetricSpace::Euclidean { dim },
                PointSet::Sampled { region: ra, samples: sa, .. },
                PointSet::Sampled { region: rb, samples: sb, .. },
            ) => {
                for r in [ra, rb] {
                    if r.dim() != *dim {
                        return Err(Error::Dimension { expected: *dim, found: r.dim() });
                    }
                }
                let mut seen = HashSet::new();
                let mut universe = Vec::with_capacity(sa.len() + sb.len());
                for c in sa.iter().chain(sb) {
                    let key: Vec<u64> = c.iter().map(|x| x.to_bits()).collect();
                    if seen.insert(key) {
                        universe.push(Point::Coords(c.clone()));
                    }
                }
                let in_a = universe.iter().map(|p| sets.a.contains(p, tol)).collect();
                let in_b = universe.iter().map(|p| sets.b.contains(p, tol)).collect();
                (universe, in_a, in_b)
            }
            _ => {
                return Err(Error::Spec(
                    "tabulated spaces need finite sets, Euclidean spaces need sampled regions".into(),
                ))
            }
        };
        let dab = pair_distance(&space, &sets)?;
        Ok(Instance { name: name.into(), space, sets, graph, maps, tol, universe, in_a, in_b, dab })
    }

    pub fn with_graph(&self, graph: DirectedGraph) -> Result<Self> {
        Instance::new(self.name.clone(), self.space.clone(), self.sets.clone(), graph, self.maps.clone())
    }

    pub fn with_maps(&self, maps: Maps) -> Result<Self> {
        Instance::new(self.name.clone(), self.space.clone(), self.sets.clone(), self.graph.clone(), maps)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    pub fn sets(&self) -> &SubsetPair {
        &self.sets
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn maps(&self) -> &Maps {
        &self.maps
    }

    pub fn single_map(&self) -> Option<&CyclicMap> {
        match &self.maps {
            Maps::Single(f) => Some(f),
            Maps::Pair(_) => None,
        }
    }

    pub fn map_pair(&self) -> Option<&MapPair> {
        match &self.maps {
            Maps::Pair(p) => Some(p),
            Maps::Single(_) => None,
        }
    }

    /// Tolerance used for region membership and coordinate equality.
    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// The points of `X = A∪B`, in scan order.
    pub fn universe(&self) -> &[Point] {
        &self.universe
    }

    /// `d(A,B)` over the stored points.
    pub fn d_ab(&self) -> SetDistance {
        self.dab
    }

    pub(crate) fn universe_in_a(&self, i: usize) -> bool {
        self.in_a[i]
    }

    pub(crate) fn universe_in_b(&self, i: usize) -> bool {
        self.in_b[i]
    }

    pub fn in_a(&self, p: &Point) -> bool {
        self.space.check_point(p).is_ok() && self.sets.a.contains(p, self.tol)
    }

    pub fn in_b(&self, p: &Point) -> bool {
        self.space.check_point(p).is_ok() && self.sets.b.contains(p, self.tol)
    }

    /// Membership in `A∪B`.
    pub fn contains_point(&self, p: &Point) -> bool {
        self.in_a(p) || self.in_b(p)
    }

    #[inline]
    pub(crate) fn dist(&self, x: &Point, y: &Point) -> f64 {
        self.space.dist(x, y)
    }

    #[inline]
    pub(crate) fn udist(&self, i: usize, j: usize) -> f64 {
        self.space.dist(&self.universe[i], &self.universe[j])
    }

    /// Images of every universe point under `f`. Fails if some image is not
    /// a point of the space.
    pub(crate) fn images(&self, f: &CyclicMap) -> Result<Vec<Point>> {
        self.universe
            .iter()
            .map(|x| {
                let y = f.apply(self, x)?;
                self.space.check_point(&y)?;
                Ok(y)
            })
            .collect()
    }

    pub(crate) fn is_edge(&self, x: &Point, y: &Point) -> bool {
        self.graph.has_edge(&self.space, x, y, self.tol)
    }

    /// Visits the edges among universe points in lexicographic order of
    /// universe indices.
    pub(crate) fn for_each_edge(&self, mut visit: impl FnMut(usize, usize) -> ControlFlow<()>) {
        let n = self.universe.len();
        match &self.graph {
            DirectedGraph::Diagonal => {
                for i in 0..n {
                    if visit(i, i).is_break() {
                        return;
                    }
                }
            }
            DirectedGraph::Edges(set) if matches!(self.space, MetricSpace::Tabulated(_)) => {
                // universe index == point index for tabulated spaces; Δ is implied
                let mut all: BTreeSet<(usize, usize)> = set.iter().copied().filter(|&(i, j)| i < n && j < n).collect();
                all.extend((0..n).map(|k| (k, k)));
                for (i, j) in all {
                    if visit(i, j).is_break() {
                        return;
                    }
                }
            }
            DirectedGraph::Complete => {
                for i in 0..n {
                    for j in 0..n {
                        if visit(i, j).is_break() {
                            return;
                        }
                    }
                }
            }
            g => {
                for i in 0..n {
                    for j in 0..n {
                        if g.has_edge(&self.space, &self.universe[i], &self.universe[j], self.tol)
                            && visit(i, j).is_break()
                        {
                            return;
                        }
                    }
                }
            }
        }
    }
}
