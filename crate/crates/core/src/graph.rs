//! Directed graphs over the points of an instance.
//!
//! The diagonal Δ = {(x,x)} is always part of the edge relation:
//! [`contains_edge`] answers `true` for every self-loop regardless of how the
//! graph is stored. An explicit edge list that omits a self-loop is still
//! flagged by [`validate_graph`], since that list is not a faithful
//! description of G.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::metric::{euclidean, MetricSpace, Point, Tolerance};
use crate::operators::CyclicMap;
use crate::validation::{ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq)]
pub enum DirectedGraph {
    /// Every ordered pair is an edge.
    Complete,
    /// Only the self-loops.
    Diagonal,
    /// Explicit ordered index pairs of a tabulated space.
    Edges(BTreeSet<(usize, usize)>),
    /// Explicit ordered coordinate pairs of a Euclidean space, matched
    /// within the comparison tolerance.
    CoordEdges(Vec<(Vec<f64>, Vec<f64>)>),
    /// `(x, y)` is an edge iff `x = y` or `d(x, y) ≥ r`.
    MinSeparation(f64),
    /// Componentwise order on coordinates: `(x, y)` is an edge iff `xᵢ ≤ yᵢ`
    /// for every `i`.
    ProductOrder,
}

impl DirectedGraph {
    /// Explicit graph from index pairs, with Δ added for `0..n`.
    pub fn from_edges_with_diagonal(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut set: BTreeSet<_> = edges.into_iter().collect();
        set.extend((0..n).map(|i| (i, i)));
        DirectedGraph::Edges(set)
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            DirectedGraph::Complete => "complete",
            DirectedGraph::Diagonal => "diagonal",
            DirectedGraph::Edges(_) => "edges",
            DirectedGraph::CoordEdges(_) => "coord-edges",
            DirectedGraph::MinSeparation(_) => "min-separation",
            DirectedGraph::ProductOrder => "product-order",
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, DirectedGraph::Complete)
    }

    /// Edge test without the membership check.
    pub(crate) fn has_edge(&self, space: &MetricSpace, x: &Point, y: &Point, tol: Tolerance) -> bool {
        if same_point(x, y, tol) {
            return true;
        }
        match self {
            DirectedGraph::Complete => true,
            DirectedGraph::Diagonal => false,
            DirectedGraph::Edges(set) => match (x, y) {
                (Point::Index(i), Point::Index(j)) => set.contains(&(*i, *j)),
                _ => false,
            },
            DirectedGraph::CoordEdges(list) => match (x, y) {
                (Point::Coords(a), Point::Coords(b)) => list.iter().any(|(u, v)| {
                    u.len() == a.len()
                        && v.len() == b.len()
                        && euclidean(u, a) <= tol.value()
                        && euclidean(v, b) <= tol.value()
                }),
                _ => false,
            },
            DirectedGraph::MinSeparation(r) => space.dist(x, y) >= *r,
            DirectedGraph::ProductOrder => match (x, y) {
                (Point::Coords(a), Point::Coords(b)) => a.len() == b.len() && a.iter().zip(b).all(|(p, q)| *p <= *q),
                _ => false,
            },
        }
    }
}

fn same_point(x: &Point, y: &Point, tol: Tolerance) -> bool {
    match (x, y) {
        (Point::Index(i), Point::Index(j)) => i == j,
        (Point::Coords(a), Point::Coords(b)) => a.len() == b.len() && euclidean(a, b) <= tol.value(),
        _ => false,
    }
}

/// `(x, y) ∈ E(G)` for the instance's graph.
pub fn contains_edge(inst: &Instance, x: &Point, y: &Point) -> Result<bool> {
    for p in [x, y] {
        if !inst.contains_point(p) {
            return Err(Error::ForeignPoint(p.to_string()));
        }
    }
    Ok(inst.graph().has_edge(inst.space(), x, y, inst.tolerance()))
}

/// Flags missing self-loops and endpoints outside the point set.
pub fn validate_graph(g: &DirectedGraph, space: &MetricSpace) -> ValidationReport {
    let mut report = ValidationReport::default();
    match (g, space) {
        (DirectedGraph::Edges(set), MetricSpace::Tabulated(m)) => {
            let n = m.len();
            for &(i, j) in set {
                if i >= n || j >= n {
                    report.push(Violation::ForeignEndpoint { from: i, to: j });
                }
            }
            for i in 0..n {
                if !set.contains(&(i, i)) {
                    report.push(Violation::DiagonalEdgeMissing { vertex: i });
                }
            }
        }
        (DirectedGraph::Edges(set), MetricSpace::Euclidean { .. }) => {
            for &(i, j) in set {
                report.push(Violation::ForeignEndpoint { from: i, to: j });
            }
        }
        (DirectedGraph::CoordEdges(list), _) => {
            let dim = space.dimension();
            for (k, (u, v)) in list.iter().enumerate() {
                if dim.is_none_or(|d| u.len() != d || v.len() != d) {
                    report.push(Violation::ForeignEndpoint { from: k, to: k });
                }
            }
        }
        _ => {}
    }
    report
}

/// Result of an edge-preservation scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Preservation {
    pub holds: bool,
    /// First edge `(x, y)` in lexicographic scan order whose image
    /// `(f(x), f(y))` is not an edge.
    pub counterexample: Option<(Point, Point)>,
}

/// Checks `(x, y) ∈ E(G) ⇒ (f(x), f(y)) ∈ E(G)` over the instance's points.
pub fn preserves_edges(inst: &Instance, f: &CyclicMap) -> Result<Preservation> {
    let images = inst.images(f)?;
    Ok(scan_preservation(inst, &images))
}

pub(crate) fn scan_preservation(inst: &Instance, images: &[Point]) -> Preservation {
    let g = inst.graph();
    if g.is_complete() {
        return Preservation { holds: true, counterexample: None };
    }
    let (space, tol) = (inst.space(), inst.tolerance());
    let mut bad = None;
    inst.for_each_edge(|i, j| {
        if g.has_edge(space, &images[i], &images[j], tol) {
            ControlFlow::Continue(())
        } else {
            bad = Some((i, j));
            ControlFlow::Break(())
        }
    });
    let u = inst.universe();
    Preservation { holds: bad.is_none(), counterexample: bad.map(|(i, j)| (u[i].clone(), u[j].clone())) }
}

/// Largest subgraph of a tabulated instance's graph that `f` preserves:
/// edges are removed until every remaining edge maps onto a remaining edge.
/// Self-loops are always kept.
pub fn preserved_core(inst: &Instance, f: &CyclicMap) -> Result<DirectedGraph> {
    let MetricSpace::Tabulated(_) = inst.space() else {
        return Err(Error::Capability("preserved_core needs a tabulated instance".into()));
    };
    let images = inst.images(f)?;
    let img: Vec<usize> = images.iter().map(|p| p.index().unwrap_or(usize::MAX)).collect();
    let mut edges = BTreeSet::new();
    inst.for_each_edge(|i, j| {
        edges.insert((i, j));
        ControlFlow::Continue(())
    });
    loop {
        let before = edges.len();
        let keep: BTreeSet<_> = edges
            .iter()
            .copied()
            .filter(|&(i, j)| i == j || img[i] == img[j] || edges.contains(&(img[i], img[j])))
            .collect();
        edges = keep;
        if edges.len() == before {
            break;
        }
    }
    Ok(DirectedGraph::Edges(edges))
}
