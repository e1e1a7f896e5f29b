//! Cyclic maps and their classification.
//!
//! A cyclic map `T` on `A∪B` sends A into B and B into A. The checks in this
//! module decide, over every edge `(x, y)` of the instance's graph, whether
//! `T` belongs to one of these classes:
//!
//! * G-contraction: `T` preserves edges and `d(Tx,Ty) ≤ α·d(x,y)`;
//! * Ćirić–Reich–Rus type (CRR): `T` preserves edges and
//!   `d(Tx,Ty) ≤ α·d(x,y) + β·[d(x,Tx) + d(y,Ty)] + γ·d(A,B)` with
//!   `α + 2β + γ < 1`;
//! * the two-map CRR variant, with `d(Tx,Sy)` on the left and `d(y,Sy)` in
//!   the bracket, checked on edges in `A×B`;
//! * edge-nonexpansive: `d(Tx,Ty) ≤ d(x,y)`.
//!
//! Per-edge inequalities are compared with an absolute slack τ. The strict
//! constraint `α + 2β + γ < 1` on the constants is enforced exactly.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::scan_preservation;
use crate::instance::Instance;
use crate::metric::{lattice, Point, Tolerance};
use crate::validation::{ValidationReport, Violation};

/// `x ↦ M·x + c` on ℝᵈ, with `M` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine {
    matrix: Vec<f64>,
    offset: Vec<f64>,
}

impl Affine {
    pub fn new(matrix: Vec<f64>, offset: Vec<f64>) -> Result<Self> {
        let d = offset.len();
        if d == 0 || matrix.len() != d * d {
            return Err(Error::Spec(format!("affine map needs a {d}x{d} matrix, got {} entries", matrix.len())));
        }
        if matrix.iter().chain(&offset).any(|x| !x.is_finite()) {
            return Err(Error::Spec("affine map has non-finite coefficients".into()));
        }
        Ok(Affine { matrix, offset })
    }

    /// `x ↦ s·x + c` with a scalar `s`.
    pub fn scaled(s: f64, offset: Vec<f64>) -> Result<Self> {
        let d = offset.len();
        let mut m = vec![0.0; d * d];
        for i in 0..d {
            m[i * d + i] = s;
        }
        Affine::new(m, offset)
    }

    /// The constant map onto `c`.
    pub fn constant(c: Vec<f64>) -> Result<Self> {
        Affine::scaled(0.0, c)
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn offset(&self) -> &[f64] {
        &self.offset
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let row = &self.matrix[i * d..(i + 1) * d];
                row.iter().zip(x).map(|(m, v)| m * v).sum::<f64>() + self.offset[i]
            })
            .collect()
    }
}

/// A total map on `A∪B`.
#[derive(Debug, Clone, PartialEq)]
pub enum CyclicMap {
    /// Image index of every point of a tabulated space.
    Table(Vec<usize>),
    /// One affine piece on A and one on B. A point in both sets uses the
    /// A piece.
    PiecewiseAffine { on_a: Affine, on_b: Affine },
}

impl CyclicMap {
    pub fn apply(&self, inst: &Instance, x: &Point) -> Result<Point> {
        match (self, x) {
            (CyclicMap::Table(t), Point::Index(i)) => {
                t.get(*i).map(|&j| Point::Index(j)).ok_or_else(|| Error::ForeignPoint(x.to_string()))
            }
            (CyclicMap::PiecewiseAffine { on_a, on_b }, Point::Coords(c)) => {
                if c.len() != on_a.dim() {
                    return Err(Error::Dimension { expected: on_a.dim(), found: c.len() });
                }
                if inst.in_a(x) {
                    Ok(Point::Coords(on_a.apply(c)))
                } else if inst.in_b(x) {
                    Ok(Point::Coords(on_b.apply(c)))
                } else {
                    Err(Error::ForeignPoint(x.to_string()))
                }
            }
            _ => Err(Error::ForeignPoint(x.to_string())),
        }
    }
}

/// Two maps `T, S` on `A∪B` with `T(A) ⊆ B` and `S(B) ⊆ A`. Both must be
/// total on `A∪B` since the two-map conditions apply them to both
/// coordinates of a pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MapPair {
    pub t: CyclicMap,
    pub s: CyclicMap,
}

/// Flags every `a ∈ A` with `f(a) ∉ B` and every `b ∈ B` with `f(b) ∉ A`.
pub fn validate_cyclic(inst: &Instance, f: &CyclicMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, x) in inst.universe().iter().enumerate() {
        let y = match f.apply(inst, x) {
            Ok(y) => y,
            Err(e) => {
                report.push(Violation::MapUndefined { point: x.clone(), reason: e.to_string() });
                continue;
            }
        };
        if inst.universe_in_a(i) && !inst.in_b(&y) {
            report.push(Violation::NotCyclic { point: x.clone(), image: y.clone(), expected: "B" });
        }
        if inst.universe_in_b(i) && !inst.in_a(&y) {
            report.push(Violation::NotCyclic { point: x.clone(), image: y, expected: "A" });
        }
    }
    report
}

/// Checks `T(A) ⊆ B`, `S(B) ⊆ A` and that both maps are total on `A∪B`.
pub fn validate_pair(inst: &Instance, pair: &MapPair) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, x) in inst.universe().iter().enumerate() {
        match pair.t.apply(inst, x) {
            Ok(y) if inst.universe_in_a(i) && !inst.in_b(&y) => {
                report.push(Violation::NotCyclic { point: x.clone(), image: y, expected: "B" })
            }
            Ok(y) if !inst.contains_point(&y) => report
                .push(Violation::MapUndefined { point: x.clone(), reason: format!("T image {y} is outside A∪B") }),
            Ok(_) => {}
            Err(e) => report.push(Violation::MapUndefined { point: x.clone(), reason: e.to_string() }),
        }
        match pair.s.apply(inst, x) {
            Ok(y) if inst.universe_in_b(i) && !inst.in_a(&y) => {
                report.push(Violation::NotCyclic { point: x.clone(), image: y, expected: "A" })
            }
            Ok(y) if !inst.contains_point(&y) => report
                .push(Violation::MapUndefined { point: x.clone(), reason: format!("S image {y} is outside A∪B") }),
            Ok(_) => {}
            Err(e) => report.push(Violation::MapUndefined { point: x.clone(), reason: e.to_string() }),
        }
    }
    report
}

/// Constants `(α, β, γ)` of a CRR inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrrParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl CrrParams {
    /// Requires nonnegative finite constants with `α + 2β + γ < 1`.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let all = [alpha, beta, gamma];
        if all.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Domain(format!(
                "CRR constants must be finite and nonnegative, got ({alpha}, {beta}, {gamma})"
            )));
        }
        if alpha + 2.0 * beta + gamma >= 1.0 {
            return Err(Error::Domain(format!(
                "CRR constants need alpha + 2 beta + gamma < 1, got ({alpha}, {beta}, {gamma})"
            )));
        }
        Ok(CrrParams { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Residual decay rate `k = (α + β) / (1 − β)`, always in `[0, 1)`.
    pub fn k(&self) -> f64 {
        (self.alpha + self.beta) / (1.0 - self.beta)
    }
}

/// An edge together with how far it exceeds an inequality (`lhs − rhs`;
/// positive means violated).
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSlack {
    pub edge: (Point, Point),
    pub excess: f64,
}

/// Outcome of a class-membership scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    /// Edge with the largest excess; the first one in scan order on ties.
    /// `None` when there is no edge to check.
    pub worst: Option<EdgeSlack>,
    /// First edge whose image is not an edge, when edge preservation is part
    /// of the class and fails.
    pub unpreserved: Option<(Point, Point)>,
}

/// Result of [`min_contraction_factor`].
#[derive(Debug, Clone, PartialEq)]
pub enum ContractionFactor {
    /// `alpha` is the largest ratio `d(fx,fy)/d(x,y)` over edges with
    /// `d(x,y) > 0`, or 0 when there is no such edge.
    Contractive { alpha: f64, worst: Option<(Point, Point)> },
    /// Some edge has ratio ≥ 1, or is collapsed (`d(x,y) = 0`) while its
    /// image is not.
    NotContractive { ratio: f64, edge: (Point, Point) },
}

struct Scan {
    images: Vec<Point>,
    self_dist: Vec<f64>,
}

fn prepare(inst: &Instance, f: &CyclicMap) -> Result<Scan> {
    let images = inst.images(f)?;
    let self_dist = inst.universe().iter().zip(&images).map(|(x, y)| inst.dist(x, y)).collect();
    Ok(Scan { images, self_dist })
}

fn edge_at(inst: &Instance, (i, j): (usize, usize)) -> (Point, Point) {
    (inst.universe()[i].clone(), inst.universe()[j].clone())
}

/// Largest `excess(i, j)` over the edges selected by `filter`.
fn worst_edge(
    inst: &Instance,
    filter: impl Fn(usize, usize) -> bool,
    excess: impl Fn(usize, usize) -> f64,
) -> Option<((usize, usize), f64)> {
    let mut worst: Option<((usize, usize), f64)> = None;
    inst.for_each_edge(|i, j| {
        if filter(i, j) {
            let e = excess(i, j);
            if worst.is_none_or(|(_, w)| e > w) {
                worst = Some(((i, j), e));
            }
        }
        ControlFlow::Continue(())
    });
    worst
}

fn verdict(inst: &Instance, worst: Option<((usize, usize), f64)>, tol: Tolerance) -> Verdict {
    Verdict {
        holds: worst.is_none_or(|(_, e)| e <= tol.value()),
        worst: worst.map(|(edge, excess)| EdgeSlack { edge: edge_at(inst, edge), excess }),
        unpreserved: None,
    }
}

/// Smallest α with `d(fx,fy) ≤ α·d(x,y)` on every edge.
///
/// Fails with [`Error::EdgeNotPreserved`] if `f` does not preserve edges.
pub fn min_contraction_factor(inst: &Instance, f: &CyclicMap, tol: Tolerance) -> Result<ContractionFactor> {
    let scan = prepare(inst, f)?;
    let p = scan_preservation(inst, &scan.images);
    if let Some((x, y)) = p.counterexample {
        return Err(Error::EdgeNotPreserved(format!("({x}, {y})")));
    }
    let mut alpha: f64 = 0.0;
    let mut worst = None;
    let mut collapsed = None;
    inst.for_each_edge(|i, j| {
        let d = inst.udist(i, j);
        let dt = inst.dist(&scan.images[i], &scan.images[j]);
        if d > 0.0 {
            let r = dt / d;
            if r > alpha {
                alpha = r;
                worst = Some((i, j));
            }
        } else if dt > tol.value() {
            collapsed = Some((i, j));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if let Some(e) = collapsed {
        return Ok(ContractionFactor::NotContractive { ratio: f64::INFINITY, edge: edge_at(inst, e) });
    }
    match worst {
        Some(e) if alpha >= 1.0 => Ok(ContractionFactor::NotContractive { ratio: alpha, edge: edge_at(inst, e) }),
        _ => Ok(ContractionFactor::Contractive { alpha, worst: worst.map(|e| edge_at(inst, e)) }),
    }
}

/// G-contraction test with a given `α ∈ (0, 1)`.
pub fn is_g_contraction(inst: &Instance, f: &CyclicMap, alpha: f64, tol: Tolerance) -> Result<Verdict> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("contraction factor must lie in (0, 1), got {alpha}")));
    }
    let scan = prepare(inst, f)?;
    let p = scan_preservation(inst, &scan.images);
    let worst =
        worst_edge(inst, |_, _| true, |i, j| inst.dist(&scan.images[i], &scan.images[j]) - alpha * inst.udist(i, j));
    let mut v = verdict(inst, worst, tol);
    v.holds &= p.holds;
    v.unpreserved = p.counterexample;
    Ok(v)
}

/// CRR test for a single cyclic map with the given constants.
pub fn is_crr_moh(inst: &Instance, f: &CyclicMap, params: CrrParams, tol: Tolerance) -> Result<Verdict> {
    let scan = prepare(inst, f)?;
    let p = scan_preservation(inst, &scan.images);
    let dab = inst.d_ab().value;
    let worst = worst_edge(
        inst,
        |_, _| true,
        |i, j| crr_excess(inst, &scan, params.alpha, params.beta, params.gamma * dab, i, j),
    );
    let mut v = verdict(inst, worst, tol);
    v.holds &= p.holds;
    v.unpreserved = p.counterexample;
    Ok(v)
}

#[inline]
fn crr_excess(inst: &Instance, scan: &Scan, alpha: f64, beta: f64, gamma_dab: f64, i: usize, j: usize) -> f64 {
    inst.dist(&scan.images[i], &scan.images[j])
        - (alpha * inst.udist(i, j) + beta * (scan.self_dist[i] + scan.self_dist[j]) + gamma_dab)
}

/// Deterministic grid search for CRR constants.
///
/// Scans `α = i·h, β = j·h, γ = l·h` in lexicographic order of `(i, j, l)`
/// over the open simplex `α + 2β + γ < 1` and returns the first triple for
/// which [`is_crr_moh`] holds. Requires `f` to preserve edges.
pub fn crr_params_feasible(
    inst: &Instance,
    f: &CyclicMap,
    grid_step: f64,
    tol: Tolerance,
) -> Result<Option<CrrParams>> {
    if !(grid_step > 0.0 && grid_step < 1.0) {
        return Err(Error::Domain(format!("grid step must lie in (0, 1), got {grid_step}")));
    }
    let scan = prepare(inst, f)?;
    let p = scan_preservation(inst, &scan.images);
    if let Some((x, y)) = p.counterexample {
        return Err(Error::EdgeNotPreserved(format!("({x}, {y})")));
    }
    let dab = inst.d_ab().value;
    let tau = tol.value();

    let inv = 1.0 / grid_step;
    let integral = (inv - inv.round()).abs() < 1e-9;
    let v = |i: usize| lattice(i as i64, grid_step);
    let fits = |i: usize, j: usize, l: usize| {
        if integral {
            i + 2 * j + l < inv.round() as usize
        } else {
            v(i) + 2.0 * v(j) + v(l) < 1.0
        }
    };

    // Edges that refuted earlier (α, β) cells; most cells fall to one of them.
    let mut witnesses: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    while fits(i, 0, 0) {
        let mut j = 0;
        while fits(i, j, 0) {
            let mut lmax = 0;
            while fits(i, j, lmax + 1) {
                lmax += 1;
            }
            let (alpha, beta) = (v(i), v(j));
            let budget = v(lmax) * dab + tau;
            let refuted = witnesses.iter().any(|&(a, b)| crr_excess(inst, &scan, alpha, beta, 0.0, a, b) > budget);
            if !refuted {
                let mut max_excess = f64::NEG_INFINITY;
                let mut breaker = None;
                inst.for_each_edge(|a, b| {
                    let e = crr_excess(inst, &scan, alpha, beta, 0.0, a, b);
                    max_excess = max_excess.max(e);
                    if e > budget {
                        breaker = Some((a, b));
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                match breaker {
                    Some(w) => {
                        if witnesses.len() < 64 {
                            witnesses.push(w);
                        }
                    }
                    None => {
                        let l = (0..=lmax).find(|&l| max_excess <= v(l) * dab + tau).unwrap_or(lmax);
                        return CrrParams::new(alpha, beta, v(l)).map(Some);
                    }
                }
            }
            j += 1;
        }
        i += 1;
    }
    Ok(None)
}

/// Two-map CRR test. Both conditions are checked on the edges `(x, y)` with
/// `x ∈ A` and `y ∈ B`: `(Tx,Ty)` and `(Sx,Sy)` must be edges, and
/// `d(Tx,Sy) ≤ α·d(x,y) + β·[d(x,Tx) + d(y,Sy)] + γ·d(A,B)`.
pub fn is_crr_2map(inst: &Instance, pair: &MapPair, params: CrrParams, tol: Tolerance) -> Result<Verdict> {
    let ts = prepare(inst, &pair.t)?;
    let ss = prepare(inst, &pair.s)?;
    let dab = inst.d_ab().value;
    let cross = |i: usize, j: usize| inst.universe_in_a(i) && inst.universe_in_b(j);

    let mut unpreserved = None;
    inst.for_each_edge(|i, j| {
        if cross(i, j) && !(inst.is_edge(&ts.images[i], &ts.images[j]) && inst.is_edge(&ss.images[i], &ss.images[j])) {
            unpreserved = Some((i, j));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    let worst = worst_edge(inst, cross, |i, j| {
        inst.dist(&ts.images[i], &ss.images[j])
            - (params.alpha * inst.udist(i, j) + params.beta * (ts.self_dist[i] + ss.self_dist[j]) + params.gamma * dab)
    });
    let mut v = verdict(inst, worst, tol);
    v.holds &= unpreserved.is_none();
    v.unpreserved = unpreserved.map(|e| edge_at(inst, e));
    Ok(v)
}

/// Smallest `α ∈ [0, 1)` with `d(Tx,Sy) ≤ α·d(x,y) + (1−α)·d(A,B) + τ` on
/// every edge `(x, y)` in `A×B`, the hypothesis of the alternating
/// iteration with `γ = 1 − α`. `None` if no such α exists.
pub fn min_alternating_factor(inst: &Instance, pair: &MapPair, tol: Tolerance) -> Result<Option<f64>> {
    let t = inst.images(&pair.t)?;
    let s = inst.images(&pair.s)?;
    let dab = inst.d_ab().value;
    let tau = tol.value();
    let mut alpha: f64 = 0.0;
    let mut feasible = true;
    inst.for_each_edge(|i, j| {
        if !(inst.universe_in_a(i) && inst.universe_in_b(j)) {
            return ControlFlow::Continue(());
        }
        let excess = inst.dist(&t[i], &s[j]) - dab;
        let room = inst.udist(i, j) - dab;
        if excess <= tau {
            return ControlFlow::Continue(());
        }
        if room <= 0.0 || excess >= room {
            feasible = false;
            return ControlFlow::Break(());
        }
        alpha = alpha.max(excess / room);
        ControlFlow::Continue(())
    });
    Ok(feasible.then_some(alpha))
}

/// `d(fx,fy) ≤ d(x,y)` on every edge.
pub fn is_edge_nonexpansive(inst: &Instance, f: &CyclicMap, tol: Tolerance) -> Result<Verdict> {
    let scan = prepare(inst, f)?;
    let worst = worst_edge(inst, |_, _| true, |i, j| inst.dist(&scan.images[i], &scan.images[j]) - inst.udist(i, j));
    Ok(verdict(inst, worst, tol))
}
