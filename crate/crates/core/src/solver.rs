//! Iteration schemes with stopping rules and a-priori iteration bounds.
//!
//! Every stopping comparison has the form `value ≤ d(A,B) + ε + τ`. The one
//! exception is [`epsilon_fixed_point`], whose defining inequality is strict:
//! `d(z, fᵖz) < ε`.
//!
//! Orbits of coordinate instances are computed exactly; points are never
//! snapped to the sample grid.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::metric::{Point, Tolerance};
use crate::operators::{CyclicMap, MapPair};

/// Parameters shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub epsilon: f64,
    pub max_iter: usize,
    pub tol: Tolerance,
}

impl SolveConfig {
    /// Requires `ε > 0` and `max_iter ≥ 1`.
    pub fn new(epsilon: f64, max_iter: usize, tol: Tolerance) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
        }
        if max_iter == 0 {
            return Err(Error::Domain("max_iter must be at least 1".into()));
        }
        Ok(SolveConfig { epsilon, max_iter, tol })
    }
}

/// The visited points and their residuals.
///
/// `residuals[i]` belongs to `points[i]` and is measured relative to
/// `baseline`, which is `d(A,B)` for the proximity solvers and 0 for
/// [`epsilon_fixed_point`].
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<P = Point> {
    pub points: Vec<P>,
    pub residuals: Vec<f64>,
    pub baseline: f64,
}

impl<P> IterationTrace<P> {
    fn new(baseline: f64) -> Self {
        IterationTrace { points: Vec::new(), residuals: Vec::new(), baseline }
    }

    fn push(&mut self, p: P, r: f64) {
        self.points.push(p);
        self.residuals.push(r);
    }
}

impl<P: TracePoint> IterationTrace<P> {
    /// One `n<TAB>point<TAB>residual` line per entry. Points past the last
    /// residual (the final orbit point of [`picard_orbit`]) get `-`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (n, p) in self.points.iter().enumerate() {
            let _ = match self.residuals.get(n) {
                Some(r) => writeln!(out, "{n}\t{}\t{r}", p.label()),
                None => writeln!(out, "{n}\t{}\t-", p.label()),
            };
        }
        out
    }
}

/// Display form used by trace tables.
pub trait TracePoint {
    fn label(&self) -> String;
}

impl TracePoint for Point {
    fn label(&self) -> String {
        self.to_string()
    }
}

impl TracePoint for (Point, Point) {
    fn label(&self) -> String {
        format!("{} | {}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Found,
    Exhausted,
    Ineligible,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Found => "found",
            SolveStatus::Exhausted => "exhausted",
            SolveStatus::Ineligible => "ineligible",
        })
    }
}

/// Outcome of a solve. `iterations` counts map applications before the
/// witness (or before giving up).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<W = Point> {
    pub status: SolveStatus,
    pub witness: Option<W>,
    pub iterations: usize,
    pub trace: IterationTrace<W>,
}

impl<W> SolveResult<W> {
    fn ineligible(trace: IterationTrace<W>) -> Self {
        SolveResult { status: SolveStatus::Ineligible, witness: None, iterations: 0, trace }
    }
}

fn step(inst: &Instance, f: &CyclicMap, x: &Point, index: usize) -> Result<Point> {
    let y = f.apply(inst, x).map_err(|_| Error::Orbit { last_valid: index, point: x.to_string() })?;
    if !inst.contains_point(&y) {
        return Err(Error::Orbit { last_valid: index, point: y.to_string() });
    }
    Ok(y)
}

fn require_member(inst: &Instance, p: &Point) -> Result<()> {
    if inst.contains_point(p) {
        Ok(())
    } else {
        Err(Error::ForeignPoint(p.to_string()))
    }
}

/// `x0, f(x0), …, fⁿ(x0)` with residuals `d(xᵢ, xᵢ₊₁) − d(A,B)` for
/// `i < n`.
pub fn picard_orbit(inst: &Instance, f: &CyclicMap, x0: &Point, n: usize) -> Result<IterationTrace> {
    require_member(inst, x0)?;
    let dab = inst.d_ab().value;
    let mut trace = IterationTrace::new(dab);
    let mut x = x0.clone();
    for i in 0..n {
        let y = step(inst, f, &x, i)?;
        let r = inst.dist(&x, &y) - dab;
        trace.push(x, r);
        x = y;
    }
    trace.points.push(x);
    Ok(trace)
}

/// Picard iteration until `d(xₙ, f(xₙ)) ≤ d(A,B) + ε + τ` at a point whose
/// `(xₙ, f(xₙ))` is an edge.
///
/// The start must satisfy `(x0, f(x0)) ∈ E(G)`; otherwise the result is
/// [`SolveStatus::Ineligible`].
pub fn find_proximity_point(inst: &Instance, f: &CyclicMap, x0: &Point, cfg: &SolveConfig) -> Result<SolveResult> {
    require_member(inst, x0)?;
    let dab = inst.d_ab().value;
    let mut trace = IterationTrace::new(dab);
    let mut x = x0.clone();
    let mut fx = step(inst, f, &x, 0)?;
    if !inst.is_edge(&x, &fx) {
        let r = inst.dist(&x, &fx) - dab;
        trace.push(x, r);
        return Ok(SolveResult::ineligible(trace));
    }
    for n in 0..=cfg.max_iter {
        let d = inst.dist(&x, &fx);
        trace.push(x.clone(), d - dab);
        if d <= dab + cfg.epsilon + cfg.tol.value() && inst.is_edge(&x, &fx) {
            return Ok(SolveResult { status: SolveStatus::Found, witness: Some(x), iterations: n, trace });
        }
        if n == cfg.max_iter {
            break;
        }
        let next = step(inst, f, &fx, n + 1)?;
        x = fx;
        fx = next;
    }
    Ok(SolveResult { status: SolveStatus::Exhausted, witness: None, iterations: cfg.max_iter, trace })
}

/// Smallest `n ≥ 0` with `kⁿ·(d0 − d(A,B)) ≤ ε`.
///
/// This is the number of Picard steps after which a CRR operator with decay
/// rate `k` is guaranteed to have residual at most ε.
pub fn crr_iteration_bound(d0: f64, k: f64, dab: f64, epsilon: f64, tol: Tolerance) -> Result<usize> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("decay rate k must lie in [0, 1), got {k}")));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    if d0 < dab - tol.value() {
        return Err(Error::Domain(format!("d0 = {d0} is below d(A,B) = {dab}")));
    }
    let gap = d0 - dab;
    if gap <= epsilon {
        return Ok(0);
    }
    if k == 0.0 {
        return Ok(1);
    }
    let estimate = ((epsilon / gap).ln() / k.ln()).ceil().max(1.0);
    let mut n = estimate as usize;
    // the closed form can be off by one in floating point
    let reaches = |n: usize| k.powi(n as i32) * gap <= epsilon;
    while n > 1 && reaches(n - 1) {
        n -= 1;
    }
    while !reaches(n) {
        n += 1;
    }
    Ok(n)
}

/// Verdict of [`is_gt_minimizing`].
#[derive(Debug, Clone, PartialEq)]
pub struct GtMinimizing {
    pub holds: bool,
    /// First trace index `n` with `(zₙ, f(zₙ)) ∉ E(G)`.
    pub off_graph: Option<usize>,
}

/// Finite surrogate for `d(zₙ, f(zₙ)) → d(A,B)`: every trace point must have
/// `(zₙ, f(zₙ))` as an edge, and the last `window` residuals
/// `d(zₙ, f(zₙ)) − d(A,B)` must be at most δ.
pub fn is_gt_minimizing(
    inst: &Instance,
    f: &CyclicMap,
    trace: &IterationTrace,
    window: usize,
    delta: f64,
) -> Result<GtMinimizing> {
    if window == 0 || trace.points.len() < window {
        return Err(Error::Domain(format!("window {window} needs 1..={} trace points", trace.points.len())));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    let dab = inst.d_ab().value;
    let mut residuals = Vec::with_capacity(trace.points.len());
    for (n, z) in trace.points.iter().enumerate() {
        require_member(inst, z)?;
        let fz = f.apply(inst, z)?;
        if !inst.is_edge(z, &fz) {
            return Ok(GtMinimizing { holds: false, off_graph: Some(n) });
        }
        residuals.push(inst.dist(z, &fz) - dab);
    }
    let tail = &residuals[residuals.len() - window..];
    Ok(GtMinimizing { holds: tail.iter().all(|&r| r <= delta), off_graph: None })
}

/// Searches the orbit of `fᵖ` (p = `power`) from `x0` for `z` with
/// `d(z, fᵖz) < ε`. The trace residuals are `d(z, fᵖz)` (baseline 0).
pub fn epsilon_fixed_point(
    inst: &Instance,
    f: &CyclicMap,
    x0: &Point,
    power: usize,
    cfg: &SolveConfig,
) -> Result<SolveResult> {
    if power == 0 {
        return Err(Error::Domain("power must be at least 1".into()));
    }
    require_member(inst, x0)?;
    let mut trace = IterationTrace::new(0.0);
    let mut z = x0.clone();
    for n in 0..=cfg.max_iter {
        let mut gz = z.clone();
        for p in 0..power {
            gz = step(inst, f, &gz, n * power + p)?;
        }
        let d = inst.dist(&z, &gz);
        trace.push(z.clone(), d);
        if d < cfg.epsilon {
            return Ok(SolveResult { status: SolveStatus::Found, witness: Some(z), iterations: n, trace });
        }
        z = gz;
    }
    Ok(SolveResult { status: SolveStatus::Exhausted, witness: None, iterations: cfg.max_iter, trace })
}

fn pair_eligible(inst: &Instance, x: &Point, y: &Point) -> bool {
    inst.in_a(x) && inst.in_b(y) && inst.is_edge(x, y)
}

/// Runs `xₙ = Tⁿx0`, `yₙ = Sⁿy0` until `d(Txₙ, Syₙ) ≤ d(A,B) + ε + τ`.
///
/// A step only counts as a witness when `(xₙ, yₙ)` lies in `E(G) ∩ (A×B)`,
/// so every witness is a member of the pair set at the same ε. Trace
/// residuals are `d(Txₙ, Syₙ) − d(A,B)`.
pub fn two_map_parallel(
    inst: &Instance,
    pair: &MapPair,
    x0: &Point,
    y0: &Point,
    cfg: &SolveConfig,
) -> Result<SolveResult<(Point, Point)>> {
    require_member(inst, x0)?;
    require_member(inst, y0)?;
    let dab = inst.d_ab().value;
    let mut trace = IterationTrace::new(dab);
    if !pair_eligible(inst, x0, y0) {
        return Ok(SolveResult::ineligible(trace));
    }
    let (mut x, mut y) = (x0.clone(), y0.clone());
    for n in 0..=cfg.max_iter {
        let tx = step(inst, &pair.t, &x, n)?;
        let sy = step(inst, &pair.s, &y, n)?;
        let d = inst.dist(&tx, &sy);
        trace.push((x.clone(), y.clone()), d - dab);
        if d <= dab + cfg.epsilon + cfg.tol.value() && pair_eligible(inst, &x, &y) {
            return Ok(SolveResult { status: SolveStatus::Found, witness: Some((x, y)), iterations: n, trace });
        }
        x = tx;
        y = sy;
    }
    Ok(SolveResult { status: SolveStatus::Exhausted, witness: None, iterations: cfg.max_iter, trace })
}

/// Distance bound checked after an alternating step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRecord {
    /// Index `m` of the pair `(xₘ, yₘ)`, counting the start as 0.
    pub step: usize,
    pub distance: f64,
    /// `αᵐ·d(x₀,y₀) + (1 − αᵐ)·d(A,B) + τ`.
    pub bound: f64,
}

impl BoundRecord {
    pub fn holds(&self) -> bool {
        self.distance <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingResult {
    pub result: SolveResult<(Point, Point)>,
    pub bounds: Vec<BoundRecord>,
}

impl AlternatingResult {
    pub fn bound_violations(&self) -> usize {
        self.bounds.iter().filter(|b| !b.holds()).count()
    }
}

/// The alternating scheme `xₘ₊₁ = S(yₘ)`, `yₘ₊₁ = T(xₘ)` from `(x0, y0)`.
///
/// Requires `α ∈ [0, 1)` and `|α + γ − 1| ≤ τ`. Before every step the
/// hypothesis `d(Txₘ, Syₘ) ≤ α·d(xₘ,yₘ) + γ·d(A,B) + τ` is checked together
/// with `(xₘ, yₘ) ∈ E(G)`; a failure is an [`Error::Hypothesis`] carrying
/// `m`. After every step the bound of [`BoundRecord`] is recorded. The
/// iteration stops at the first `m` with `d(xₘ, yₘ) ≤ d(A,B) + ε + τ`.
pub fn two_map_alternating(
    inst: &Instance,
    pair: &MapPair,
    x0: &Point,
    y0: &Point,
    alpha: f64,
    gamma: f64,
    cfg: &SolveConfig,
) -> Result<AlternatingResult> {
    let tau = cfg.tol.value();
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::Domain(format!("alpha must lie in [0, 1), got {alpha}")));
    }
    if !gamma.is_finite() || (alpha + gamma - 1.0).abs() > tau {
        return Err(Error::Domain(format!("alpha + gamma must equal 1, got {alpha} + {gamma}")));
    }
    require_member(inst, x0)?;
    require_member(inst, y0)?;
    let dab = inst.d_ab().value;
    let mut trace = IterationTrace::new(dab);
    let mut bounds = Vec::new();
    if !pair_eligible(inst, x0, y0) {
        return Ok(AlternatingResult { result: SolveResult::ineligible(trace), bounds });
    }
    let d0 = inst.dist(x0, y0);
    let (mut x, mut y) = (x0.clone(), y0.clone());
    for m in 0..=cfg.max_iter {
        let d = inst.dist(&x, &y);
        trace.push((x.clone(), y.clone()), d - dab);
        if d <= dab + cfg.epsilon + tau {
            let result = SolveResult { status: SolveStatus::Found, witness: Some((x, y)), iterations: m, trace };
            return Ok(AlternatingResult { result, bounds });
        }
        if m == cfg.max_iter {
            break;
        }
        if !inst.is_edge(&x, &y) {
            return Err(Error::Hypothesis { step: m, detail: format!("({x}, {y}) is not an edge") });
        }
        let tx = step(inst, &pair.t, &x, m)?;
        let sy = step(inst, &pair.s, &y, m)?;
        let next = inst.dist(&tx, &sy);
        let rhs = alpha * d + gamma * dab;
        if next > rhs + tau {
            return Err(Error::Hypothesis {
                step: m,
                detail: format!("d(Tx, Sy) = {next} exceeds {rhs} at ({x}, {y})"),
            });
        }
        let am = alpha.powi(m as i32 + 1);
        bounds.push(BoundRecord { step: m + 1, distance: next, bound: am * d0 + (1.0 - am) * dab + tau });
        x = sy;
        y = tx;
    }
    let result = SolveResult { status: SolveStatus::Exhausted, witness: None, iterations: cfg.max_iter, trace };
    Ok(AlternatingResult { result, bounds })
}
