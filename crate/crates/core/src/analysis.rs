//! Brute-force enumeration of approximate proximity sets, their diameters,
//! and the closed-form diameter bounds.
//!
//! Every scan runs over the instance's stored points (the index set of a
//! tabulated space, or the samples of a coordinate instance), so the
//! results are exact for the finite point set. Unlike the solvers, the
//! enumerators accept `ε = 0`, which gives the exact best proximity set.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::metric::{set_diameter, Point, Tolerance};
use crate::operators::{is_edge_nonexpansive, CyclicMap, MapPair};

/// How points whose `(x, f(x))` is not an edge are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Membership {
    /// `x` is a member iff `(x, f(x)) ∈ E(G)` and
    /// `d(x, f(x)) ≤ d(A,B) + ε + τ`.
    #[default]
    Strict,
    /// The literal implication: points with `(x, f(x)) ∉ E(G)` are members
    /// as well.
    Vacuous,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Strict => "strict",
            Membership::Vacuous => "vacuous",
        })
    }
}

/// Approximate best proximity points of a single map, in scan order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProximitySet {
    pub epsilon: f64,
    pub members: Vec<Point>,
    pub mode: Membership,
}

/// Pairs `(x, y) ∈ E(G) ∩ (A×B)` with `d(Tx, Sy) ≤ d(A,B) + ε + τ`, in
/// lexicographic scan order.
#[derive(Debug, Clone, PartialEq)]
pub struct PairProximitySet {
    pub epsilon: f64,
    pub members: Vec<(Point, Point)>,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("epsilon must be finite and nonnegative, got {epsilon}")))
    }
}

pub fn enumerate_proximity_set(
    inst: &Instance,
    f: &CyclicMap,
    epsilon: f64,
    mode: Membership,
    tol: Tolerance,
) -> Result<ProximitySet> {
    check_epsilon(epsilon)?;
    let images = inst.images(f)?;
    let threshold = inst.d_ab().value + epsilon + tol.value();
    let members = inst
        .universe()
        .iter()
        .zip(&images)
        .filter(|(x, fx)| {
            let edge = inst.is_edge(x, fx);
            let close = inst.dist(x, fx) <= threshold;
            match mode {
                Membership::Strict => edge && close,
                Membership::Vacuous => !edge || close,
            }
        })
        .map(|(x, _)| x.clone())
        .collect();
    Ok(ProximitySet { epsilon, members, mode })
}

pub fn enumerate_pair_set(inst: &Instance, pair: &MapPair, epsilon: f64, tol: Tolerance) -> Result<PairProximitySet> {
    check_epsilon(epsilon)?;
    let t = inst.images(&pair.t)?;
    let s = inst.images(&pair.s)?;
    let threshold = inst.d_ab().value + epsilon + tol.value();
    let u = inst.universe();
    let mut members = Vec::new();
    inst.for_each_edge(|i, j| {
        if inst.universe_in_a(i) && inst.universe_in_b(j) && inst.dist(&t[i], &s[j]) <= threshold {
            members.push((u[i].clone(), u[j].clone()));
        }
        ControlFlow::Continue(())
    });
    Ok(PairProximitySet { epsilon, members })
}

/// Largest distance between two members.
pub fn proximity_diameter(inst: &Instance, ps: &ProximitySet) -> Result<f64> {
    if ps.members.is_empty() {
        return Err(Error::Domain("diameter of an empty proximity set".into()));
    }
    set_diameter(inst.space(), &ps.members)
}

/// Largest `d(x, y)` over the member pairs `(x, y)`: the distance is taken
/// inside each pair, not between different pairs.
pub fn pair_diameter(inst: &Instance, pps: &PairProximitySet) -> Result<f64> {
    if pps.members.is_empty() {
        return Err(Error::Domain("diameter of an empty pair set".into()));
    }
    Ok(pps.members.iter().map(|(x, y)| inst.dist(x, y)).fold(0.0, f64::max))
}

fn check_rate(name: &str, r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must lie in [0, 1), got {r}")))
    }
}

/// `2ε/(1−α) + 2·d(A,B)/(1−α)`, the diameter bound for a G-contraction
/// whose proximity set is pairwise adjacent (e.g. on a complete graph).
pub fn contraction_diam_bound(alpha: f64, epsilon: f64, dab: f64) -> Result<f64> {
    check_rate("alpha", alpha)?;
    Ok(2.0 * epsilon / (1.0 - alpha) + 2.0 * dab / (1.0 - alpha))
}

/// `ε/(1−k) + d(A,B)/(1−k)`, the pair-diameter bound when
/// `d(x,Tx) + d(Sy,y) ≤ k·d(x,y)` on the pair set.
pub fn two_map_diam_bound(k: f64, epsilon: f64, dab: f64) -> Result<f64> {
    check_rate("k", k)?;
    Ok(epsilon / (1.0 - k) + dab / (1.0 - k))
}

/// Smallest `k` with `d(x,Tx) + d(Sy,y) ≤ k·d(x,y)` on every member of
/// `pps`. Infinite if some member has `d(x,y) = 0` and a nonzero left side
/// beyond τ; zero for an empty set.
pub fn two_map_hypothesis_factor(
    inst: &Instance,
    pair: &MapPair,
    pps: &PairProximitySet,
    tol: Tolerance,
) -> Result<f64> {
    let mut k: f64 = 0.0;
    for (x, y) in &pps.members {
        let lhs = inst.dist(x, &pair.t.apply(inst, x)?) + inst.dist(&pair.s.apply(inst, y)?, y);
        let d = inst.dist(x, y);
        if d > 0.0 {
            k = k.max(lhs / d);
        } else if lhs > tol.value() {
            return Ok(f64::INFINITY);
        }
    }
    Ok(k)
}

/// Result of [`minimizer_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct MinimizerReport {
    /// Eligible point with the least `d(z, f(z))`; the first in scan order
    /// on ties.
    pub point: Point,
    /// `d(z*, f(z*)) − d(A,B)`.
    pub residual: f64,
    pub nonexpansive: bool,
    /// For nonexpansive maps: whether the strict set at
    /// `ε = max(residual, 0) + τ` is nonempty.
    pub nonempty_at_residual: Option<bool>,
}

/// Minimizes `d(z, f(z))` over the eligible points `(z, f(z)) ∈ E(G)`.
pub fn minimizer_report(inst: &Instance, f: &CyclicMap, tol: Tolerance) -> Result<MinimizerReport> {
    let images = inst.images(f)?;
    let mut best: Option<(usize, f64)> = None;
    for (i, (z, fz)) in inst.universe().iter().zip(&images).enumerate() {
        if inst.is_edge(z, fz) {
            let d = inst.dist(z, fz);
            if best.is_none_or(|(_, b)| d < b) {
                best = Some((i, d));
            }
        }
    }
    let Some((i, d)) = best else {
        return Err(Error::Domain("no point z has (z, f(z)) as an edge".into()));
    };
    let residual = d - inst.d_ab().value;
    let nonexpansive = is_edge_nonexpansive(inst, f, tol)?.holds;
    let nonempty_at_residual = if nonexpansive {
        let eps = residual.max(0.0) + tol.value();
        Some(!enumerate_proximity_set(inst, f, eps, Membership::Strict, tol)?.members.is_empty())
    } else {
        None
    };
    Ok(MinimizerReport { point: inst.universe()[i].clone(), residual, nonexpansive, nonempty_at_residual })
}
