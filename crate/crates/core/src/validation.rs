use std::fmt;

use crate::metric::Point;

/// One violated axiom together with its witness.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Negative {
        i: usize,
        j: usize,
        value: f64,
    },
    NonzeroDiagonal {
        i: usize,
        value: f64,
    },
    Asymmetric {
        i: usize,
        j: usize,
        forward: f64,
        backward: f64,
    },
    /// `d(i,j) > d(i,k) + d(k,j) + τ`.
    Triangle {
        i: usize,
        k: usize,
        j: usize,
        direct: f64,
        detour: f64,
    },
    DiagonalEdgeMissing {
        vertex: usize,
    },
    ForeignEndpoint {
        from: usize,
        to: usize,
    },
    /// A point of A whose image is not in B (or the converse).
    NotCyclic {
        point: Point,
        image: Point,
        expected: &'static str,
    },
    MapUndefined {
        point: Point,
        reason: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Negative { i, j, value } => {
                write!(f, "negative distance at ({i},{j}): {value}")
            }
            Violation::NonzeroDiagonal { i, value } => {
                write!(f, "nonzero self-distance at {i}: {value}")
            }
            Violation::Asymmetric { i, j, forward, backward } => {
                write!(f, "symmetry violated at ({i},{j}): {forward} vs {backward}")
            }
            Violation::Triangle { i, k, j, direct, detour } => {
                write!(f, "triangle inequality violated at ({i},{k},{j}): d({i},{j})={direct} > {detour}")
            }
            Violation::DiagonalEdgeMissing { vertex } => {
                write!(f, "diagonal incomplete at {vertex}")
            }
            Violation::ForeignEndpoint { from, to } => {
                write!(f, "foreign endpoint in edge ({from},{to})")
            }
            Violation::NotCyclic { point, image, expected } => {
                write!(f, "image of {point} is {image}, not in {expected}")
            }
            Violation::MapUndefined { point, reason } => {
                write!(f, "map undefined at {point}: {reason}")
            }
        }
    }
}

/// Outcome of a validation pass. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}
