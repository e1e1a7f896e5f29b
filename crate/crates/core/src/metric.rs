//! Metric spaces with two distinguished subsets A and B.
//!
//! Two kinds of space are supported. A tabulated space is a finite set of
//! indexed points with an explicit distance matrix; every scan over it is
//! exact. A Euclidean space holds real vectors; its subsets are described by
//! a [`Region`] and sampled on a regular grid, so infima and suprema over
//! them are taken over the stored samples and carry a discretization bound.

use std::fmt;

use crate::error::{Error, Result};
use crate::validation::{ValidationReport, Violation};

/// Absolute slack used when comparing distances.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);
    pub const ZERO: Tolerance = Tolerance(0.0);

    pub fn new(tau: f64) -> Result<Self> {
        if tau.is_finite() && tau >= 0.0 {
            Ok(Tolerance(tau))
        } else {
            Err(Error::Domain(format!("tolerance must be finite and >= 0, got {tau}")))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

/// A point of an instance: an index into a tabulated space or a coordinate
/// vector in a Euclidean one.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Index(usize),
    Coords(Vec<f64>),
}

impl Point {
    pub fn index(&self) -> Option<usize> {
        match self {
            Point::Index(i) => Some(*i),
            Point::Coords(_) => None,
        }
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            Point::Index(_) => None,
            Point::Coords(c) => Some(c),
        }
    }
}

impl From<usize> for Point {
    fn from(i: usize) -> Self {
        Point::Index(i)
    }
}

impl From<Vec<f64>> for Point {
    fn from(c: Vec<f64>) -> Self {
        Point::Coords(c)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Index(i) => write!(f, "#{i}"),
            Point::Coords(c) => {
                f.write_str("(")?;
                for (n, x) in c.iter().enumerate() {
                    if n > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[inline]
pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Dense `n × n` distance table, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from full rows. Fails on non-square shapes and
    /// non-finite entries; axiom violations are left to [`validate_metric`].
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Structural("matrix has no rows".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Structural(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Structural(format!("entry ({i},{j}) is not finite")));
                }
            }
            data.extend_from_slice(row);
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Builds a symmetric matrix with zero diagonal from its strict lower
    /// triangle: row `i` holds `d(i,0), …, d(i,i-1)`.
    pub fn from_lower(lower: &[Vec<f64>]) -> Result<Self> {
        let n = lower.len();
        if n == 0 {
            return Err(Error::Structural("matrix has no rows".into()));
        }
        let mut data = vec![0.0; n * n];
        for (i, row) in lower.iter().enumerate() {
            if row.len() != i {
                return Err(Error::Structural(format!(
                    "lower-triangle row {i} has {} entries, expected {i}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Structural(format!("entry ({i},{j}) is not finite")));
                }
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Euclidean distances between the given points.
    pub fn from_coords(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::Structural("no points".into()));
        }
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let d = euclidean(&points[i], &points[j]);
                if !d.is_finite() {
                    return Err(Error::Structural(format!("distance ({i},{j}) is not finite")));
                }
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Strict lower triangle, the inverse of [`DistanceMatrix::from_lower`].
    pub fn lower_triangle(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..i).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }
}

/// The distance function `d` of an instance.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricSpace {
    Tabulated(DistanceMatrix),
    Euclidean { dim: usize },
}

impl MetricSpace {
    pub fn dimension(&self) -> Option<usize> {
        match self {
            MetricSpace::Tabulated(_) => None,
            MetricSpace::Euclidean { dim } => Some(*dim),
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (MetricSpace::Tabulated(m), Point::Index(i)) if *i < m.len() => Ok(()),
            (MetricSpace::Euclidean { dim }, Point::Coords(c)) => {
                if c.len() != *dim {
                    Err(Error::Dimension { expected: *dim, found: c.len() })
                } else if c.iter().any(|x| !x.is_finite()) {
                    Err(Error::ForeignPoint(p.to_string()))
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::ForeignPoint(p.to_string())),
        }
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(self.dist(x, y))
    }

    /// Unchecked distance; callers guarantee both points belong to the space.
    #[inline]
    pub(crate) fn dist(&self, x: &Point, y: &Point) -> f64 {
        match (self, x, y) {
            (MetricSpace::Tabulated(m), Point::Index(i), Point::Index(j)) => m.get(*i, *j),
            (MetricSpace::Euclidean { .. }, Point::Coords(a), Point::Coords(b)) => euclidean(a, b),
            _ => f64::NAN,
        }
    }
}

/// Checks the metric axioms of a space within `tol`.
///
/// Euclidean spaces are metrics by construction and always pass. For a
/// tabulated space every violated axiom is listed with its witness, so the
/// triangle scan is cubic in the point count.
pub fn validate_metric(space: &MetricSpace, tol: Tolerance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let MetricSpace::Tabulated(m) = space else {
        return report;
    };
    let n = m.len();
    let tau = tol.value();
    for i in 0..n {
        let dii = m.get(i, i);
        if dii.abs() > tau {
            report.push(Violation::NonzeroDiagonal { i, value: dii });
        }
        for j in 0..n {
            let dij = m.get(i, j);
            if dij < -tau {
                report.push(Violation::Negative { i, j, value: dij });
            }
            if j > i {
                let dji = m.get(j, i);
                if (dij - dji).abs() > tau {
                    report.push(Violation::Asymmetric { i, j, forward: dij, backward: dji });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let direct = m.get(i, j);
            for k in 0..n {
                let detour = m.get(i, k) + m.get(k, j);
                if direct > detour + tau {
                    report.push(Violation::Triangle { i, k, j, direct, detour });
                }
            }
        }
    }
    report
}

/// Closed-form description of a subset of ℝᵈ.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// Axis-aligned box; a dimension with `lo == hi` is degenerate.
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `{(x, y) : (x − s·y)² + y² ≤ 1}`, a unit disc under a shear.
    ShearedDisc { shear: f64 },
}

impl Region {
    pub fn dim(&self) -> usize {
        match self {
            Region::Box { lo, .. } => lo.len(),
            Region::ShearedDisc { .. } => 2,
        }
    }

    pub fn contains(&self, c: &[f64], tol: Tolerance) -> bool {
        if c.len() != self.dim() {
            return false;
        }
        let tau = tol.value();
        match self {
            Region::Box { lo, hi } => c.iter().zip(lo.iter().zip(hi)).all(|(x, (l, h))| *x >= l - tau && *x <= h + tau),
            Region::ShearedDisc { shear } => {
                let (x, y) = (c[0], c[1]);
                let u = x - shear * y;
                u * u + y * y <= 1.0 + tau
            }
        }
    }

    /// Regular grid samples, in lexicographic coordinate order.
    ///
    /// Boxes require `step` to divide every non-degenerate side so that the
    /// corners are samples. Sheared discs are sampled on the centred lattice
    /// `step·ℤ²`, which is closed under `x ↦ −x`.
    pub fn sample(&self, step: f64) -> Result<Vec<Vec<f64>>> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Spec(format!("grid step must be positive, got {step}")));
        }
        match self {
            Region::Box { lo, hi } => {
                let mut axes = Vec::with_capacity(lo.len());
                for (l, h) in lo.iter().zip(hi) {
                    if h < l {
                        return Err(Error::Spec(format!("empty box side [{l}, {h}]")));
                    }
                    if h == l {
                        axes.push(vec![*l]);
                        continue;
                    }
                    let span = h - l;
                    let count = (span / step).round();
                    if count < 1.0 || (count * step - span).abs() > 1e-9 * span.max(1.0) {
                        return Err(Error::Spec(format!("grid step {step} does not divide the side [{l}, {h}]")));
                    }
                    let count = count as i64;
                    axes.push((0..=count).map(|i| (l * count as f64 + i as f64 * span) / count as f64).collect());
                }
                Ok(cartesian(&axes))
            }
            Region::ShearedDisc { shear } => {
                let xmax = ((shear.abs() + 1.0) / step).floor() as i64;
                let ymax = (1.0 / step).floor() as i64;
                let mut out = Vec::new();
                for i in -xmax..=xmax {
                    for j in -ymax..=ymax {
                        let c = vec![lattice(i, step), lattice(j, step)];
                        if self.contains(&c, Tolerance(1e-12)) {
                            out.push(c);
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Upper bound on the distance from any region point to its nearest
    /// sample.
    pub fn covering_radius(&self, step: f64) -> f64 {
        match self {
            Region::Box { lo, hi } => {
                let k = lo.iter().zip(hi).filter(|(l, h)| h > l).count() as f64;
                0.5 * step * k.sqrt()
            }
            Region::ShearedDisc { .. } => step * 2f64.sqrt(),
        }
    }
}

/// `i·step`, computed as `i / m` when `step = 1/m` so that lattice points
/// with integer or simple decimal coordinates come out exact.
pub(crate) fn lattice(i: i64, step: f64) -> f64 {
    let m = (1.0 / step).round();
    if m >= 1.0 && ((1.0 / step) - m).abs() < 1e-9 {
        i as f64 / m
    } else {
        i as f64 * step
    }
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(*x);
                    p
                })
            })
            .collect()
    })
}

/// A subset A or B of an instance.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSet {
    /// Sorted, deduplicated indices of a tabulated space.
    Finite(Vec<usize>),
    Sampled {
        region: Region,
        step: f64,
        samples: Vec<Vec<f64>>,
    },
}

impl PointSet {
    pub fn finite(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        PointSet::Finite(indices)
    }

    pub fn sampled(region: Region, step: f64) -> Result<Self> {
        let samples = region.sample(step)?;
        Ok(PointSet::Sampled { region, step, samples })
    }

    pub fn len(&self) -> usize {
        match self {
            PointSet::Finite(ix) => ix.len(),
            PointSet::Sampled { samples, .. } => samples.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<Point> {
        match self {
            PointSet::Finite(ix) => ix.iter().map(|&i| Point::Index(i)).collect(),
            PointSet::Sampled { samples, .. } => samples.iter().cloned().map(Point::Coords).collect(),
        }
    }

    /// Membership of an arbitrary point, not only of the stored samples.
    pub fn contains(&self, p: &Point, tol: Tolerance) -> bool {
        match (self, p) {
            (PointSet::Finite(ix), Point::Index(i)) => ix.binary_search(i).is_ok(),
            (PointSet::Sampled { region, .. }, Point::Coords(c)) => region.contains(c, tol),
            _ => false,
        }
    }

    /// Discretization bound of the stored samples (zero for finite sets).
    pub fn discretization(&self) -> f64 {
        match self {
            PointSet::Finite(_) => 0.0,
            PointSet::Sampled { region, step, .. } => region.covering_radius(*step),
        }
    }
}

/// The pair (A, B).
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetPair {
    pub a: PointSet,
    pub b: PointSet,
}

impl SubsetPair {
    pub fn new(a: PointSet, b: PointSet) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySet("A"));
        }
        if b.is_empty() {
            return Err(Error::EmptySet("B"));
        }
        Ok(SubsetPair { a, b })
    }
}

/// `d(A,B)` over the stored points, plus the amount by which the true
/// infimum over the described regions may be smaller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetDistance {
    pub value: f64,
    pub discretization: f64,
}

/// `d(A,B) = min { d(a,b) : a ∈ A, b ∈ B }`.
pub fn pair_distance(space: &MetricSpace, sets: &SubsetPair) -> Result<SetDistance> {
    let a = sets.a.points();
    let b = sets.b.points();
    if a.is_empty() {
        return Err(Error::EmptySet("A"));
    }
    if b.is_empty() {
        return Err(Error::EmptySet("B"));
    }
    for p in a.iter().chain(&b) {
        space.check_point(p)?;
    }
    let mut best = f64::INFINITY;
    for x in &a {
        for y in &b {
            best = best.min(space.dist(x, y));
        }
    }
    Ok(SetDistance { value: best, discretization: sets.a.discretization() + sets.b.discretization() })
}

/// `max { d(x,y) : x, y ∈ S }`; zero for a singleton.
pub fn set_diameter(space: &MetricSpace, points: &[Point]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptySet("S"));
    }
    for p in points {
        space.check_point(p)?;
    }
    let mut best: f64 = 0.0;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            best = best.max(space.dist(x, y));
        }
    }
    Ok(best)
}
