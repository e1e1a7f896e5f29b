//! The worked examples, rebuilt on sample grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::instance::{Instance, Maps};
use crate::metric::{MetricSpace, PointSet, Region, SubsetPair};
use crate::operators::{Affine, CyclicMap, MapPair};

fn divides(span: f64, step: f64) -> bool {
    if !(step.is_finite() && step > 0.0) {
        return false;
    }
    let q = span / step;
    q >= 1.0 && (q - q.round()).abs() < 1e-9 * q.max(1.0)
}

/// `A = [−3, −1]`, `B = [1, 3]` on the real line with
/// `T(x) = (1 − x)/2` on A and `T(x) = (−1 − x)/2` on B, complete graph.
///
/// `grid_step` must divide 2 so that ±1 and ±3 are samples.
pub fn interval_example(grid_step: f64) -> Result<Instance> {
    if !divides(2.0, grid_step) {
        return Err(Error::Spec(format!("grid step {grid_step} must divide 2")));
    }
    let a = PointSet::sampled(Region::Box { lo: vec![-3.0], hi: vec![-1.0] }, grid_step)?;
    let b = PointSet::sampled(Region::Box { lo: vec![1.0], hi: vec![3.0] }, grid_step)?;
    let t =
        CyclicMap::PiecewiseAffine { on_a: Affine::scaled(-0.5, vec![0.5])?, on_b: Affine::scaled(-0.5, vec![-0.5])? };
    Instance::new(
        "interval",
        MetricSpace::Euclidean { dim: 1 },
        SubsetPair::new(a, b)?,
        DirectedGraph::Complete,
        Maps::Single(t),
    )
}

/// `A = {(x−y)² + y² ≤ 1}`, `B = {(x+y)² + y² ≤ 1}` in the plane with the
/// reflection `T(x, y) = (−x, y)`, complete graph. Both sets are sampled on
/// the lattice `grid_step·ℤ²`, which the reflection maps onto itself.
pub fn ellipse_example(grid_step: f64) -> Result<Instance> {
    let a = PointSet::sampled(Region::ShearedDisc { shear: 1.0 }, grid_step)?;
    let b = PointSet::sampled(Region::ShearedDisc { shear: -1.0 }, grid_step)?;
    let flip = Affine::new(vec![-1.0, 0.0, 0.0, 1.0], vec![0.0, 0.0])?;
    Instance::new(
        "ellipse",
        MetricSpace::Euclidean { dim: 2 },
        SubsetPair::new(a, b)?,
        DirectedGraph::Complete,
        Maps::Single(CyclicMap::PiecewiseAffine { on_a: flip.clone(), on_b: flip }),
    )
}

/// `A = [0,1]×{0}`, `B = [0,1]×{1}` with the constant maps
/// `T ≡ (1/2, 1)` and `S ≡ (1/2, 0)`, complete graph.
///
/// `grid_step` must divide 1/2 so that `x = 1/2` is a sample.
pub fn segments_example(grid_step: f64) -> Result<Instance> {
    if !divides(0.5, grid_step) {
        return Err(Error::Spec(format!("grid step {grid_step} must divide 1/2")));
    }
    let a = PointSet::sampled(Region::Box { lo: vec![0.0, 0.0], hi: vec![1.0, 0.0] }, grid_step)?;
    let b = PointSet::sampled(Region::Box { lo: vec![0.0, 1.0], hi: vec![1.0, 1.0] }, grid_step)?;
    let t = Affine::constant(vec![0.5, 1.0])?;
    let s = Affine::constant(vec![0.5, 0.0])?;
    Instance::new(
        "segments",
        MetricSpace::Euclidean { dim: 2 },
        SubsetPair::new(a, b)?,
        DirectedGraph::Complete,
        Maps::Pair(MapPair {
            t: CyclicMap::PiecewiseAffine { on_a: t.clone(), on_b: t },
            s: CyclicMap::PiecewiseAffine { on_a: s.clone(), on_b: s },
        }),
    )
}

/// Two horizontal segments `A = [0,1]×{0}` and `B = [0,1]×{h}` with
/// `T(p) = (λ·pₓ + (1−λ)·c, h)` and `S(p) = (λ·pₓ + (1−λ)·c, 0)`.
///
/// With `λ ≤ 1/2` the pair satisfies `d(Tx,Sy) ≤ ½·d(x,y) + ½·d(A,B)` on
/// `A×B`, which makes it a test-bed for the alternating iteration. `λ`, `h`
/// and `c` are drawn from `seed`.
pub fn contracting_strips(seed: u64, grid_step: f64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = rng.random_range(0.05..=0.5);
    let h = rng.random_range(0.25..2.0);
    let c = rng.random_range(0.0..1.0);
    let a = PointSet::sampled(Region::Box { lo: vec![0.0, 0.0], hi: vec![1.0, 0.0] }, grid_step)?;
    let b = PointSet::sampled(Region::Box { lo: vec![0.0, h], hi: vec![1.0, h] }, grid_step)?;
    let m = vec![lambda, 0.0, 0.0, 0.0];
    let shift = (1.0 - lambda) * c;
    let t = Affine::new(m.clone(), vec![shift, h])?;
    let s = Affine::new(m, vec![shift, 0.0])?;
    Instance::new(
        format!("strips-{seed}"),
        MetricSpace::Euclidean { dim: 2 },
        SubsetPair::new(a, b)?,
        DirectedGraph::Complete,
        Maps::Pair(MapPair {
            t: CyclicMap::PiecewiseAffine { on_a: t.clone(), on_b: t },
            s: CyclicMap::PiecewiseAffine { on_a: s.clone(), on_b: s },
        }),
    )
}
