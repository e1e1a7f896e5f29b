//! Instance construction: the worked examples, seeded generators and the
//! instance file format.

mod examples;
mod file;
mod random;

pub use examples::{contracting_strips, ellipse_example, interval_example, segments_example};
pub use file::{from_toml_str, load_instance, save_instance, to_toml_string, FORMAT_TAG};
pub use random::{
    chain_pair_instance, orbit_instance, random_instance, random_pair_instance, BoundingBox, ChainSpec, GraphRule,
    MapRule, OrbitSpec, RandomPairSpec, RandomSpec,
};
