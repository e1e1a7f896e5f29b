//! Instance files: TOML documents describing a space, the sets A and B, a
//! graph and the map(s). The field layout is documented in the guide's
//! file-format chapter.
//!
//! Tabulated instances round-trip bit for bit (distances are written in
//! shortest round-trip form). Euclidean instances store their region
//! descriptions and grid steps; the samples are regenerated on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::instance::{Instance, Maps};
use crate::metric::{DistanceMatrix, MetricSpace, PointSet, Region, SubsetPair};
use crate::operators::{Affine, CyclicMap, MapPair};

pub const FORMAT_TAG: &str = "bestprox-instance/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    format: String,
    name: String,
    space: SpaceFile,
    sets: SetsFile,
    graph: GraphFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<MapFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<MapFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<MapFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum SpaceFile {
    Tabulated {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lower: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<f64>>>,
    },
    Euclidean {
        dim: usize,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetsFile {
    a: SetFile,
    b: SetFile,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SetFile {
    Indices(Vec<usize>),
    Region(RegionFile),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "region", rename_all = "kebab-case", deny_unknown_fields)]
enum RegionFile {
    Box { lo: Vec<f64>, hi: Vec<f64>, step: f64 },
    ShearedDisc { shear: f64, step: f64 },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
enum GraphFile {
    Complete,
    Diagonal,
    Edges { edges: Vec<[usize; 2]> },
    CoordEdges { edges: Vec<[Vec<f64>; 2]> },
    MinSeparation { separation: f64 },
    ProductOrder,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
enum MapFile {
    Table { table: Vec<usize> },
    PiecewiseAffine { a_matrix: Vec<f64>, a_offset: Vec<f64>, b_matrix: Vec<f64>, b_offset: Vec<f64> },
}

fn field_error(location: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: location.to_string(), message: message.into() }
}

fn set_to_file(set: &PointSet) -> SetFile {
    match set {
        PointSet::Finite(ix) => SetFile::Indices(ix.clone()),
        PointSet::Sampled { region: Region::Box { lo, hi }, step, .. } => {
            SetFile::Region(RegionFile::Box { lo: lo.clone(), hi: hi.clone(), step: *step })
        }
        PointSet::Sampled { region: Region::ShearedDisc { shear }, step, .. } => {
            SetFile::Region(RegionFile::ShearedDisc { shear: *shear, step: *step })
        }
    }
}

fn map_to_file(f: &CyclicMap) -> MapFile {
    match f {
        CyclicMap::Table(t) => MapFile::Table { table: t.clone() },
        CyclicMap::PiecewiseAffine { on_a, on_b } => MapFile::PiecewiseAffine {
            a_matrix: on_a.matrix().to_vec(),
            a_offset: on_a.offset().to_vec(),
            b_matrix: on_b.matrix().to_vec(),
            b_offset: on_b.offset().to_vec(),
        },
    }
}

fn set_from_file(set: SetFile, location: &str) -> Result<PointSet> {
    Ok(match set {
        SetFile::Indices(ix) => PointSet::finite(ix),
        SetFile::Region(RegionFile::Box { lo, hi, step }) => {
            if lo.len() != hi.len() {
                return Err(field_error(location, "lo and hi differ in length"));
            }
            PointSet::sampled(Region::Box { lo, hi }, step).map_err(|e| field_error(location, e.to_string()))?
        }
        SetFile::Region(RegionFile::ShearedDisc { shear, step }) => {
            PointSet::sampled(Region::ShearedDisc { shear }, step).map_err(|e| field_error(location, e.to_string()))?
        }
    })
}

fn map_from_file(f: MapFile, location: &str) -> Result<CyclicMap> {
    Ok(match f {
        MapFile::Table { table } => CyclicMap::Table(table),
        MapFile::PiecewiseAffine { a_matrix, a_offset, b_matrix, b_offset } => {
            let on_a = Affine::new(a_matrix, a_offset).map_err(|e| field_error(location, e.to_string()))?;
            let on_b = Affine::new(b_matrix, b_offset).map_err(|e| field_error(location, e.to_string()))?;
            CyclicMap::PiecewiseAffine { on_a, on_b }
        }
    })
}

/// Serializes an instance. Tabulated distances are written as the strict
/// lower triangle.
pub fn to_toml_string(inst: &Instance) -> Result<String> {
    let space = match inst.space() {
        MetricSpace::Tabulated(m) if m.is_symmetric() && (0..m.len()).all(|i| m.get(i, i) == 0.0) => {
            SpaceFile::Tabulated { n: m.len(), lower: Some(m.lower_triangle()), matrix: None }
        }
        MetricSpace::Tabulated(m) => SpaceFile::Tabulated { n: m.len(), lower: None, matrix: Some(m.rows()) },
        MetricSpace::Euclidean { dim } => SpaceFile::Euclidean { dim: *dim },
    };
    let graph = match inst.graph() {
        DirectedGraph::Complete => GraphFile::Complete,
        DirectedGraph::Diagonal => GraphFile::Diagonal,
        DirectedGraph::Edges(set) => GraphFile::Edges { edges: set.iter().map(|&(i, j)| [i, j]).collect() },
        DirectedGraph::CoordEdges(list) => {
            GraphFile::CoordEdges { edges: list.iter().map(|(u, v)| [u.clone(), v.clone()]).collect() }
        }
        DirectedGraph::MinSeparation(r) => GraphFile::MinSeparation { separation: *r },
        DirectedGraph::ProductOrder => GraphFile::ProductOrder,
    };
    let (map, t, s) = match inst.maps() {
        Maps::Single(f) => (Some(map_to_file(f)), None, None),
        Maps::Pair(p) => (None, Some(map_to_file(&p.t)), Some(map_to_file(&p.s))),
    };
    let file = InstanceFile {
        format: FORMAT_TAG.to_string(),
        name: inst.name().to_string(),
        space,
        sets: SetsFile { a: set_to_file(&inst.sets().a), b: set_to_file(&inst.sets().b) },
        graph,
        map,
        t,
        s,
    };
    toml::to_string(&file).map_err(|e| Error::Spec(format!("cannot serialize instance: {e}")))
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Parses an instance document. Syntax errors carry `line:column`; semantic
/// errors carry the offending field path.
pub fn from_toml_str(text: &str) -> Result<Instance> {
    let file: InstanceFile = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (l, c) = line_col(text, span.start);
                format!("line {l}, column {c}")
            }
            None => "document".to_string(),
        };
        Error::Parse { location, message: e.message().trim().to_string() }
    })?;
    if file.format != FORMAT_TAG {
        return Err(field_error("format", format!("expected \"{FORMAT_TAG}\", found \"{}\"", file.format)));
    }
    let space = match file.space {
        SpaceFile::Tabulated { n, lower, matrix } => {
            let m = match (lower, matrix) {
                (Some(lower), None) => {
                    DistanceMatrix::from_lower(&lower).map_err(|e| field_error("space.lower", e.to_string()))?
                }
                (None, Some(rows)) => {
                    DistanceMatrix::from_rows(&rows).map_err(|e| field_error("space.matrix", e.to_string()))?
                }
                _ => return Err(field_error("space", "exactly one of `lower` and `matrix` is required")),
            };
            if m.len() != n {
                return Err(field_error("space.n", format!("n = {n} but the matrix has {} rows", m.len())));
            }
            MetricSpace::Tabulated(m)
        }
        SpaceFile::Euclidean { dim } => MetricSpace::Euclidean { dim },
    };
    let a = set_from_file(file.sets.a, "sets.a")?;
    let b = set_from_file(file.sets.b, "sets.b")?;
    let sets = SubsetPair::new(a, b).map_err(|e| field_error("sets", e.to_string()))?;
    let graph = match file.graph {
        GraphFile::Complete => DirectedGraph::Complete,
        GraphFile::Diagonal => DirectedGraph::Diagonal,
        GraphFile::Edges { edges } => DirectedGraph::Edges(edges.into_iter().map(|[i, j]| (i, j)).collect()),
        GraphFile::CoordEdges { edges } => DirectedGraph::CoordEdges(edges.into_iter().map(|[u, v]| (u, v)).collect()),
        GraphFile::MinSeparation { separation } => DirectedGraph::MinSeparation(separation),
        GraphFile::ProductOrder => DirectedGraph::ProductOrder,
    };
    let maps = match (file.map, file.t, file.s) {
        (Some(f), None, None) => Maps::Single(map_from_file(f, "map")?),
        (None, Some(t), Some(s)) => Maps::Pair(MapPair { t: map_from_file(t, "t")?, s: map_from_file(s, "s")? }),
        _ => return Err(field_error("map", "give either `map`, or both `t` and `s`")),
    };
    Instance::new(file.name, space, sets, graph, maps).map_err(|e| field_error("instance", e.to_string()))
}

pub fn save_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_toml_string(inst)?)?;
    Ok(())
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    from_toml_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_graph;
    use crate::instances::{
        interval_example, random_instance, segments_example, BoundingBox, GraphRule, MapRule, RandomSpec,
    };
    use crate::metric::{validate_metric, Tolerance};
    use crate::operators::validate_cyclic;

    const THREE_POINTS: &str = r#"
format = "bestprox-instance/1"
name = "three"

[space]
kind = "tabulated"
n = 3
lower = [[], [1.0], [2.0, 1.0]]

[sets]
a = [0]
b = [1, 2]

[graph]
rule = "edges"
edges = [[0, 0], [1, 1], [2, 2], [0, 1], [1, 0]]

[map]
rule = "table"
table = [1, 0, 0]
"#;

    #[test]
    fn hand_written_file_loads_and_validates() {
        let inst = from_toml_str(THREE_POINTS).unwrap();
        assert!(validate_metric(inst.space(), Tolerance::DEFAULT).is_valid());
        assert!(validate_graph(inst.graph(), inst.space()).is_valid());
        assert!(validate_cyclic(&inst, inst.single_map().unwrap()).is_valid());
        assert_eq!(inst.d_ab().value, 1.0);
    }

    #[test]
    fn random_instance_round_trips_exactly() {
        let spec = RandomSpec {
            seed: 1,
            n_a: 10,
            n_b: 10,
            bbox: BoundingBox::UNIT,
            map_rule: MapRule::NearestInTarget,
            graph_rule: GraphRule::Random { p: 0.2, seed: 1 },
        };
        let inst = random_instance(&spec).unwrap();
        let text = to_toml_string(&inst).unwrap();
        let back = from_toml_str(&text).unwrap();
        assert_eq!(inst, back);
        assert_eq!(text, to_toml_string(&back).unwrap());
    }

    #[test]
    fn coordinate_instances_round_trip_their_spec() {
        for inst in [interval_example(0.5).unwrap(), segments_example(0.25).unwrap()] {
            let back = from_toml_str(&to_toml_string(&inst).unwrap()).unwrap();
            assert_eq!(inst, back);
        }
    }

    #[test]
    fn truncated_file_reports_a_location() {
        let cut = &THREE_POINTS[..THREE_POINTS.find("[2.0").unwrap() + 2];
        match from_toml_str(cut) {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 8"), "{location}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_section_is_a_parse_error() {
        let text = THREE_POINTS.replace("[map]\nrule = \"table\"\ntable = [1, 0, 0]\n", "");
        assert!(matches!(from_toml_str(&text), Err(Error::Parse { location, .. }) if location == "map"));
    }

    #[test]
    fn size_mismatch_names_the_field() {
        let text = THREE_POINTS.replace("n = 3", "n = 4");
        assert!(matches!(from_toml_str(&text), Err(Error::Parse { location, .. }) if location == "space.n"));
    }
}
