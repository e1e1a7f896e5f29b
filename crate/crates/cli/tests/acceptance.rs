//! End-to-end acceptance suite. Prints one `PASS`/`FAIL` line per criterion
//! and exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};

use bestprox::instances::{
    chain_pair_instance, contracting_strips, interval_example, orbit_instance, random_instance, random_pair_instance,
    segments_example, BoundingBox, ChainSpec, GraphRule, MapRule, OrbitSpec, RandomPairSpec, RandomSpec,
};
use bestprox::{
    contraction_diam_bound, crr_iteration_bound, crr_params_feasible, enumerate_pair_set, enumerate_proximity_set,
    find_proximity_point, is_crr_moh, is_edge_nonexpansive, min_contraction_factor, minimizer_report, pair_diameter,
    picard_orbit, preserved_core, proximity_diameter, two_map_alternating, two_map_diam_bound,
    two_map_hypothesis_factor, ContractionFactor, CrrParams, CyclicMap, DirectedGraph, Instance, Membership,
    MetricSpace, Point, PointSet, SolveConfig, SolveStatus, Tolerance,
};

const TAU: f64 = 1e-9;
const TOL: Tolerance = Tolerance::DEFAULT;
const EPS_LADDER: [f64; 4] = [0.0, 0.01, 0.1, 1.0];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn bin(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_bestprox"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coord(p: &Point) -> f64 {
    p.coords().expect("coordinate point")[0]
}

/// Lines of the section that starts with `header`, up to the next header.
fn section<'a>(report: &'a str, header: &str, nth: usize) -> Vec<&'a str> {
    report
        .split('\n')
        .skip_while({
            let mut seen = 0;
            move |l| {
                if *l == header {
                    seen += 1;
                }
                !(*l == header && seen > nth)
            }
        })
        .skip(1)
        .take_while(|l| !l.starts_with('['))
        .collect()
}

fn value<'a>(lines: &[&'a str], key: &str) -> Option<&'a str> {
    lines.iter().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

// ---- instance suites -------------------------------------------------------

fn orbit_specs() -> impl Iterator<Item = OrbitSpec> {
    (0u64..).map(|seed| OrbitSpec {
        seed,
        orbits: 1 + (seed % 4) as usize,
        depth: 2 + (seed % 5) as usize,
        factor: 0.05 + 0.3 * ((seed * 37 % 100) as f64 / 100.0),
        graph_rule: if seed % 2 == 0 { GraphRule::Complete } else { GraphRule::Random { p: 0.4, seed: seed + 1 } },
    })
}

/// Orbit instances on which a CRR triple is certified, restricted to the
/// part of the graph that the map preserves.
fn crr_suite() -> Vec<(Instance, CrrParams)> {
    let mut out = Vec::new();
    for spec in orbit_specs().take(400) {
        let inst = orbit_instance(&spec).unwrap();
        let f = inst.single_map().unwrap().clone();
        let inst = inst.with_graph(preserved_core(&inst, &f).unwrap()).unwrap();
        if let Some(params) = crr_params_feasible(&inst, &f, 0.05, TOL).unwrap() {
            if is_crr_moh(&inst, &f, params, TOL).unwrap().holds {
                out.push((inst, params));
            }
        }
        if out.len() == 100 {
            break;
        }
    }
    out
}

fn random_specs(count: u64) -> Vec<RandomSpec> {
    let maps = [MapRule::NearestInTarget, MapRule::AffineTowardCentroid(0.5), MapRule::Mirror];
    (0..count)
        .map(|seed| {
            let n = 2 + (seed as usize * 13) % 99;
            let graph_rule = match seed % 4 {
                0 => GraphRule::Complete,
                1 => GraphRule::Diagonal,
                2 => GraphRule::Random { p: 0.2, seed: seed + 500 },
                _ => GraphRule::MinSeparation(0.3),
            };
            RandomSpec { seed, n_a: n, n_b: n, bbox: BoundingBox::UNIT, map_rule: maps[seed as usize % 3], graph_rule }
        })
        .collect()
}

fn pair_specs(count: u64) -> Vec<RandomPairSpec> {
    (0..count)
        .map(|seed| RandomPairSpec {
            seed,
            n_a: 1 + (seed as usize * 7) % 60,
            n_b: 1 + (seed as usize * 11) % 60,
            bbox: BoundingBox::UNIT,
            graph_rule: if seed % 2 == 0 { GraphRule::Complete } else { GraphRule::Random { p: 0.3, seed } },
        })
        .collect()
}

fn chain_specs() -> Vec<ChainSpec> {
    (0u64..60)
        .map(|seed| ChainSpec {
            seed,
            gadgets: 1 + (seed % 6) as usize,
            extra_edges: if seed % 2 == 0 { 0.0 } else { 0.01 },
        })
        .collect()
}

// ---- independent oracle ----------------------------------------------------

/// Raw view of a tabulated instance: the distance table, set flags and an
/// edge predicate evaluated straight from the graph rule.
struct Raw {
    d: Vec<Vec<f64>>,
    in_a: Vec<bool>,
    in_b: Vec<bool>,
    graph: DirectedGraph,
}

impl Raw {
    fn new(inst: &Instance) -> Raw {
        let MetricSpace::Tabulated(m) = inst.space() else { panic!("tabulated only") };
        let n = m.len();
        let flags = |s: &PointSet| {
            let PointSet::Finite(ix) = s else { panic!("finite sets only") };
            let mut v = vec![false; n];
            ix.iter().for_each(|&i| v[i] = true);
            v
        };
        Raw { d: m.rows(), in_a: flags(&inst.sets().a), in_b: flags(&inst.sets().b), graph: inst.graph().clone() }
    }

    fn edge(&self, i: usize, j: usize) -> bool {
        i == j
            || match &self.graph {
                DirectedGraph::Complete => true,
                DirectedGraph::Diagonal => false,
                DirectedGraph::Edges(set) => set.contains(&(i, j)),
                DirectedGraph::MinSeparation(r) => self.d[i][j] >= *r,
                other => panic!("unexpected graph {other:?}"),
            }
    }

    fn dab(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, row) in self.d.iter().enumerate() {
            for (j, &dij) in row.iter().enumerate() {
                if self.in_a[i] && self.in_b[j] {
                    best = best.min(dij);
                }
            }
        }
        best
    }

    fn set(&self, t: &[usize], eps: f64) -> Vec<usize> {
        let dab = self.dab();
        (0..t.len()).filter(|&x| self.edge(x, t[x]) && self.d[x][t[x]] <= dab + eps + TAU).collect()
    }

    fn pairs(&self, t: &[usize], s: &[usize], eps: f64) -> Vec<(usize, usize)> {
        let dab = self.dab();
        let mut out = Vec::new();
        for (x, &tx) in t.iter().enumerate() {
            for (y, &sy) in s.iter().enumerate() {
                if self.in_a[x] && self.in_b[y] && self.edge(x, y) && self.d[tx][sy] <= dab + eps + TAU {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

fn table(f: &CyclicMap) -> &[usize] {
    let CyclicMap::Table(t) = f else { panic!("table map expected") };
    t
}

// ---- criteria --------------------------------------------------------------

fn interval_exact() -> Outcome {
    let (raw, code) = bin(&["demo", "interval", "--grid-step", "1e-3"]);
    ensure(code == 0, || format!("demo exited {code}"))?;
    let report = String::from_utf8(raw).unwrap();
    let dab: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("d(A,B): "))
        .ok_or("no d(A,B) line")?
        .parse()
        .map_err(|e| format!("{e}"))?;
    ensure((dab - 2.0).abs() <= TAU, || format!("d(A,B) = {dab}"))?;
    let set = section(&report, "[enumerate]", 0);
    ensure(value(&set, "epsilon") == Some("0"), || "first enumerate is not at epsilon 0".into())?;
    let members: Vec<&str> = set.iter().filter_map(|l| l.strip_prefix("  ")).collect();
    ensure(members == ["(-1)", "(1)"], || format!("members {members:?}"))?;
    let diam: f64 = value(&set, "diameter").ok_or("no diameter")?.parse().map_err(|e| format!("{e}"))?;
    ensure((diam - 2.0).abs() <= TAU, || format!("diameter {diam}"))?;
    Ok(format!("set {{-1, 1}}, d(A,B) = {dab}, diameter = {diam}"))
}

fn interval_closed_form() -> Outcome {
    let h = 1e-3;
    let inst = interval_example(h).unwrap();
    let f = inst.single_map().unwrap();
    let ps = enumerate_proximity_set(&inst, f, 0.3, Membership::Strict, TOL).unwrap();
    // d(x, Tx) = |3x ∓ 1|/2 on the two pieces; the set is 1 ≤ |x| ≤ 1.2
    let expected: Vec<f64> = inst.universe().iter().map(coord).filter(|x| x.abs() <= 1.2 + h).collect();
    let got: Vec<f64> = ps.members.iter().map(coord).collect();
    ensure(got.len().abs_diff(expected.len()) <= 2, || {
        format!("{} members, closed form {}", got.len(), expected.len())
    })?;
    for x in &got {
        ensure(x.abs() >= 1.0 - TAU && x.abs() <= 1.2 + h, || format!("member {x} outside [1, 1.2]"))?;
    }
    for x in &expected {
        if x.abs() <= 1.2 - h {
            ensure(got.iter().any(|g| (g - x).abs() <= TAU), || format!("grid point {x} missing"))?;
        }
    }
    Ok(format!("{} members = grid points of [-1.2,-1] and [1,1.2]", got.len()))
}

fn segments_pairs() -> Outcome {
    let h = 1e-2;
    let inst = segments_example(h).unwrap();
    let pair = inst.map_pair().unwrap();
    let grid = inst.sets().a.len() * inst.sets().b.len();
    let mut last = 0.0;
    for eps in [1e-9, 0.01, 0.1, 1.0] {
        let pps = enumerate_pair_set(&inst, pair, eps, TOL).unwrap();
        ensure(pps.members.len() == grid, || format!("eps {eps}: {} of {grid} pairs", pps.members.len()))?;
        last = pair_diameter(&inst, &pps).unwrap();
        ensure((last - 2f64.sqrt()).abs() <= 2e-2, || format!("eps {eps}: diameter {last}"))?;
    }
    Ok(format!("{grid} grid pairs at every epsilon, diameter {last}"))
}

fn crr_decay(suite: &[(Instance, CrrParams)]) -> Outcome {
    ensure(suite.len() == 100, || format!("only {} certified instances", suite.len()))?;
    let mut checked = 0;
    for (inst, params) in suite {
        let f = inst.single_map().unwrap();
        let k = params.k();
        for x0 in inst.universe() {
            let trace = picard_orbit(inst, f, x0, 25).unwrap();
            if !inst.graph().is_complete() && !bestprox::contains_edge(inst, x0, &trace.points[1]).unwrap() {
                continue;
            }
            let r0 = trace.residuals[0];
            for (n, &r) in trace.residuals.iter().enumerate() {
                checked += 1;
                ensure(r <= k.powi(n as i32) * r0 + TAU, || {
                    format!("{}: start {x0}, step {n}: residual {r} > k^n r0 = {}", inst.name(), k.powi(n as i32) * r0)
                })?;
            }
        }
    }
    Ok(format!("{} instances, {checked} orbit steps, 0 violations", suite.len()))
}

fn crr_iterations(suite: &[(Instance, CrrParams)]) -> Outcome {
    let mut runs = 0;
    for (inst, params) in suite {
        let f = inst.single_map().unwrap();
        let dab = inst.d_ab().value;
        for eps in [0.01, 0.1] {
            let cfg = SolveConfig::new(eps, 1000, TOL).unwrap();
            for x0 in inst.universe() {
                let res = find_proximity_point(inst, f, x0, &cfg).unwrap();
                if res.status == SolveStatus::Ineligible {
                    continue;
                }
                ensure(res.status == SolveStatus::Found, || format!("{}: start {x0} exhausted", inst.name()))?;
                let d0 = res.trace.residuals[0] + dab;
                let bound = crr_iteration_bound(d0, params.k(), dab, eps, TOL).unwrap();
                runs += 1;
                ensure(res.iterations <= bound, || {
                    format!("{}: start {x0}: {} iterations > bound {bound}", inst.name(), res.iterations)
                })?;
            }
        }
    }
    Ok(format!("{runs} solver runs within the a-priori bound"))
}

/// Orbit instances on the complete graph, where the map is a contraction.
fn contraction_suite() -> Vec<(Instance, f64)> {
    orbit_specs()
        .filter(|s| s.graph_rule == GraphRule::Complete)
        .take(100)
        .filter_map(|spec| {
            let inst = orbit_instance(&spec).unwrap();
            match min_contraction_factor(&inst, inst.single_map().unwrap(), TOL).unwrap() {
                ContractionFactor::Contractive { alpha, .. } => Some((inst, alpha)),
                ContractionFactor::NotContractive { .. } => None,
            }
        })
        .collect()
}

fn one_map_diameter() -> Outcome {
    let suite = contraction_suite();
    ensure(suite.len() == 100, || format!("only {} contraction instances", suite.len()))?;
    let mut worst_slack = f64::INFINITY;
    for (inst, alpha) in &suite {
        let f = inst.single_map().unwrap();
        for eps in [0.01, 0.1, 1.0] {
            let ps = enumerate_proximity_set(inst, f, eps, Membership::Strict, TOL).unwrap();
            if ps.members.is_empty() {
                continue;
            }
            let diam = proximity_diameter(inst, &ps).unwrap();
            let bound = contraction_diam_bound(*alpha, eps, inst.d_ab().value).unwrap();
            worst_slack = worst_slack.min(bound - diam);
            ensure(diam <= bound + TAU, || format!("{} eps {eps}: diameter {diam} > bound {bound}", inst.name()))?;
        }
    }
    Ok(format!("{} instances x 3 epsilons, least slack {worst_slack:.3e}", suite.len()))
}

fn two_map_diameter() -> Outcome {
    let mut qualifying = 0;
    let mut scanned = 0;
    for spec in chain_specs() {
        let inst = chain_pair_instance(&spec).unwrap();
        let pair = inst.map_pair().unwrap();
        for eps in [0.01, 0.1, 1.0] {
            let pps = enumerate_pair_set(&inst, pair, eps, TOL).unwrap();
            scanned += 1;
            if pps.members.is_empty() {
                continue;
            }
            let k = two_map_hypothesis_factor(&inst, pair, &pps, TOL).unwrap();
            if k >= 1.0 {
                continue;
            }
            qualifying += 1;
            let diam = pair_diameter(&inst, &pps).unwrap();
            let bound = two_map_diam_bound(k, eps, inst.d_ab().value).unwrap();
            ensure(diam <= bound + TAU, || format!("{} eps {eps}: diameter {diam} > bound {bound}", inst.name()))?;
        }
    }
    ensure(qualifying >= 50, || format!("only {qualifying} cases verify the hypothesis"))?;
    Ok(format!("{qualifying} of {scanned} cases verify the hypothesis, 0 violations"))
}

fn oracle_equivalence() -> Outcome {
    let mut witnesses = 0;
    for spec in random_specs(100) {
        let inst = random_instance(&spec).unwrap();
        ensure(inst.universe().len() <= 200, || "instance too large".into())?;
        let raw = Raw::new(&inst);
        let f = inst.single_map().unwrap();
        for eps in [0.01, 0.1] {
            let members = raw.set(table(f), eps);
            let lib: Vec<usize> = enumerate_proximity_set(&inst, f, eps, Membership::Strict, TOL)
                .unwrap()
                .members
                .iter()
                .map(|p| p.index().unwrap())
                .collect();
            ensure(lib == members, || format!("seed {} eps {eps}: set differs from oracle", spec.seed))?;
            let cfg = SolveConfig::new(eps, 200, TOL).unwrap();
            for x0 in inst.universe() {
                let res = find_proximity_point(&inst, f, x0, &cfg).unwrap();
                if let Some(w) = res.witness {
                    witnesses += 1;
                    ensure(members.contains(&w.index().unwrap()), || {
                        format!("seed {} witness {w} not in oracle set", spec.seed)
                    })?;
                }
            }
        }
    }
    let mut pair_sets = 0;
    for spec in pair_specs(100) {
        let inst = random_pair_instance(&spec).unwrap();
        let raw = Raw::new(&inst);
        let pair = inst.map_pair().unwrap();
        for eps in [0.0, 0.05, 0.5] {
            let lib: Vec<(usize, usize)> = enumerate_pair_set(&inst, pair, eps, TOL)
                .unwrap()
                .members
                .iter()
                .map(|(x, y)| (x.index().unwrap(), y.index().unwrap()))
                .collect();
            pair_sets += 1;
            ensure(lib == raw.pairs(table(&pair.t), table(&pair.s), eps), || {
                format!("pair seed {} eps {eps}: pair set differs from oracle", spec.seed)
            })?;
        }
    }
    Ok(format!("{witnesses} witnesses in oracle sets, {pair_sets} pair sets identical"))
}

fn is_subset<T: PartialEq>(small: &[T], large: &[T]) -> bool {
    small.iter().all(|p| large.contains(p))
}

fn monotonicity(crr: &[(Instance, CrrParams)]) -> Outcome {
    let mut singles: Vec<Instance> = random_specs(100).iter().map(|s| random_instance(s).unwrap()).collect();
    singles.extend(crr.iter().map(|(i, _)| i.clone()));
    singles.extend(contraction_suite().into_iter().map(|(i, _)| i));
    singles.push(interval_example(0.01).unwrap());
    let mut pairs: Vec<Instance> = pair_specs(100).iter().map(|s| random_pair_instance(s).unwrap()).collect();
    pairs.extend(chain_specs().iter().map(|s| chain_pair_instance(s).unwrap()));
    pairs.push(segments_example(0.05).unwrap());
    pairs.extend((0..20).map(|seed| contracting_strips(seed, 0.05).unwrap()));

    let mut comparisons = 0;
    for inst in &singles {
        let f = inst.single_map().unwrap();
        for mode in [Membership::Strict, Membership::Vacuous] {
            let sets: Vec<Vec<Point>> =
                EPS_LADDER.iter().map(|&e| enumerate_proximity_set(inst, f, e, mode, TOL).unwrap().members).collect();
            for w in sets.windows(2) {
                comparisons += 1;
                ensure(is_subset(&w[0], &w[1]), || format!("{} ({mode}): set not monotone", inst.name()))?;
            }
        }
    }
    for inst in &pairs {
        let pair = inst.map_pair().unwrap();
        let sets: Vec<Vec<(Point, Point)>> =
            EPS_LADDER.iter().map(|&e| enumerate_pair_set(inst, pair, e, TOL).unwrap().members).collect();
        for w in sets.windows(2) {
            comparisons += 1;
            ensure(is_subset(&w[0], &w[1]), || format!("{}: pair set not monotone", inst.name()))?;
        }
    }
    Ok(format!("{} instances, {comparisons} nested comparisons", singles.len() + pairs.len()))
}

fn minimizers() -> Outcome {
    let mut seen = 0;
    let mut positive = 0;
    for seed in 0u64..2000 {
        if seen == 50 {
            break;
        }
        let map_rule =
            [MapRule::Mirror, MapRule::NearestInTarget, MapRule::AffineTowardCentroid(0.3)][seed as usize % 3];
        let graph_rule = if seed % 2 == 0 { GraphRule::Complete } else { GraphRule::Random { p: 0.3, seed } };
        let n = 2 + seed as usize % 30;
        let inst = random_instance(&RandomSpec { seed, n_a: n, n_b: n, bbox: BoundingBox::UNIT, map_rule, graph_rule })
            .unwrap();
        let f = inst.single_map().unwrap();
        if !is_edge_nonexpansive(&inst, f, TOL).unwrap().holds {
            continue;
        }
        // instances without an eligible point have nothing to minimize
        let Ok(report) = minimizer_report(&inst, f, TOL) else { continue };
        seen += 1;
        let r = report.residual;
        ensure(r >= -TAU, || format!("{}: residual {r}", inst.name()))?;
        if r > TAU {
            positive += 1;
        }
        let ps = enumerate_proximity_set(&inst, f, (r + TAU).max(0.0), Membership::Strict, TOL).unwrap();
        ensure(!ps.members.is_empty(), || format!("{}: empty set at epsilon {}", inst.name(), r + TAU))?;
    }
    ensure(seen == 50, || format!("only {seen} nonexpansive instances with an eligible point"))?;
    Ok(format!("50 nonexpansive instances ({positive} with positive residual), all sets nonempty"))
}

/// Runs the alternating scheme and rechecks every step bound from the trace.
fn alternating_run(inst: &Instance, x0: Point, y0: Point, alpha: f64, gamma: f64) -> Result<usize, String> {
    let pair = inst.map_pair().unwrap();
    let cfg = SolveConfig::new(1e-6, 200, TOL).unwrap();
    let run =
        two_map_alternating(inst, pair, &x0, &y0, alpha, gamma, &cfg).map_err(|e| format!("{}: {e}", inst.name()))?;
    ensure(run.result.status == SolveStatus::Found, || format!("{}: {}", inst.name(), run.result.status))?;
    ensure(run.bound_violations() == 0, || format!("{}: {} bound violations", inst.name(), run.bound_violations()))?;
    let dab = inst.d_ab().value;
    let d0 = inst.space().distance(&x0, &y0).unwrap();
    let points = &run.result.trace.points;
    for (m, (x, y)) in points.iter().enumerate().skip(1) {
        let d = inst.space().distance(x, y).unwrap();
        let am = alpha.powi(m as i32);
        ensure(d <= am * d0 + (1.0 - am) * dab + TAU, || format!("{}: step {m}: distance {d}", inst.name()))?;
    }
    Ok(points.len() - 1)
}

fn alternating() -> Outcome {
    let seg = segments_example(0.01).unwrap();
    let mut steps = alternating_run(&seg, Point::Coords(vec![0.0, 0.0]), Point::Coords(vec![1.0, 1.0]), 0.0, 1.0)?;
    let mut runs = 1;
    for seed in 0..20 {
        let inst = contracting_strips(seed, 0.05).unwrap();
        let a = inst.sets().a.points();
        let b = inst.sets().b.points();
        for (i, j) in [(0, b.len() - 1), (a.len() - 1, 0), (a.len() / 2, b.len() / 3)] {
            steps += alternating_run(&inst, a[i].clone(), b[j].clone(), 0.5, 0.5)?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, {steps} checked steps, 0 violations"))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let (r1, r2, c1, o1) = (file("r1.toml"), file("r2.toml"), file("c1.toml"), file("o1.toml"));
    let commands: Vec<Vec<String>> = vec![
        vec![
            "generate".into(),
            "--kind".into(),
            "random".into(),
            "--seed".into(),
            "42".into(),
            "--graph".into(),
            "random:0.3".into(),
            "-o".into(),
            r1.clone(),
        ],
        vec![
            "generate".into(),
            "--kind".into(),
            "random".into(),
            "--seed".into(),
            "42".into(),
            "--graph".into(),
            "random:0.3".into(),
            "-o".into(),
            r2.clone(),
        ],
        vec![
            "generate".into(),
            "--kind".into(),
            "chain".into(),
            "--seed".into(),
            "7".into(),
            "--extra-edges".into(),
            "0.01".into(),
            "-o".into(),
            c1.clone(),
        ],
        vec!["generate".into(), "--kind".into(), "orbit".into(), "--seed".into(), "3".into(), "-o".into(), o1.clone()],
    ];
    for args in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        ensure(bin(&args).1 == 0, || format!("{args:?} failed"))?;
    }
    let bytes = |p: &str| std::fs::read(p).unwrap();
    ensure(bytes(&r1) == bytes(&r2), || "same seed gave different files".into())?;
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", &r1],
        vec!["classify", &r1, "--alpha", "0.5"],
        vec!["classify", &o1],
        vec!["solve", &o1, "--start", "3", "--epsilon", "0.001"],
        vec!["solve", &c1, "--mode", "parallel", "--start", "0", "--start-y", "3"],
        vec!["enumerate", &r1, "--epsilon", "0.1", "--mode", "vacuous"],
        vec!["enumerate", &c1, "--epsilon", "0.5"],
        vec!["demo", "segments"],
        vec!["demo", "ellipse"],
    ];
    for args in &runs {
        let first = bin(args);
        let second = bin(args);
        ensure(first == second, || format!("{args:?} differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len() + runs.len()))
}

fn main() -> ExitCode {
    let crr = crr_suite();
    let criteria: Vec<Criterion> = vec![
        ("interval example at epsilon 0", Box::new(interval_exact)),
        ("interval example at epsilon 0.3", Box::new(interval_closed_form)),
        ("segments pair set and diameter", Box::new(segments_pairs)),
        ("CRR residual decay", Box::new(|| crr_decay(&crr))),
        ("a-priori iteration bound", Box::new(|| crr_iterations(&crr))),
        ("one-map diameter bound", Box::new(one_map_diameter)),
        ("two-map diameter bound", Box::new(two_map_diameter)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("monotonicity in epsilon", Box::new(|| monotonicity(&crr))),
        ("minimizer residual and nonempty set", Box::new(minimizers)),
        ("alternating iteration bound", Box::new(alternating)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
