//! Plain-text reports behind the `bestprox` command line tool.
//!
//! A report is a list of `key: value` lines grouped under `[section]`
//! headers; list values (traces, set members) follow their key as indented
//! lines. Numbers are printed in shortest round-trip form and nothing
//! depends on the clock or the environment, so identical invocations give
//! byte-identical reports.
//!
//! Exit codes: [`EXIT_OK`] on success, [`EXIT_NEGATIVE`] for a negative
//! result or a domain error, [`EXIT_USAGE`] for bad flags, unreadable files
//! and parse errors.

use std::fmt::{Display, Write as _};
use std::path::Path;

use crate::analysis::{
    contraction_diam_bound, enumerate_pair_set, enumerate_proximity_set, pair_diameter, proximity_diameter,
    two_map_diam_bound, two_map_hypothesis_factor, Membership,
};
use crate::error::Error;
use crate::graph::{preserves_edges, validate_graph};
use crate::instance::{Instance, Maps};
use crate::instances::{
    chain_pair_instance, ellipse_example, interval_example, load_instance, orbit_instance, random_instance,
    random_pair_instance, save_instance, segments_example, BoundingBox, ChainSpec, GraphRule, MapRule, OrbitSpec,
    RandomPairSpec, RandomSpec,
};
use crate::metric::{validate_metric, MetricSpace, Point, Tolerance};
use crate::operators::{
    crr_params_feasible, is_edge_nonexpansive, is_g_contraction, min_alternating_factor, min_contraction_factor,
    validate_cyclic, validate_pair, ContractionFactor, CrrParams, CyclicMap,
};
use crate::solver::{
    crr_iteration_bound, find_proximity_point, two_map_alternating, two_map_parallel, IterationTrace, SolveConfig,
    SolveStatus, TracePoint,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Output of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

enum Failure {
    Usage(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) | Error::Spec(_) => Failure::Usage(e.to_string()),
            _ => Failure::Negative(e.to_string()),
        }
    }
}

type Step<T> = std::result::Result<T, Failure>;

struct Out {
    text: String,
    ok: bool,
}

impl Out {
    fn new() -> Self {
        Out { text: String::new(), ok: true }
    }

    fn kv(&mut self, key: &str, value: impl Display) {
        let _ = writeln!(self.text, "{key}: {value}");
    }

    fn section(&mut self, name: &str) {
        let _ = writeln!(self.text, "[{name}]");
    }

    fn item(&mut self, value: impl Display) {
        let _ = writeln!(self.text, "  {value}");
    }

    fn finish(self, result: Step<()>) -> RunReport {
        match result {
            Ok(()) => RunReport {
                stdout: self.text,
                stderr: String::new(),
                exit_code: if self.ok { EXIT_OK } else { EXIT_NEGATIVE },
            },
            Err(Failure::Negative(msg)) => {
                RunReport { stdout: self.text, stderr: format!("error: {msg}\n"), exit_code: EXIT_NEGATIVE }
            }
            Err(Failure::Usage(msg)) => {
                RunReport { stdout: self.text, stderr: format!("error: {msg}\n"), exit_code: EXIT_USAGE }
            }
        }
    }
}

fn run(body: impl FnOnce(&mut Out) -> Step<()>) -> RunReport {
    let mut out = Out::new();
    let result = body(&mut out);
    out.finish(result)
}

fn load(path: &Path) -> Step<Instance> {
    load_instance(path).map_err(|e| match e {
        Error::Io(io) => Failure::Usage(format!("cannot read {}: {io}", path.display())),
        other => Failure::Usage(other.to_string()),
    })
}

fn summary(out: &mut Out, inst: &Instance, tol: Tolerance) {
    out.kv("instance", inst.name());
    match inst.space() {
        MetricSpace::Tabulated(m) => out.kv("space", format!("tabulated n={}", m.len())),
        MetricSpace::Euclidean { dim } => out.kv("space", format!("euclidean dim={dim}")),
    }
    out.kv("points", format!("{} (A: {}, B: {})", inst.universe().len(), inst.sets().a.len(), inst.sets().b.len()));
    out.kv("graph", inst.graph().rule_name());
    out.kv("maps", if inst.single_map().is_some() { "single" } else { "pair" });
    let dab = inst.d_ab();
    out.kv("d(A,B)", dab.value);
    if dab.discretization > 0.0 {
        out.kv("d(A,B)-discretization", dab.discretization);
    }
    out.kv("tolerance", tol.value());
}

/// Parses a start point: an index (`3` or `#3`) for tabulated instances,
/// comma-separated coordinates (`-3` or `0,0.5`, parentheses optional) for
/// coordinate instances.
pub fn parse_point(inst: &Instance, text: &str) -> Result<Point, String> {
    let t = text.trim();
    let p = match inst.space() {
        MetricSpace::Tabulated(_) => {
            let digits = t.strip_prefix('#').unwrap_or(t);
            Point::Index(digits.parse().map_err(|_| format!("`{text}` is not a point index"))?)
        }
        MetricSpace::Euclidean { dim } => {
            let inner = t.trim_start_matches('(').trim_end_matches(')');
            let coords = inner
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| format!("`{text}` is not a coordinate list"))?;
            if coords.len() != *dim {
                return Err(format!("`{text}` has {} coordinates, expected {dim}", coords.len()));
            }
            Point::Coords(coords)
        }
    };
    if !inst.contains_point(&p) {
        return Err(format!("start {p} is not in A∪B"));
    }
    Ok(p)
}

fn trace_lines<P: TracePoint>(out: &mut Out, trace: &IterationTrace<P>) {
    out.kv("trace", format!("{} rows (n point residual)", trace.points.len()));
    for (n, p) in trace.points.iter().enumerate() {
        match trace.residuals.get(n) {
            Some(r) => out.item(format!("{n} {} {r}", p.label())),
            None => out.item(format!("{n} {} -", p.label())),
        }
    }
}

// ---- validate ----

pub fn cmd_validate(path: &Path, tol: Tolerance) -> RunReport {
    run(|out| {
        out.kv("command", "validate");
        out.kv("file", path.display());
        let inst = load(path)?;
        summary(out, &inst, tol);
        validate_section(out, &inst, tol);
        Ok(())
    })
}

fn validate_section(out: &mut Out, inst: &Instance, tol: Tolerance) {
    out.section("validate");
    let checks = [
        ("metric", validate_metric(inst.space(), tol)),
        ("graph", validate_graph(inst.graph(), inst.space())),
        (
            "maps",
            match inst.maps() {
                Maps::Single(f) => validate_cyclic(inst, f),
                Maps::Pair(p) => validate_pair(inst, p),
            },
        ),
    ];
    let mut pass = true;
    for (name, report) in &checks {
        if report.is_valid() {
            out.kv(name, "ok");
        } else {
            pass = false;
            out.kv(name, format!("fail ({} violations)", report.violations.len()));
            for v in &report.violations {
                out.item(v);
            }
        }
    }
    out.kv("result", if pass { "pass" } else { "fail" });
    out.ok &= pass;
}

// ---- classify ----

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Also test the G-contraction property at this α.
    pub alpha: Option<f64>,
    /// Grid step for the CRR constant search.
    pub crr_grid: f64,
    pub tol: Tolerance,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { alpha: None, crr_grid: 0.05, tol: Tolerance::DEFAULT }
    }
}

pub fn cmd_classify(path: &Path, opts: &ClassifyOptions) -> RunReport {
    run(|out| {
        out.kv("command", "classify");
        out.kv("file", path.display());
        let inst = load(path)?;
        summary(out, &inst, opts.tol);
        classify_section(out, &inst, opts)?;
        Ok(())
    })
}

fn classify_single(out: &mut Out, inst: &Instance, f: &CyclicMap, opts: &ClassifyOptions) -> Step<Option<CrrParams>> {
    let preservation = preserves_edges(inst, f)?;
    out.kv("edge-preserving", preservation.holds);
    let mut crr = None;
    if let Some((x, y)) = &preservation.counterexample {
        out.kv("unpreserved-edge", format!("{x} -> {y}"));
        out.kv("contraction", "n/a");
        out.kv("crr", "n/a");
    } else {
        match min_contraction_factor(inst, f, opts.tol)? {
            ContractionFactor::Contractive { alpha, worst } => {
                out.kv("contraction", "contractive");
                out.kv("alpha-min", alpha);
                if let Some((x, y)) = worst {
                    out.kv("alpha-min-edge", format!("{x} -> {y}"));
                }
            }
            ContractionFactor::NotContractive { ratio, edge: (x, y) } => {
                out.kv("contraction", "not-contractive");
                out.kv("ratio", ratio);
                out.kv("ratio-edge", format!("{x} -> {y}"));
            }
        }
        out.kv("crr-grid", opts.crr_grid);
        crr = crr_params_feasible(inst, f, opts.crr_grid, opts.tol)?;
        match crr {
            Some(p) => out.kv("crr", crr_label(&p)),
            None => out.kv("crr", "none"),
        }
    }
    if let Some(alpha) = opts.alpha {
        let v = is_g_contraction(inst, f, alpha, opts.tol)?;
        out.kv(&format!("g-contraction(alpha={alpha})"), v.holds);
        if let Some(w) = v.worst {
            out.kv("g-contraction-worst-excess", w.excess);
        }
    }
    out.kv("nonexpansive", is_edge_nonexpansive(inst, f, opts.tol)?.holds);
    Ok(crr)
}

fn crr_label(p: &CrrParams) -> String {
    format!("alpha={} beta={} gamma={} k={}", p.alpha(), p.beta(), p.gamma(), p.k())
}

fn classify_section(out: &mut Out, inst: &Instance, opts: &ClassifyOptions) -> Step<()> {
    out.section("classify");
    match inst.maps() {
        Maps::Single(f) => {
            classify_single(out, inst, f, opts)?;
        }
        Maps::Pair(pair) => {
            match min_alternating_factor(inst, pair, opts.tol)? {
                Some(a) => out.kv("alternating-factor", format!("alpha={a} gamma={}", 1.0 - a)),
                None => out.kv("alternating-factor", "none"),
            }
            out.kv("t-nonexpansive", is_edge_nonexpansive(inst, &pair.t, opts.tol)?.holds);
            out.kv("s-nonexpansive", is_edge_nonexpansive(inst, &pair.s, opts.tol)?.holds);
        }
    }
    Ok(())
}

// ---- solve ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Single,
    Parallel,
    Alternating,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub start: Option<String>,
    pub start_y: Option<String>,
    pub epsilon: f64,
    pub max_iter: usize,
    pub mode: SolveMode,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub crr_grid: f64,
    pub tol: Tolerance,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            start: None,
            start_y: None,
            epsilon: 0.01,
            max_iter: 1000,
            mode: SolveMode::Single,
            alpha: None,
            gamma: None,
            crr_grid: 0.05,
            tol: Tolerance::DEFAULT,
        }
    }
}

pub fn cmd_solve(path: &Path, opts: &SolveOptions) -> RunReport {
    run(|out| {
        out.kv("command", "solve");
        out.kv("file", path.display());
        let inst = load(path)?;
        summary(out, &inst, opts.tol);
        solve_section(out, &inst, opts)
    })
}

fn start_points(inst: &Instance, opts: &SolveOptions) -> Step<(Point, Point)> {
    let pick = |flag: &Option<String>, fallback: Point| -> Step<Point> {
        match flag {
            Some(text) => parse_point(inst, text).map_err(Failure::Usage),
            None => Ok(fallback),
        }
    };
    let a0 = inst.sets().a.points().swap_remove(0);
    let b0 = inst.sets().b.points().swap_remove(0);
    Ok((pick(&opts.start, a0)?, pick(&opts.start_y, b0)?))
}

fn solve_section(out: &mut Out, inst: &Instance, opts: &SolveOptions) -> Step<()> {
    out.section("solve");
    let cfg = SolveConfig::new(opts.epsilon, opts.max_iter, opts.tol).map_err(|e| Failure::Usage(e.to_string()))?;
    let (x0, y0) = start_points(inst, opts)?;
    match (opts.mode, inst.maps()) {
        (SolveMode::Single, Maps::Single(f)) => {
            out.kv("mode", "single");
            out.kv("start", &x0);
            out.kv("epsilon", cfg.epsilon);
            out.kv("max-iter", cfg.max_iter);
            let r = find_proximity_point(inst, f, &x0, &cfg)?;
            out.kv("status", r.status);
            out.kv("iterations", r.iterations);
            if let Some(w) = &r.witness {
                out.kv("witness", w);
                out.kv("witness-residual", r.trace.residuals[r.iterations]);
            }
            if r.status != SolveStatus::Ineligible && preserves_edges(inst, f)?.holds {
                if let Some(p) = crr_params_feasible(inst, f, opts.crr_grid, opts.tol)? {
                    let d0 = inst.dist(&x0, &f.apply(inst, &x0)?);
                    let bound = crr_iteration_bound(d0, p.k(), inst.d_ab().value, cfg.epsilon, opts.tol)?;
                    out.kv("crr", crr_label(&p));
                    out.kv("crr-bound", bound);
                    if r.status == SolveStatus::Found {
                        out.kv("within-bound", r.iterations <= bound);
                    }
                }
            }
            trace_lines(out, &r.trace);
            out.ok &= r.status == SolveStatus::Found;
        }
        (SolveMode::Parallel, Maps::Pair(pair)) => {
            out.kv("mode", "parallel");
            out.kv("start", format!("{x0} | {y0}"));
            out.kv("epsilon", cfg.epsilon);
            out.kv("max-iter", cfg.max_iter);
            let r = two_map_parallel(inst, pair, &x0, &y0, &cfg)?;
            out.kv("status", r.status);
            out.kv("iterations", r.iterations);
            if let Some((x, y)) = &r.witness {
                out.kv("witness", format!("{x} | {y}"));
                out.kv("witness-residual", r.trace.residuals[r.iterations]);
            }
            trace_lines(out, &r.trace);
            out.ok &= r.status == SolveStatus::Found;
        }
        (SolveMode::Alternating, Maps::Pair(pair)) => {
            out.kv("mode", "alternating");
            out.kv("start", format!("{x0} | {y0}"));
            let alpha = match opts.alpha {
                Some(a) => a,
                None => min_alternating_factor(inst, pair, opts.tol)?
                    .ok_or_else(|| Failure::Negative("no alternating factor below 1".into()))?,
            };
            let gamma = opts.gamma.unwrap_or(1.0 - alpha);
            out.kv("alpha", alpha);
            out.kv("gamma", gamma);
            out.kv("epsilon", cfg.epsilon);
            out.kv("max-iter", cfg.max_iter);
            let r = match two_map_alternating(inst, pair, &x0, &y0, alpha, gamma, &cfg) {
                Ok(r) => r,
                Err(e @ Error::Hypothesis { .. }) => {
                    out.kv("status", "hypothesis-violated");
                    return Err(Failure::Negative(e.to_string()));
                }
                Err(e) => return Err(e.into()),
            };
            out.kv("status", r.result.status);
            out.kv("iterations", r.result.iterations);
            if let Some((x, y)) = &r.result.witness {
                out.kv("witness", format!("{x} | {y}"));
            }
            out.kv("bound-checks", r.bounds.len());
            out.kv("bound-violations", r.bound_violations());
            trace_lines(out, &r.result.trace);
            out.ok &= r.result.status == SolveStatus::Found && r.bound_violations() == 0;
        }
        (mode, _) => {
            return Err(Failure::Usage(format!(
                "mode {} does not match the instance's {} map",
                match mode {
                    SolveMode::Single => "single",
                    SolveMode::Parallel => "parallel",
                    SolveMode::Alternating => "alternating",
                },
                if inst.single_map().is_some() { "single" } else { "pair" }
            )))
        }
    }
    Ok(())
}

// ---- enumerate ----

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerateOptions {
    pub epsilon: f64,
    pub mode: Membership,
    pub require_nonempty: bool,
    pub tol: Tolerance,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { epsilon: 0.0, mode: Membership::Strict, require_nonempty: false, tol: Tolerance::DEFAULT }
    }
}

pub fn cmd_enumerate(path: &Path, opts: &EnumerateOptions) -> RunReport {
    run(|out| {
        out.kv("command", "enumerate");
        out.kv("file", path.display());
        let inst = load(path)?;
        summary(out, &inst, opts.tol);
        let size = enumerate_section(out, &inst, opts, true)?;
        if opts.require_nonempty && size == 0 {
            out.ok = false;
        }
        Ok(())
    })
}

/// Writes the set, its size and diameter, and the matching bound when its
/// hypotheses hold. Returns the set size.
fn enumerate_section(out: &mut Out, inst: &Instance, opts: &EnumerateOptions, list: bool) -> Step<usize> {
    out.section("enumerate");
    out.kv("epsilon", opts.epsilon);
    let dab = inst.d_ab().value;
    match inst.maps() {
        Maps::Single(f) => {
            out.kv("mode", opts.mode);
            let ps = enumerate_proximity_set(inst, f, opts.epsilon, opts.mode, opts.tol)?;
            out.kv("size", ps.members.len());
            if !ps.members.is_empty() {
                out.kv("diameter", proximity_diameter(inst, &ps)?);
                // the bound needs pairwise adjacent members
                let alpha = if inst.graph().is_complete() && opts.mode == Membership::Strict {
                    match min_contraction_factor(inst, f, opts.tol) {
                        Ok(ContractionFactor::Contractive { alpha, .. }) => Some(alpha),
                        _ => None,
                    }
                } else {
                    None
                };
                match alpha {
                    Some(a) => {
                        out.kv("bound", contraction_diam_bound(a, opts.epsilon, dab)?);
                        out.kv("bound-alpha", a);
                    }
                    None => out.kv("bound", "n/a"),
                }
            }
            if list {
                out.kv("members", ps.members.len());
                for m in &ps.members {
                    out.item(m);
                }
            }
            Ok(ps.members.len())
        }
        Maps::Pair(pair) => {
            let pps = enumerate_pair_set(inst, pair, opts.epsilon, opts.tol)?;
            out.kv("size", pps.members.len());
            if !pps.members.is_empty() {
                out.kv("pair-diameter", pair_diameter(inst, &pps)?);
                let k = two_map_hypothesis_factor(inst, pair, &pps, opts.tol)?;
                if k < 1.0 {
                    out.kv("bound", two_map_diam_bound(k, opts.epsilon, dab)?);
                    out.kv("bound-k", k);
                } else {
                    out.kv("bound", "n/a");
                }
            }
            if list {
                out.kv("members", pps.members.len());
                for (x, y) in &pps.members {
                    out.item(format!("{x} | {y}"));
                }
            }
            Ok(pps.members.len())
        }
    }
}

// ---- demo ----

/// Builds one of the worked examples (`interval`, `ellipse`, `segments`) and
/// runs validation, classification, a solve and enumerations on it,
/// followed by a check of the example's published values.
pub fn cmd_demo(name: &str, grid_step: Option<f64>, tol: Tolerance) -> RunReport {
    run(|out| {
        out.kv("command", "demo");
        out.kv("demo", name);
        let (inst, step) = match name {
            "interval" => {
                let h = grid_step.unwrap_or(1e-3);
                (interval_example(h), h)
            }
            "ellipse" => {
                let h = grid_step.unwrap_or(0.05);
                (ellipse_example(h), h)
            }
            "segments" => {
                let h = grid_step.unwrap_or(0.01);
                (segments_example(h), h)
            }
            other => {
                return Err(Failure::Usage(format!("unknown demo `{other}` (expected interval, ellipse or segments)")))
            }
        };
        let inst = inst?;
        out.kv("grid-step", step);
        summary(out, &inst, tol);
        validate_section(out, &inst, tol);
        classify_section(out, &inst, &ClassifyOptions { tol, ..ClassifyOptions::default() })?;
        match name {
            "interval" => demo_interval(out, &inst, tol),
            "ellipse" => demo_ellipse(out, &inst, tol),
            _ => demo_segments(out, &inst, step, tol),
        }
    })
}

fn claim(out: &mut Out, text: &str, holds: bool) {
    out.kv(&format!("check {text}"), if holds { "pass" } else { "fail" });
    out.ok &= holds;
}

fn demo_interval(out: &mut Out, inst: &Instance, tol: Tolerance) -> Step<()> {
    let solve = SolveOptions { start: Some("-3".into()), epsilon: 0.3, max_iter: 100, tol, ..SolveOptions::default() };
    solve_section(out, inst, &solve)?;
    let f = inst.single_map().expect("single map");
    let exact = EnumerateOptions { tol, ..EnumerateOptions::default() };
    enumerate_section(out, inst, &exact, true)?;
    let wide = EnumerateOptions { epsilon: 0.3, ..exact };
    enumerate_section(out, inst, &wide, false)?;

    out.section("reproduction");
    let ps = enumerate_proximity_set(inst, f, 0.0, Membership::Strict, tol)?;
    let expected = [Point::Coords(vec![-1.0]), Point::Coords(vec![1.0])];
    claim(out, "set at epsilon 0 is {-1, 1}", ps.members == expected);
    claim(out, "d(A,B) = 2", (inst.d_ab().value - 2.0).abs() <= tol.value());
    let diam = proximity_diameter(inst, &ps).unwrap_or(f64::NAN);
    claim(out, "diameter at epsilon 0 = 2", (diam - 2.0).abs() <= tol.value());
    Ok(())
}

fn demo_ellipse(out: &mut Out, inst: &Instance, tol: Tolerance) -> Step<()> {
    let solve =
        SolveOptions { start: Some("0,0.5".into()), epsilon: 0.01, max_iter: 100, tol, ..SolveOptions::default() };
    solve_section(out, inst, &solve)?;
    let opts = EnumerateOptions { epsilon: 0.01, tol, ..EnumerateOptions::default() };
    enumerate_section(out, inst, &opts, false)?;

    out.section("reproduction");
    claim(out, "d(A,B) = 0", inst.d_ab().value.abs() <= tol.value());
    let ps = enumerate_proximity_set(inst, inst.single_map().expect("single map"), 0.01, Membership::Strict, tol)?;
    let on_axis = ps.members.iter().filter(|p| p.coords().is_some_and(|c| c[0] == 0.0)).count();
    claim(out, "set at epsilon 0.01 contains the points with x = 0", on_axis > 0);
    Ok(())
}

fn demo_segments(out: &mut Out, inst: &Instance, step: f64, tol: Tolerance) -> Step<()> {
    let parallel = SolveOptions {
        start: Some("0,0".into()),
        start_y: Some("1,1".into()),
        epsilon: 1e-6,
        max_iter: 100,
        mode: SolveMode::Parallel,
        tol,
        ..SolveOptions::default()
    };
    solve_section(out, inst, &parallel)?;
    let alternating =
        SolveOptions { mode: SolveMode::Alternating, alpha: Some(0.0), gamma: Some(1.0), ..parallel.clone() };
    solve_section(out, inst, &alternating)?;
    let opts = EnumerateOptions { epsilon: 1e-6, tol, ..EnumerateOptions::default() };
    enumerate_section(out, inst, &opts, false)?;

    out.section("reproduction");
    claim(out, "d(A,B) = 1", (inst.d_ab().value - 1.0).abs() <= tol.value());
    let pair = inst.map_pair().expect("map pair");
    let pps = enumerate_pair_set(inst, pair, 1e-6, tol)?;
    let all = inst.sets().a.len() * inst.sets().b.len();
    claim(out, "pair set covers every grid pair", pps.members.len() == all);
    let diam = pair_diameter(inst, &pps).unwrap_or(f64::NAN);
    claim(out, "pair diameter = sqrt 2 within two grid steps", (diam - 2f64.sqrt()).abs() <= 2.0 * step);
    Ok(())
}

// ---- generate ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerateKind {
    /// One cyclic map on two random clouds.
    Random,
    /// Nearest-point projections `T`, `S` on interleaved clouds.
    Pair,
    /// Rotation-contraction orbits around a shared centre.
    Orbit,
    /// Separated four-point gadgets for the pair-diameter bound.
    Chain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenerateOptions {
    pub kind: GenerateKind,
    pub seed: u64,
    pub n_a: usize,
    pub n_b: usize,
    /// `nearest`, `centroid:<factor>` or `mirror`.
    pub map_rule: String,
    /// `complete`, `diagonal`, `random:<p>` or `min-sep:<r>`.
    pub graph_rule: String,
    pub orbits: usize,
    pub depth: usize,
    pub factor: f64,
    pub gadgets: usize,
    pub extra_edges: f64,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            kind: GenerateKind::Random,
            seed: 1,
            n_a: 10,
            n_b: 10,
            map_rule: "nearest".into(),
            graph_rule: "complete".into(),
            orbits: 4,
            depth: 5,
            factor: 0.3,
            gadgets: 4,
            extra_edges: 0.0,
        }
    }
}

/// Parses `nearest`, `centroid:<factor>` or `mirror`.
pub fn parse_map_rule(text: &str) -> Result<MapRule, String> {
    match text.split_once(':') {
        None if text == "nearest" => Ok(MapRule::NearestInTarget),
        None if text == "mirror" => Ok(MapRule::Mirror),
        Some(("centroid", f)) => {
            f.parse().map(MapRule::AffineTowardCentroid).map_err(|_| format!("bad centroid factor `{f}`"))
        }
        _ => Err(format!("unknown map rule `{text}`")),
    }
}

/// Parses `complete`, `diagonal`, `random:<p>` or `min-sep:<r>`. Random
/// graphs draw their edges from `seed`.
pub fn parse_graph_rule(text: &str, seed: u64) -> Result<GraphRule, String> {
    match text.split_once(':') {
        None if text == "complete" => Ok(GraphRule::Complete),
        None if text == "diagonal" => Ok(GraphRule::Diagonal),
        Some(("random", p)) => {
            p.parse().map(|p| GraphRule::Random { p, seed }).map_err(|_| format!("bad edge probability `{p}`"))
        }
        Some(("min-sep", r)) => r.parse().map(GraphRule::MinSeparation).map_err(|_| format!("bad separation `{r}`")),
        _ => Err(format!("unknown graph rule `{text}`")),
    }
}

/// Generates a seeded instance, writes it to `path` and reports its
/// summary.
pub fn cmd_generate(path: &Path, opts: &GenerateOptions) -> RunReport {
    run(|out| {
        out.kv("command", "generate");
        let graph = || parse_graph_rule(&opts.graph_rule, opts.seed).map_err(Failure::Usage);
        let inst = match opts.kind {
            GenerateKind::Random => random_instance(&RandomSpec {
                seed: opts.seed,
                n_a: opts.n_a,
                n_b: opts.n_b,
                bbox: BoundingBox::UNIT,
                map_rule: parse_map_rule(&opts.map_rule).map_err(Failure::Usage)?,
                graph_rule: graph()?,
            }),
            GenerateKind::Pair => random_pair_instance(&RandomPairSpec {
                seed: opts.seed,
                n_a: opts.n_a,
                n_b: opts.n_b,
                bbox: BoundingBox::UNIT,
                graph_rule: graph()?,
            }),
            GenerateKind::Orbit => orbit_instance(&OrbitSpec {
                seed: opts.seed,
                orbits: opts.orbits,
                depth: opts.depth,
                factor: opts.factor,
                graph_rule: graph()?,
            }),
            GenerateKind::Chain => chain_pair_instance(&ChainSpec {
                seed: opts.seed,
                gadgets: opts.gadgets,
                extra_edges: opts.extra_edges,
            }),
        }?;
        save_instance(&inst, path)?;
        out.kv("written", path.display());
        summary(out, &inst, Tolerance::DEFAULT);
        Ok(())
    })
}
