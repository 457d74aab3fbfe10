//! Weierstrass loci.
//!
//! A point `x` is a Weierstrass point of `D` when the `x`-reduced divisor of
//! `D` has more than `r(D)` chips at `x`. The sweep walks the base point
//! along a segment and tracks `red_x(D)` as a kinetic system: between
//! events every chip sits at a vertex or moves along an edge at constant
//! speed, so the number of chips stacked on the base point is constant on
//! each regime and can only jump where a chip meets the base point.
//!
//! Each regime is found by sampling reduced divisors just ahead of the
//! current position and fitting affine chip tracks; its end is predicted from
//! the tracks and confirmed by an exact reduction. A misprediction is
//! resolved by bisection, intersecting the regimes on either side of the
//! hidden breakpoint.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::divisor::{dhar_reduce, effective_representative, rank_of_effective, Divisor};
use crate::error::Error;
use crate::graph::{MetricGraph, Point, Segment};
use crate::rational::Rational;
use crate::Result;

/// `h / NEAR_RATIO` is the offset of the first probe sample.
const NEAR_RATIO: u64 = 1024;

/// Default number of halvings before a window is reported as undecided.
pub const DEFAULT_MAX_REFINE: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_refine: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_refine: DEFAULT_MAX_REFINE }
    }
}

/// The rank of a divisor and an effective representative of its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreparedDivisor {
    pub rank: i64,
    /// `None` exactly when the rank is `-1`.
    pub representative: Option<Divisor>,
}

pub fn prepare(graph: &MetricGraph, d: &Divisor) -> PreparedDivisor {
    match effective_representative(graph, d) {
        None => PreparedDivisor { rank: -1, representative: None },
        Some(e) => PreparedDivisor { rank: rank_of_effective(graph, &e), representative: Some(e) },
    }
}

/// Part of the locus on one segment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SegmentLocus {
    /// Isolated points, ordered along the segment.
    pub points: Vec<Point>,
    /// Closed sub-intervals contained in the locus.
    pub intervals: Vec<Segment>,
    /// Windows the sweep could not resolve within the refinement cap.
    pub undecided: Vec<Segment>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassLocus {
    pub rank: i64,
    /// Isolated points in canonical order.
    pub points: Vec<Point>,
    /// Maximal sub-intervals of edges contained in the locus.
    pub intervals: Vec<Segment>,
    pub undecided: Vec<Segment>,
    /// No interval components.
    pub generic: bool,
}

impl WeierstrassLocus {
    /// Number of isolated points on the closed edge `e`, endpoints included.
    pub fn count_on_edge(&self, graph: &MetricGraph, e: usize) -> usize {
        let edge = graph.edge(e);
        self.points
            .iter()
            .filter(|p| match p {
                Point::Vertex(v) => *v == edge.tail || *v == edge.head,
                Point::Interior { edge, .. } => *edge == e,
            })
            .count()
    }

    /// Whether the sweep resolved the whole graph.
    pub fn is_complete(&self) -> bool {
        self.undecided.is_empty()
    }

    pub fn contains(&self, graph: &MetricGraph, p: &Point) -> bool {
        self.points.contains(p) || self.intervals.iter().any(|s| segment_contains(graph, s, p))
    }
}

fn segment_contains(graph: &MetricGraph, s: &Segment, p: &Point) -> bool {
    let edge = graph.edge(s.edge);
    match p {
        Point::Interior { edge, offset } => *edge == s.edge && *offset >= s.start && *offset <= s.end,
        Point::Vertex(v) => (*v == edge.tail && s.start.is_zero()) || (*v == edge.head && s.end == edge.length),
    }
}

pub fn is_weierstrass(graph: &MetricGraph, d: &Divisor, x: &Point) -> bool {
    is_weierstrass_prepared(graph, &prepare(graph, d), x)
}

pub fn is_weierstrass_prepared(graph: &MetricGraph, d: &PreparedDivisor, x: &Point) -> bool {
    match &d.representative {
        None => false,
        Some(e) => dhar_reduce(graph, x, e).coeff(x) > d.rank,
    }
}

/// A chip moving along an edge: offset `at + vel·(s - t0)` at base time `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Track {
    edge: usize,
    at: Rational,
    vel: Rational,
    mult: i64,
}

impl Track {
    fn offset(&self, t0: &Rational, s: &Rational) -> Rational {
        &self.at + &self.vel * (s - t0)
    }
}

/// Chip layout of `red_x(D)` affine in the base offset on `(t0, t0 + span)`.
#[derive(Clone, Debug)]
struct Regime {
    t0: Rational,
    fixed: BTreeMap<usize, i64>,
    tracks: Vec<Track>,
}

type Layout = (BTreeMap<usize, i64>, BTreeMap<usize, Vec<(Rational, i64)>>);

fn layout(d: &Divisor) -> Layout {
    let mut fixed = BTreeMap::new();
    let mut moving: BTreeMap<usize, Vec<(Rational, i64)>> = BTreeMap::new();
    for (p, c) in d.iter() {
        match p {
            Point::Vertex(v) => {
                fixed.insert(*v, c);
            }
            Point::Interior { edge, offset } => moving.entry(*edge).or_default().push((offset.clone(), c)),
        }
    }
    (fixed, moving)
}

fn same_shape(a: &Layout, b: &Layout) -> bool {
    a.0 == b.0
        && a.1.len() == b.1.len()
        && a.1.iter().zip(b.1.iter()).all(|((ea, va), (eb, vb))| {
            ea == eb && va.len() == vb.len() && va.iter().zip(vb.iter()).all(|(x, y)| x.1 == y.1)
        })
}

impl Regime {
    /// Fits tracks through three samples at increasing distance from `t0`
    /// and checks that they extrapolate back to `at_t0`.
    fn fit(graph: &MetricGraph, t0: &Rational, samples: [(&Rational, &Divisor); 3], at_t0: &Divisor) -> Option<Regime> {
        let lays: Vec<Layout> = samples.iter().map(|(_, d)| layout(d)).collect();
        if !same_shape(&lays[0], &lays[1]) || !same_shape(&lays[0], &lays[2]) {
            return None;
        }
        let (s1, s2, s3) = (samples[0].0, samples[1].0, samples[2].0);
        let mut tracks = Vec::new();
        for (edge, chips) in &lays[0].1 {
            let c2 = &lays[1].1[edge];
            let c3 = &lays[2].1[edge];
            for i in 0..chips.len() {
                let vel = (&c2[i].0 - &chips[i].0) / (s2 - s1);
                if c3[i].0 != &c2[i].0 + &vel * (s3 - s2) {
                    return None;
                }
                let at = &chips[i].0 - &vel * (s1 - t0);
                tracks.push(Track { edge: *edge, at, vel, mult: chips[i].1 });
            }
        }
        let regime = Regime { t0: t0.clone(), fixed: lays[0].0.clone(), tracks };
        (regime.eval(graph, t0).as_ref() == Some(at_t0)).then_some(regime)
    }

    fn eval(&self, graph: &MetricGraph, s: &Rational) -> Option<Divisor> {
        let mut d = Divisor::from_pairs(self.fixed.iter().map(|(v, c)| (Point::Vertex(*v), *c)));
        for t in &self.tracks {
            let p = graph.point(t.edge, t.offset(&self.t0, s)).ok()?;
            d.add_at(p, t.mult);
        }
        Some(d)
    }

    /// Chips riding on the base point of edge `e`.
    fn stack(&self, e: usize) -> i64 {
        self.tracks.iter().filter(|t| t.edge == e && t.at == self.t0 && t.vel.is_one()).map(|t| t.mult).sum()
    }

    /// Times at which the combinatorial type of this regime can change.
    fn event_times(&self, graph: &MetricGraph, e: usize) -> Vec<Rational> {
        let mut out = Vec::new();
        for (i, a) in self.tracks.iter().enumerate() {
            if !a.vel.is_zero() {
                out.push(&self.t0 - &a.at / &a.vel);
                out.push(&self.t0 + (&graph.edge(a.edge).length - &a.at) / &a.vel);
            }
            if a.edge == e && !a.vel.is_one() {
                out.push((&a.at - &a.vel * &self.t0) / (Rational::one() - &a.vel));
            }
            for b in &self.tracks[i + 1..] {
                if b.edge == a.edge && b.vel != a.vel {
                    out.push(&self.t0 + (&b.at - &a.at) / (&a.vel - &b.vel));
                }
            }
        }
        out
    }

    /// Times at which a track of `self` and a track of `other` coincide.
    fn crossings(&self, other: &Regime) -> Vec<Rational> {
        let mut out = Vec::new();
        for a in &self.tracks {
            for b in other.tracks.iter().filter(|b| b.edge == a.edge && b.vel != a.vel) {
                // a.at + a.vel (s - a.t0) = b.at + b.vel (s - b.t0)
                let num = &b.at - &b.vel * &other.t0 - &a.at + &a.vel * &self.t0;
                out.push(num / (&a.vel - &b.vel));
            }
        }
        out
    }
}

struct Sweeper<'g> {
    graph: &'g MetricGraph,
    rank: i64,
    edge: usize,
    warm: Divisor,
    cfg: &'g SweepConfig,
}

/// Result of walking one regime.
struct Step {
    regime: Regime,
    end: Rational,
    at_end: Divisor,
}

impl<'g> Sweeper<'g> {
    fn reduced(&mut self, s: &Rational) -> Divisor {
        let x = self.graph.point(self.edge, s.clone()).expect("sweep stays on the edge");
        let r = dhar_reduce(self.graph, &x, &self.warm);
        self.warm = r.clone();
        r
    }

    fn chips_at_base(&self, s: &Rational, d: &Divisor) -> i64 {
        d.coeff(&self.graph.point(self.edge, s.clone()).expect("on edge"))
    }

    /// Regime on `(t, t + h)` for the largest `h = h0 / 2^k` that fits, with
    /// `dir = ±1` selecting the side.
    fn probe(&mut self, t: &Rational, at_t: &Divisor, h0: &Rational, dir: i64) -> Option<(Regime, Rational)> {
        let first = Rational::new(1.into(), NEAR_RATIO.into());
        let half = Rational::new(1.into(), 2.into());
        let sign = Rational::from_integer(dir.into());
        let mut h = h0.clone();
        for _ in 0..=self.cfg.max_refine {
            // The first sample sits close to `t` so that a chip wrapping
            // around an edge between samples cannot pass for a slow one.
            let near = &h * &first;
            let s = [t + &sign * &near, t + &sign * &h * &half, t + &sign * &h];
            let r: Vec<Divisor> = s.iter().map(|x| self.reduced(x)).collect();
            let fit = Regime::fit(self.graph, t, [(&s[0], &r[0]), (&s[1], &r[1]), (&s[2], &r[2])], at_t);
            if let Some(reg) = fit {
                let slow = reg.tracks.iter().all(|tr| {
                    &tr.vel.abs() * &near * Rational::from_integer(2.into()) < self.graph.edge(tr.edge).length
                });
                if slow {
                    return Some((reg, h));
                }
            }
            h *= &half;
        }
        None
    }

    /// Walks one regime starting at `t` and returns it with its verified end.
    fn step(
        &mut self,
        t: &Rational,
        at_t: &Divisor,
        end: &Rational,
        hint: &Rational,
    ) -> core::result::Result<Step, Box<Segment>> {
        let h0 = hint.clone().min(end - t);
        let edge = self.edge;
        let undecided = |a: &Rational, b: &Rational| Box::new(Segment { edge, start: a.clone(), end: b.clone() });
        let mut h0 = h0;
        let mut rounds = 0;
        let (regime, h, predicted) = loop {
            let Some((regime, h)) = self.probe(t, at_t, &h0, 1) else {
                let span = (end - t) / Rational::from_integer((1u64 << self.cfg.max_refine.min(62)).into());
                return Err(undecided(t, &(t + span)));
            };
            let predicted = regime
                .event_times(self.graph, self.edge)
                .into_iter()
                .filter(|s| s > t)
                .min()
                .map_or(end.clone(), |s| s.min(end.clone()));
            // Samples past the first event may belong to a later regime.
            if predicted >= &h + t || rounds >= self.cfg.max_refine {
                break (regime, h, predicted);
            }
            h0 = &predicted - t;
            rounds += 1;
        };
        let known = (t + &h).min(predicted.clone());
        let at_pred = self.reduced(&predicted);
        let mut ok = regime.eval(self.graph, &predicted).as_ref() == Some(&at_pred);
        if ok && predicted > known {
            let mid = (&known + &predicted) / Rational::from_integer(2.into());
            let at_mid = self.reduced(&mid);
            ok = regime.eval(self.graph, &mid).as_ref() == Some(&at_mid);
        }
        if ok {
            return Ok(Step { regime, end: predicted, at_end: at_pred });
        }
        // A breakpoint hides before `predicted`.
        let mut lo = if predicted > known { known } else { t.clone() };
        let mut hi = predicted;
        let mut at_hi = at_pred;
        for _ in 0..self.cfg.max_refine {
            if let Some((left, _)) = self.probe(&hi, &at_hi, &(&hi - &lo), -1) {
                let mut cands: Vec<Rational> = regime
                    .crossings(&left)
                    .into_iter()
                    .chain(left.event_times(self.graph, self.edge))
                    .filter(|s| *s > lo && *s < hi)
                    .collect();
                cands.sort();
                cands.dedup();
                for s in cands {
                    let a = regime.eval(self.graph, &s);
                    if a.is_some() && a == left.eval(self.graph, &s) {
                        let at_s = self.reduced(&s);
                        if a.as_ref() == Some(&at_s) {
                            return Ok(Step { regime, end: s, at_end: at_s });
                        }
                    }
                }
            }
            let mid = (&lo + &hi) / Rational::from_integer(2.into());
            let at_mid = self.reduced(&mid);
            if regime.eval(self.graph, &mid).as_ref() == Some(&at_mid) {
                lo = mid;
            } else {
                hi = mid;
                at_hi = at_mid;
            }
        }
        Err(undecided(&lo, &hi))
    }
}

/// Sweeps one segment of an edge.
pub fn weierstrass_on_segment(
    graph: &MetricGraph,
    d: &PreparedDivisor,
    segment: &Segment,
    cfg: &SweepConfig,
) -> Result<SegmentLocus> {
    segment.validate(graph)?;
    let Some(rep) = &d.representative else {
        return Ok(SegmentLocus::default());
    };
    let mut sw = Sweeper { graph, rank: d.rank, edge: segment.edge, warm: rep.clone(), cfg };
    let mut points: Vec<Rational> = Vec::new();
    let mut intervals: Vec<(Rational, Rational)> = Vec::new();
    let mut undecided = Vec::new();
    let mut t = segment.start.clone();
    let mut at_t = sw.reduced(&t);
    if sw.chips_at_base(&t, &at_t) > sw.rank {
        points.push(t.clone());
    }
    let mut hint = segment.length();
    while t < segment.end {
        match sw.step(&t, &at_t, &segment.end, &hint) {
            Ok(step) => {
                if step.regime.stack(sw.edge) > sw.rank {
                    intervals.push((t.clone(), step.end.clone()));
                }
                if sw.chips_at_base(&step.end, &step.at_end) > sw.rank {
                    points.push(step.end.clone());
                }
                hint = (&step.end - &t) * Rational::from_integer(2.into());
                t = step.end;
                at_t = step.at_end;
            }
            Err(window) => {
                t = window.end.clone();
                at_t = sw.reduced(&t);
                if sw.chips_at_base(&t, &at_t) > sw.rank {
                    points.push(t.clone());
                }
                undecided.push(*window);
                hint = segment.length();
            }
        }
    }
    // Merge touching intervals and drop points they cover.
    let mut merged: Vec<(Rational, Rational)> = Vec::new();
    for (a, b) in intervals {
        match merged.last_mut() {
            Some(last) if last.1 == a => last.1 = b,
            _ => merged.push((a, b)),
        }
    }
    points.retain(|p| !merged.iter().any(|(a, b)| p >= a && p <= b));
    points.dedup();
    let to_point = |s: Rational| graph.point(segment.edge, s).expect("on edge");
    Ok(SegmentLocus {
        points: points.into_iter().map(to_point).collect(),
        intervals: merged.into_iter().map(|(start, end)| Segment { edge: segment.edge, start, end }).collect(),
        undecided,
    })
}

/// Combines per-edge sweeps into the locus of the whole graph.
pub fn assemble_locus(graph: &MetricGraph, rank: i64, parts: Vec<SegmentLocus>) -> WeierstrassLocus {
    let mut intervals: Vec<Segment> = Vec::new();
    let mut undecided = Vec::new();
    let mut points = BTreeSet::new();
    for part in parts {
        points.extend(part.points);
        intervals.extend(part.intervals);
        undecided.extend(part.undecided);
    }
    let points: Vec<Point> =
        points.into_iter().filter(|p| !intervals.iter().any(|s| segment_contains(graph, s, p))).collect();
    let generic = intervals.is_empty();
    WeierstrassLocus { rank, points, intervals, undecided, generic }
}

pub fn weierstrass_locus(graph: &MetricGraph, d: &Divisor, cfg: &SweepConfig) -> WeierstrassLocus {
    let prepared = prepare(graph, d);
    let parts = (0..graph.edge_count())
        .map(|e| weierstrass_on_segment(graph, &prepared, &Segment::whole(graph, e), cfg).expect("whole edge"))
        .collect();
    assemble_locus(graph, prepared.rank, parts)
}

/// One mesh point of [`mesh_scan`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshSample {
    pub edge: usize,
    pub offset: Rational,
    pub point: Point,
    pub reduced: Divisor,
    pub hit: bool,
}

/// Reduced divisors at offsets `k/resolution · length`, `0 ≤ k ≤ resolution`,
/// on every edge.
pub fn mesh_scan(graph: &MetricGraph, d: &PreparedDivisor, resolution: u32) -> Result<Vec<MeshSample>> {
    if resolution == 0 {
        return Err(Error::InvalidMesh);
    }
    let Some(rep) = &d.representative else {
        return Ok(Vec::new());
    };
    let mut warm = rep.clone();
    let mut out = Vec::new();
    for e in 0..graph.edge_count() {
        let len = &graph.edge(e).length;
        for k in 0..=resolution {
            let offset = len * Rational::new(k.into(), resolution.into());
            let point = graph.point(e, offset.clone())?;
            let reduced = dhar_reduce(graph, &point, &warm);
            warm = reduced.clone();
            let hit = reduced.coeff(&point) > d.rank;
            out.push(MeshSample { edge: e, offset, point, reduced, hit });
        }
    }
    Ok(out)
}

/// Mesh points that are Weierstrass points, each listed once.
pub fn mesh_oracle(graph: &MetricGraph, d: &Divisor, resolution: u32) -> Result<Vec<Point>> {
    let hits: BTreeSet<Point> =
        mesh_scan(graph, &prepare(graph, d), resolution)?.into_iter().filter(|s| s.hit).map(|s| s.point).collect();
    Ok(hits.into_iter().collect())
}
