//! Random generic divisors and per-edge Weierstrass counts measured against
//! the canonical measure.
//!
//! Sampling uses ChaCha8 seeded from the experiment seed, with one stream per
//! degree, so every degree is reproducible on its own.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::Divisor;
use crate::electrical::MeasureTable;
use crate::error::Error;
use crate::graph::{MetricGraph, Point};
use crate::plfn::PlFunction;
use crate::rational::Rational;
use crate::weierstrass::{assemble_locus, prepare, weierstrass_on_segment, SweepConfig, WeierstrassLocus};
use crate::Result;

pub const DEFAULT_RETRIES: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub degrees: Vec<i64>,
    pub seed: u64,
    /// Offsets are drawn as `k/denom · length` with `0 < k < denom`.
    pub denom: u64,
    pub retries: u32,
    pub sweep: SweepConfig,
}

impl ExperimentConfig {
    pub fn new(degrees: Vec<i64>, seed: u64, denom: u64) -> ExperimentConfig {
        ExperimentConfig { degrees, seed, denom, retries: DEFAULT_RETRIES, sweep: SweepConfig::default() }
    }

    pub fn validate(&self, graph: &MetricGraph) -> Result<()> {
        if self.denom < 2 {
            return Err(Error::InvalidConfig("denominator bound must be at least 2".into()));
        }
        if self.degrees.is_empty() {
            return Err(Error::InvalidConfig("no degrees given".into()));
        }
        if self.degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("degrees must be strictly increasing".into()));
        }
        if self.degrees[0] < graph.genus().max(1) {
            return Err(Error::InvalidConfig("degrees must be at least the genus and positive".into()));
        }
        if self.retries == 0 {
            return Err(Error::InvalidConfig("retry budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub degree: i64,
    pub segment: usize,
    pub count: usize,
    pub mu: Rational,
    /// `N μ(e) - 3g - 1`.
    pub lower: Rational,
    /// `N μ(e) + g + 2`.
    pub upper: Rational,
    pub bound_ok: bool,
    /// `count / N`.
    pub delta: Rational,
}

impl ReportRow {
    /// `count - N μ(e)`, which is `N (δ_N(e) - μ(e))`.
    pub fn scaled_deviation(&self) -> Rational {
        Rational::from_integer((self.count as i64).into()) - &self.mu * Rational::from_integer(self.degree.into())
    }
}

/// Everything computed for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: i64,
    pub divisor: Divisor,
    pub locus: WeierstrassLocus,
    /// Number of divisors drawn before a generic one was found.
    pub attempts: u32,
    pub rows: Vec<ReportRow>,
}

impl DegreeReport {
    /// `N · max_e |δ_N(e) - μ(e)|`.
    pub fn max_scaled_deviation(&self) -> Rational {
        self.rows.iter().map(|r| r.scaled_deviation().abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Every edge with `μ(e) > (3g + 1)/N` carries a point.
    pub fn existence_ok(&self, genus: i64) -> bool {
        let threshold = Rational::new((3 * genus + 1).into(), self.degree.into());
        self.rows.iter().all(|r| r.mu <= threshold || r.count >= 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentSummary {
    pub all_bounds_ok: bool,
    pub existence_ok: bool,
    /// `(N, N · max_e |δ_N(e) - μ(e)|)` per degree.
    pub scaled_deviation: Vec<(i64, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Experiment {
    pub reports: Vec<DegreeReport>,
    pub summary: ExperimentSummary,
}

/// Generator for degree `n` of an experiment seeded with `seed`.
pub fn degree_rng(seed: u64, n: i64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    rng
}

/// Integer weights proportional to the edge lengths.
fn length_weights(graph: &MetricGraph) -> Result<Vec<u64>> {
    let lcm = graph.edges().iter().fold(BigInt::one(), |acc, e| acc.lcm(e.length.denom()));
    graph
        .edges()
        .iter()
        .map(|e| {
            (e.length.numer() * (&lcm / e.length.denom()))
                .to_u64()
                .ok_or_else(|| Error::InvalidConfig("edge lengths too large to sample".into()))
        })
        .collect()
}

/// `n` points drawn independently: an edge with probability proportional to
/// its length, then an offset `k/denom · length`.
pub fn sample_divisor<R: Rng>(graph: &MetricGraph, n: i64, denom: u64, rng: &mut R) -> Result<Divisor> {
    if denom < 2 {
        return Err(Error::InvalidConfig("denominator bound must be at least 2".into()));
    }
    let weights = length_weights(graph)?;
    let total: u64 = weights.iter().sum();
    let mut d = Divisor::new();
    for _ in 0..n {
        let mut pick = rng.gen_range(0..total);
        let edge = weights
            .iter()
            .position(|&w| {
                if pick < w {
                    true
                } else {
                    pick -= w;
                    false
                }
            })
            .expect("pick below total weight");
        let k = rng.gen_range(1..denom);
        let offset = &graph.edge(edge).length * Rational::new(k.into(), denom.into());
        d.add_at(graph.point(edge, offset)?, 1);
    }
    Ok(d)
}

/// Locus of `d` sweeping every edge, together with the rank of `d`.
pub fn locus_of(graph: &MetricGraph, d: &Divisor, cfg: &SweepConfig) -> Result<WeierstrassLocus> {
    let prepared = prepare(graph, d);
    let parts = (0..graph.edge_count())
        .map(|e| weierstrass_on_segment(graph, &prepared, &crate::graph::Segment::whole(graph, e), cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_locus(graph, prepared.rank, parts))
}

/// Rank `N - g` (when `N ≥ g`) and a finite, fully resolved locus.
pub fn is_generic(graph: &MetricGraph, n: i64, locus: &WeierstrassLocus) -> bool {
    let g = graph.genus();
    (n < g || locus.rank == n - g) && locus.generic && locus.is_complete()
}

/// A generic divisor of degree `n` with its locus and the number of draws.
pub fn sample_generic_divisor(
    graph: &MetricGraph,
    n: i64,
    seed: u64,
    denom: u64,
    retries: u32,
    cfg: &SweepConfig,
) -> Result<(Divisor, WeierstrassLocus, u32)> {
    if n < 1 {
        return Err(Error::InvalidConfig("degree must be positive".into()));
    }
    let mut rng = degree_rng(seed, n);
    for attempt in 1..=retries {
        let d = sample_divisor(graph, n, denom, &mut rng)?;
        let locus = locus_of(graph, &d, cfg)?;
        if is_generic(graph, n, &locus) {
            return Ok((d, locus, attempt));
        }
    }
    Err(Error::GenericityRetriesExceeded { degree: n, attempts: retries })
}

/// Per-edge counts and bounds for a locus of a degree-`n` divisor.
pub fn report_rows(graph: &MetricGraph, n: i64, locus: &WeierstrassLocus, measure: &MeasureTable) -> Vec<ReportRow> {
    let g = graph.genus();
    let nn = Rational::from_integer(n.into());
    (0..graph.edge_count())
        .map(|e| {
            let count = locus.count_on_edge(graph, e);
            let mu = measure.mass(e).clone();
            let lower = &nn * &mu - Rational::from_integer((3 * g + 1).into());
            let upper = &nn * &mu + Rational::from_integer((g + 2).into());
            let c = Rational::from_integer((count as i64).into());
            let bound_ok = lower <= c && c <= upper;
            ReportRow { degree: n, segment: e, count, mu, lower, upper, bound_ok, delta: c / &nn }
        })
        .collect()
}

pub fn run_degree(graph: &MetricGraph, measure: &MeasureTable, n: i64, cfg: &ExperimentConfig) -> Result<DegreeReport> {
    let (divisor, locus, attempts) = sample_generic_divisor(graph, n, cfg.seed, cfg.denom, cfg.retries, &cfg.sweep)?;
    let rows = report_rows(graph, n, &locus, measure);
    Ok(DegreeReport { degree: n, divisor, locus, attempts, rows })
}

pub fn summarize(graph: &MetricGraph, reports: &[DegreeReport]) -> ExperimentSummary {
    ExperimentSummary {
        all_bounds_ok: reports.iter().all(|r| r.rows.iter().all(|row| row.bound_ok)),
        existence_ok: reports.iter().all(|r| r.existence_ok(graph.genus())),
        scaled_deviation: reports.iter().map(|r| (r.degree, r.max_scaled_deviation())).collect(),
    }
}

pub fn run_experiment(graph: &MetricGraph, measure: &MeasureTable, cfg: &ExperimentConfig) -> Result<Experiment> {
    cfg.validate(graph)?;
    let reports = cfg.degrees.iter().map(|&n| run_degree(graph, measure, n, cfg)).collect::<Result<Vec<_>>>()?;
    let summary = summarize(graph, &reports);
    Ok(Experiment { reports, summary })
}

/// `((1/N) Σ_{x ∈ W} f(x), ∫ f dμ)` for a finite locus of a degree-`n` divisor.
pub fn integrate_against(
    graph: &MetricGraph,
    f: &PlFunction,
    locus: &WeierstrassLocus,
    measure: &MeasureTable,
    n: i64,
) -> Result<(Rational, Rational)> {
    if !locus.generic {
        return Err(Error::NonGenericLocus);
    }
    if n < 1 {
        return Err(Error::InvalidConfig("degree must be positive".into()));
    }
    let sum = locus.points.iter().fold(Rational::zero(), |acc, p: &Point| acc + f.value_at(graph, p));
    let average = sum / Rational::from_integer(n.into());
    let integral = (0..graph.edge_count()).fold(Rational::zero(), |acc, e| {
        let len = &graph.edge(e).length;
        acc + measure.density(e) * f.integrate_on_edge(graph, e, &Rational::zero(), len)
    });
    Ok((average, integral))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrical::canonical_measure;
    use crate::rational::{int, rat};
    use crate::weierstrass::weierstrass_locus;
    use alloc::vec;

    fn circle() -> MetricGraph {
        MetricGraph::from_edges(1, &[(0, 0, int(1))]).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = MetricGraph::from_edges(2, &[(0, 1, int(1)), (0, 1, int(2)), (0, 1, int(3))]).unwrap();
        let a = sample_divisor(&g, 7, 100, &mut degree_rng(3, 7)).unwrap();
        let b = sample_divisor(&g, 7, 100, &mut degree_rng(3, 7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree(), 7);
        assert!(a.is_effective());
    }

    #[test]
    fn circle_generic_divisor() {
        let g = circle();
        let (d, w, _) = sample_generic_divisor(&g, 3, 11, 1000, DEFAULT_RETRIES, &SweepConfig::default()).unwrap();
        assert_eq!(d.degree(), 3);
        assert_eq!(w.rank, 2);
        assert_eq!(w.points.len(), 3);
    }

    #[test]
    fn theta_rank() {
        let g = MetricGraph::from_edges(2, &[(0, 1, int(1)), (0, 1, int(1)), (0, 1, int(1))]).unwrap();
        let (_, w, _) = sample_generic_divisor(&g, 5, 2, 1000, DEFAULT_RETRIES, &SweepConfig::default()).unwrap();
        assert_eq!(w.rank, 3);
    }

    #[test]
    fn tree_has_no_points() {
        let g = MetricGraph::from_edges(3, &[(0, 1, int(1)), (1, 2, rat(1, 2))]).unwrap();
        let mu = canonical_measure(&g);
        let exp = run_experiment(&g, &mu, &ExperimentConfig::new(vec![1, 4], 5, 50)).unwrap();
        for r in &exp.reports {
            assert!(r.rows.iter().all(|row| row.count == 0 && row.mu.is_zero() && row.bound_ok));
        }
        assert!(exp.summary.all_bounds_ok && exp.summary.existence_ok);
    }

    #[test]
    fn integrals() {
        let g = circle();
        let mu = canonical_measure(&g);
        let w = weierstrass_locus(&g, &Divisor::point(Point::Vertex(0), 4), &SweepConfig::default());
        let one = PlFunction::constant(&g, int(1));
        assert_eq!(integrate_against(&g, &one, &w, &mu, 4).unwrap(), (int(1), int(1)));
        let zero = PlFunction::zero(&g);
        assert_eq!(integrate_against(&g, &zero, &w, &mu, 4).unwrap(), (int(0), int(0)));
        // Hat function peaking at 1/2: points 0, 1/4, 1/2, 3/4 give (0 + 1/4 + 1/2 + 1/4)/4.
        let hat = PlFunction::from_parts(&g, vec![int(0)], vec![vec![(rat(1, 2), rat(1, 2))]]).unwrap();
        assert_eq!(integrate_against(&g, &hat, &w, &mu, 4).unwrap(), (rat(1, 4), rat(1, 4)));
    }

    #[test]
    fn bad_configs() {
        let g = circle();
        assert!(ExperimentConfig::new(vec![3, 2], 1, 10).validate(&g).is_err());
        assert!(ExperimentConfig::new(vec![3], 1, 1).validate(&g).is_err());
        assert!(ExperimentConfig::new(vec![0], 1, 10).validate(&g).is_err());
    }
}
