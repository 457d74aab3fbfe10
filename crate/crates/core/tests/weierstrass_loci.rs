mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropweier_core::divisor::{canonical_divisor, rank};
use tropweier_core::equidist::sample_generic_divisor;
use tropweier_core::rational::{int, rat};
use tropweier_core::weierstrass::*;
use tropweier_core::{Divisor, MetricGraph, Point, Rational, Segment};

fn cfg() -> SweepConfig {
    SweepConfig::default()
}

/// Points of the locus pass the exact test; intervals pass it at interior rationals.
fn assert_sound(graph: &MetricGraph, d: &Divisor, w: &WeierstrassLocus) {
    for p in &w.points {
        assert!(is_weierstrass(graph, d, p), "reported point {p:?} fails");
    }
    for s in &w.intervals {
        for k in 1..4 {
            let x = graph.point(s.edge, &s.start + (&s.end - &s.start) * rat(k, 4)).unwrap();
            assert!(is_weierstrass(graph, d, &x), "interval {s:?} fails at {x:?}");
        }
    }
}

fn assert_mesh_agrees(graph: &MetricGraph, d: &Divisor, w: &WeierstrassLocus, res: u32) {
    let prepared = prepare(graph, d);
    for s in mesh_scan(graph, &prepared, res).unwrap() {
        assert_eq!(s.hit, w.contains(graph, &s.point), "mesh point {:?}", s.point);
    }
}

#[test]
fn circle_torsion_points() {
    let g = circle(int(1));
    for n in [2, 3, 5, 12] {
        let d = Divisor::point(Point::Vertex(0), n);
        let w = weierstrass_locus(&g, &d, &cfg());
        let expected: Vec<Point> = (0..n).map(|k| g.point(0, rat(k, n)).unwrap()).collect();
        assert_eq!(w.points, expected);
        assert!(w.generic && w.is_complete());
        assert_mesh_agrees(&g, &d, &w, 60);
    }
}

#[test]
fn scaled_circle_mesh() {
    let g = circle(rat(7, 3));
    let d = Divisor::point(Point::Vertex(0), 3);
    let hits = mesh_oracle(&g, &d, 12).unwrap();
    let expected: Vec<Point> = [int(0), rat(7, 9), rat(14, 9)].into_iter().map(|o| g.point(0, o).unwrap()).collect();
    assert_eq!(hits, expected);
}

#[test]
fn wedge_counts() {
    for genus in [2usize, 3] {
        let g = wedge(genus);
        let gi = genus as i64;
        for n in [gi + 1, gi + 3] {
            let (d, w, _) = sample_generic_divisor(&g, n, 7, 1000, 16, &cfg()).unwrap();
            assert_eq!(w.points.len() as i64, gi * (n - gi + 1), "g = {genus}, N = {n}");
            for e in 0..genus {
                assert_eq!(w.count_on_edge(&g, e) as i64, n - gi + 1);
            }
            assert_sound(&g, &d, &w);
        }
    }
}

#[test]
fn complete_graph_canonical_has_eight_points() {
    let g = k4();
    let k = canonical_divisor(&g);
    let w = weierstrass_locus(&g, &k, &cfg());
    assert_eq!(w.rank, 2);
    assert!(w.generic && w.is_complete());
    assert_eq!(w.points.len(), 8);
    assert_sound(&g, &k, &w);
    assert_mesh_agrees(&g, &k, &w, 60);
}

#[test]
fn chips_on_a_bridge_of_three_loops() {
    // Center vertex joined by unit bridges to three unit loops.
    let g = MetricGraph::from_edges(
        4,
        &[(0, 1, int(1)), (0, 2, int(1)), (0, 3, int(1)), (1, 1, int(1)), (2, 2, int(1)), (3, 3, int(1))],
    )
    .unwrap();
    let d = Divisor::point(g.point(0, rat(1, 2)).unwrap(), 4);
    assert!(rank(&g, &d) <= 2);
    let w = weierstrass_locus(&g, &d, &cfg());
    assert!(!w.generic);
    assert!(!w.intervals.is_empty());
    for e in 0..g.edge_count() {
        let covered: Rational = w.intervals.iter().filter(|s| s.edge == e).map(|s| &s.end - &s.start).sum();
        assert_eq!(covered, g.edge(e).length, "edge {e}");
    }
    assert_sound(&g, &d, &w);
}

#[test]
fn bridged_loops_canonical_contains_bridge() {
    let g = MetricGraph::from_edges(2, &[(0, 0, int(2)), (0, 1, int(3)), (1, 1, int(1))]).unwrap();
    let k = canonical_divisor(&g);
    let w = weierstrass_locus(&g, &k, &cfg());
    assert_eq!(w.rank, 1);
    assert!(!w.generic);
    assert!(w.intervals.contains(&Segment::whole(&g, 1)));
    assert_sound(&g, &k, &w);
}

#[test]
fn refinement_cap_zero_still_terminates() {
    let g = theta(1, 2, 3);
    let k = canonical_divisor(&g);
    let w = weierstrass_locus(&g, &k, &SweepConfig { max_refine: 0 });
    assert_sound(&g, &k, &w);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_loci_are_sound_and_match_mesh(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let genus = rng.gen_range(1..=2);
        let g = random_graph_of_genus(&mut rng, 3, genus, 4);
        let n = rng.gen_range(1..=4);
        let d = random_effective(&mut rng, &g, n, 6);
        let w = weierstrass_locus(&g, &d, &cfg());
        prop_assert_eq!(w.rank, rank(&g, &d));
        assert_sound(&g, &d, &w);
        if w.is_complete() {
            assert_mesh_agrees(&g, &d, &w, 30);
        }
    }
}
