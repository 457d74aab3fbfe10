#![allow(dead_code)]

use rand::Rng;
use tropweier_core::rational::{int, rat};
use tropweier_core::{Divisor, MetricGraph, Point, Rational};

pub fn random_length<R: Rng>(rng: &mut R, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    rat(rng.gen_range(1..=3 * q), q)
}

/// Random connected graph: a random spanning tree plus extra edges (loops and
/// parallel edges allowed).
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize, max_den: i64) -> MetricGraph {
    let v = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for i in 1..v {
        edges.push((i, rng.gen_range(0..i), random_length(rng, max_den)));
    }
    let extra = rng.gen_range(usize::from(v == 1)..=max_edges.saturating_sub(v - 1).max(1));
    for _ in 0..extra {
        edges.push((rng.gen_range(0..v), rng.gen_range(0..v), random_length(rng, max_den)));
    }
    MetricGraph::from_edges(v, &edges).unwrap()
}

/// Random connected graph of exactly the given genus.
pub fn random_graph_of_genus<R: Rng>(rng: &mut R, max_vertices: usize, genus: usize, max_den: i64) -> MetricGraph {
    let v = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for i in 1..v {
        edges.push((i, rng.gen_range(0..i), random_length(rng, max_den)));
    }
    for _ in 0..genus {
        edges.push((rng.gen_range(0..v), rng.gen_range(0..v), random_length(rng, max_den)));
    }
    MetricGraph::from_edges(v, &edges).unwrap()
}

pub fn random_point<R: Rng>(rng: &mut R, graph: &MetricGraph, den: i64) -> Point {
    if rng.gen_bool(0.25) {
        return Point::Vertex(rng.gen_range(0..graph.vertex_count()));
    }
    let e = rng.gen_range(0..graph.edge_count());
    let k = rng.gen_range(0..=den);
    graph.point(e, &graph.edge(e).length * rat(k, den)).unwrap()
}

pub fn random_effective<R: Rng>(rng: &mut R, graph: &MetricGraph, degree: i64, den: i64) -> Divisor {
    let mut d = Divisor::new();
    for _ in 0..degree {
        d.add_at(random_point(rng, graph, den), 1);
    }
    d
}

pub fn circle(len: Rational) -> MetricGraph {
    MetricGraph::from_edges(1, &[(0, 0, len)]).unwrap()
}

pub fn theta(a: i64, b: i64, c: i64) -> MetricGraph {
    MetricGraph::from_edges(2, &[(0, 1, int(a)), (0, 1, int(b)), (0, 1, int(c))]).unwrap()
}

/// `g` unit circles glued at one vertex.
pub fn wedge(g: usize) -> MetricGraph {
    MetricGraph::from_edges(1, &vec![(0, 0, int(1)); g]).unwrap()
}

/// Complete graph on four vertices with pairwise distinct lengths.
pub fn k4() -> MetricGraph {
    MetricGraph::from_edges(
        4,
        &[
            (0, 1, int(1)),
            (0, 2, rat(3, 2)),
            (0, 3, rat(5, 3)),
            (1, 2, rat(7, 4)),
            (1, 3, rat(9, 5)),
            (2, 3, rat(11, 6)),
        ],
    )
    .unwrap()
}
