//! Transient refinements of a graph in which a finite set of points are
//! promoted to nodes. Most algorithms run on one of these and translate the
//! answer back to points of the original graph.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::graph::{MetricGraph, Point};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub edge: usize,
    pub start: Rational,
    pub end: Rational,
    pub from: usize,
    pub to: usize,
    pub length: Rational,
}

pub(crate) struct Model<'g> {
    pub graph: &'g MetricGraph,
    /// Node index to point; original vertices come first with their own indices.
    pub nodes: Vec<Point>,
    pub pieces: Vec<Piece>,
    /// Pieces of every original edge, ordered from tail to head.
    pub edge_pieces: Vec<Vec<usize>>,
    /// `(piece, other node)` for every piece end at a node; loops appear twice.
    pub adj: Vec<Vec<(usize, usize)>>,
    /// Interior nodes of every original edge as `(offset, node)`, sorted.
    interior: Vec<Vec<(Rational, usize)>>,
}

impl<'g> Model<'g> {
    pub fn new<'p, I>(graph: &'g MetricGraph, points: I) -> Model<'g>
    where
        I: IntoIterator<Item = &'p Point>,
    {
        let mut cuts: Vec<Vec<Rational>> = vec![Vec::new(); graph.edge_count()];
        for p in points {
            if let Point::Interior { edge, offset } = p {
                cuts[*edge].push(offset.clone());
            }
        }
        let mut nodes: Vec<Point> = (0..graph.vertex_count()).map(Point::Vertex).collect();
        let mut pieces = Vec::new();
        let mut edge_pieces = Vec::with_capacity(graph.edge_count());
        let mut interior = Vec::with_capacity(graph.edge_count());
        for (e, offsets) in cuts.iter_mut().enumerate() {
            offsets.sort();
            offsets.dedup();
            let edge = graph.edge(e);
            let mut inner = Vec::with_capacity(offsets.len());
            let mut ids = Vec::with_capacity(offsets.len() + 1);
            let mut prev_node = edge.tail;
            let mut prev_off = Rational::zero();
            for off in offsets.iter() {
                let node = nodes.len();
                nodes.push(Point::Interior { edge: e, offset: off.clone() });
                inner.push((off.clone(), node));
                ids.push(pieces.len());
                pieces.push(Piece {
                    edge: e,
                    start: prev_off.clone(),
                    end: off.clone(),
                    from: prev_node,
                    to: node,
                    length: off - &prev_off,
                });
                prev_node = node;
                prev_off = off.clone();
            }
            ids.push(pieces.len());
            pieces.push(Piece {
                edge: e,
                start: prev_off.clone(),
                end: edge.length.clone(),
                from: prev_node,
                to: edge.head,
                length: &edge.length - &prev_off,
            });
            edge_pieces.push(ids);
            interior.push(inner);
        }
        let mut adj = vec![Vec::new(); nodes.len()];
        for (i, p) in pieces.iter().enumerate() {
            adj[p.from].push((i, p.to));
            adj[p.to].push((i, p.from));
        }
        Model { graph, nodes, pieces, edge_pieces, adj, interior }
    }

    /// Node of a point that was passed to [`Model::new`] (or a vertex).
    pub fn node(&self, p: &Point) -> usize {
        match p {
            Point::Vertex(v) => *v,
            Point::Interior { edge, offset } => {
                let inner = &self.interior[*edge];
                let idx = inner.binary_search_by(|(o, _)| o.cmp(offset)).expect("point is not a node of this model");
                inner[idx].1
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Dijkstra from `source`; `None` for unreachable nodes.
    pub fn shortest_paths(&self, source: usize) -> Vec<Option<Rational>> {
        let n = self.nodes.len();
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = Some(Rational::zero());
        loop {
            let mut best: Option<usize> = None;
            for v in 0..n {
                if done[v] {
                    continue;
                }
                if let Some(d) = &dist[v] {
                    if best.is_none_or(|b| d < dist[b].as_ref().unwrap()) {
                        best = Some(v);
                    }
                }
            }
            let Some(u) = best else { break };
            done[u] = true;
            let du = dist[u].clone().unwrap();
            for &(pid, w) in &self.adj[u] {
                let cand = &du + &self.pieces[pid].length;
                if dist[w].as_ref().is_none_or(|d| cand < *d) {
                    dist[w] = Some(cand);
                }
            }
        }
        dist
    }

    /// `(node a, node b, length)` for every piece, skipping loops and the
    /// pieces of `skip_edge`.
    pub fn resistors(&self, skip_edge: Option<usize>) -> Vec<(usize, usize, Rational)> {
        self.pieces
            .iter()
            .filter(|p| p.from != p.to && Some(p.edge) != skip_edge)
            .map(|p| (p.from, p.to, p.length.clone()))
            .collect()
    }
}
