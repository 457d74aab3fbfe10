//! Compact connected metric graphs given by a combinatorial model with exact
//! rational edge lengths.
//!
//! A [`Point`] is either a vertex or an interior point of an edge, measured
//! from the edge's tail (the first endpoint given in the input). Points are
//! always canonical: an offset of `0` or of the full length is stored as the
//! corresponding vertex, so derived equality is geometric equality.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::model::Model;
use crate::rational::Rational;
use crate::Result;

/// An unvalidated graph description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub id: String,
    pub ends: (String, String),
    pub length: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub length: Rational,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint that is not `v`; for loops, `v` itself.
    pub fn opposite(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(usize),
    /// `0 < offset < length` of the edge, measured from its tail.
    Interior {
        edge: usize,
        offset: Rational,
    },
}

impl Point {
    pub fn edge(&self) -> Option<usize> {
        match self {
            Point::Vertex(_) => None,
            Point::Interior { edge, .. } => Some(*edge),
        }
    }
}

/// A sub-interval `[start, end]` of one edge of the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub edge: usize,
    pub start: Rational,
    pub end: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentClass {
    Bridge,
    Loop,
    Ordinary,
}

impl Segment {
    pub fn whole(graph: &MetricGraph, edge: usize) -> Segment {
        Segment { edge, start: Rational::zero(), end: graph.edge(edge).length.clone() }
    }

    pub fn length(&self) -> Rational {
        &self.end - &self.start
    }

    pub fn endpoints(&self, graph: &MetricGraph) -> Result<(Point, Point)> {
        Ok((graph.point(self.edge, self.start.clone())?, graph.point(self.edge, self.end.clone())?))
    }

    pub(crate) fn validate(&self, graph: &MetricGraph) -> Result<()> {
        if self.edge >= graph.edge_count()
            || self.start.is_negative()
            || self.end > graph.edge(self.edge).length
            || self.start >= self.end
        {
            return Err(Error::InvalidSegment);
        }
        Ok(())
    }
}

/// Correspondence between points of a graph and of one of its refinements.
#[derive(Clone, Debug)]
pub struct Refinement {
    /// For every original edge, `(refined edge, start offset)` in order.
    pieces: Vec<Vec<(usize, Rational)>>,
    /// For every refined edge, `(original edge, start offset)`.
    origin: Vec<(usize, Rational)>,
    /// Refined vertex index for each subdivision point.
    new_vertices: BTreeMap<Point, usize>,
    original_vertex_count: usize,
}

impl Refinement {
    pub fn to_refined(&self, p: &Point) -> Point {
        match p {
            Point::Vertex(v) => Point::Vertex(*v),
            Point::Interior { edge, offset } => {
                if let Some(&v) = self.new_vertices.get(p) {
                    return Point::Vertex(v);
                }
                let pieces = &self.pieces[*edge];
                let idx = pieces.partition_point(|(_, start)| start < offset) - 1;
                let (new_edge, start) = &pieces[idx];
                Point::Interior { edge: *new_edge, offset: offset - start }
            }
        }
    }

    pub fn to_original(&self, p: &Point) -> Point {
        match p {
            Point::Vertex(v) if *v < self.original_vertex_count => Point::Vertex(*v),
            Point::Vertex(v) => self
                .new_vertices
                .iter()
                .find(|(_, idx)| **idx == *v)
                .map(|(point, _)| point.clone())
                .expect("refined vertex without origin"),
            Point::Interior { edge, offset } => {
                let (orig, start) = &self.origin[*edge];
                Point::Interior { edge: *orig, offset: start + offset }
            }
        }
    }
}

impl MetricGraph {
    /// Checks a raw description and assigns indices in input order.
    pub fn validate_model(raw: &RawGraph) -> Result<MetricGraph> {
        if raw.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut index = BTreeMap::new();
        for (i, name) in raw.vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in &raw.edges {
            if !ids.insert(e.id.clone()) {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
            let lookup = |name: &String| {
                index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::DanglingEndpoint { edge: e.id.clone(), vertex: name.clone() })
            };
            let tail = lookup(&e.ends.0)?;
            let head = lookup(&e.ends.1)?;
            if !e.length.is_positive() {
                return Err(Error::NonpositiveLength { edge: e.id.clone() });
            }
            edges.push(Edge { id: e.id.clone(), tail, head, length: e.length.clone() });
        }
        let graph = Self::assemble(raw.vertices.clone(), edges);
        if !graph.is_connected_without(None) {
            return Err(Error::DisconnectedGraph);
        }
        Ok(graph)
    }

    /// Builds a graph on vertices `v0..v{n-1}` with edges `e0, e1, ...`.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize, Rational)]) -> Result<MetricGraph> {
        let raw = RawGraph {
            vertices: (0..vertex_count).map(|i| format!("v{i}")).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(i, (u, v, len))| RawEdge {
                    id: format!("e{i}"),
                    ends: (format!("v{u}"), format!("v{v}")),
                    length: len.clone(),
                })
                .collect(),
        };
        Self::validate_model(&raw)
    }

    fn assemble(vertices: Vec<String>, edges: Vec<Edge>) -> MetricGraph {
        let mut incident = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incident[e.tail].push(i);
            if e.head != e.tail {
                incident[e.head].push(i);
            }
        }
        MetricGraph { vertices, edges, incident }
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.id.clone(),
                    ends: (self.vertices[e.tail].clone(), self.vertices[e.head].clone()),
                    length: e.length.clone(),
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Edges incident to `v`; a loop is listed once.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// First Betti number, `#E - #V + 1`.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    pub fn total_length(&self) -> Rational {
        self.edges.iter().fold(Rational::zero(), |acc, e| acc + &e.length)
    }

    /// The canonical point at `offset` along `edge`.
    pub fn point(&self, edge: usize, offset: Rational) -> Result<Point> {
        let e = self.edges.get(edge).ok_or_else(|| Error::UnknownEdge(format!("#{edge}")))?;
        if offset.is_negative() || offset > e.length {
            return Err(Error::OffsetOutOfRange { edge: e.id.clone(), offset: offset.to_string() });
        }
        Ok(if offset.is_zero() {
            Point::Vertex(e.tail)
        } else if offset == e.length {
            Point::Vertex(e.head)
        } else {
            Point::Interior { edge, offset }
        })
    }

    pub fn vertex(&self, name: &str) -> Result<Point> {
        self.vertex_index(name).map(Point::Vertex).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Point at `offset` along the edge with the given id.
    pub fn point_on(&self, edge_id: &str, offset: Rational) -> Result<Point> {
        let e = self.edge_index(edge_id).ok_or_else(|| Error::UnknownEdge(edge_id.to_string()))?;
        self.point(e, offset)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Vertex(v) => *v < self.vertices.len(),
            Point::Interior { edge, offset } => {
                *edge < self.edges.len() && offset.is_positive() && *offset < self.edges[*edge].length
            }
        }
    }

    /// Number of components of a small punctured neighbourhood of `p`.
    pub fn valence(&self, p: &Point) -> usize {
        match p {
            Point::Interior { .. } => 2,
            Point::Vertex(v) => self.incident[*v].iter().map(|&e| if self.edges[e].is_loop() { 2 } else { 1 }).sum(),
        }
    }

    pub fn same_point(&self, x: &Point, y: &Point) -> bool {
        x == y
    }

    /// Component representative of every vertex once edge `skip` is deleted.
    pub(crate) fn components_without(&self, skip: Option<usize>) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let a = find(&mut parent, e.tail);
            let b = find(&mut parent, e.head);
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices.len()).map(|v| find(&mut parent, v)).collect()
    }

    fn is_connected_without(&self, skip: Option<usize>) -> bool {
        let comp = self.components_without(skip);
        comp.iter().all(|&c| c == comp[0])
    }

    pub fn is_bridge(&self, edge: usize) -> bool {
        let e = &self.edges[edge];
        if e.is_loop() {
            return false;
        }
        let comp = self.components_without(Some(edge));
        comp[e.tail] != comp[e.head]
    }

    pub fn bridges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.is_bridge(e)).collect()
    }

    pub fn segment_class(&self, segment: &Segment) -> Result<SegmentClass> {
        segment.validate(self)?;
        let e = &self.edges[segment.edge];
        let whole = segment.start.is_zero() && segment.end == e.length;
        Ok(if e.is_loop() && whole {
            SegmentClass::Loop
        } else if self.is_bridge(segment.edge) {
            SegmentClass::Bridge
        } else {
            SegmentClass::Ordinary
        })
    }

    /// Shortest-path distance between two points.
    pub fn path_distance(&self, x: &Point, y: &Point) -> Rational {
        if x == y {
            return Rational::zero();
        }
        let model = Model::new(self, [x, y]);
        let source = model.node(x);
        let target = model.node(y);
        let dist = model.shortest_paths(source);
        dist[target].clone().expect("graph is connected")
    }

    /// Refines the model so that every given point becomes a vertex.
    ///
    /// New vertices are named `<edge id>@<offset>`; an edge split into
    /// pieces gets ids `<edge id>#0`, `<edge id>#1`, ... in order.
    pub fn subdivide_at(&self, points: &[Point]) -> (MetricGraph, Refinement) {
        let model = Model::new(self, points.iter());
        let mut vertices = self.vertices.clone();
        let mut new_vertices = BTreeMap::new();
        for (node, p) in model.nodes.iter().enumerate().skip(self.vertices.len()) {
            if let Point::Interior { edge, offset } = p {
                vertices.push(format!("{}@{}", self.edges[*edge].id, offset));
                new_vertices.insert(p.clone(), node);
            }
        }
        let mut edges = Vec::new();
        let mut pieces = vec![Vec::new(); self.edges.len()];
        let mut origin = Vec::new();
        for (e, piece_ids) in model.edge_pieces.iter().enumerate() {
            let split = piece_ids.len() > 1;
            for (k, &pid) in piece_ids.iter().enumerate() {
                let piece = &model.pieces[pid];
                let id = if split { format!("{}#{}", self.edges[e].id, k) } else { self.edges[e].id.clone() };
                pieces[e].push((edges.len(), piece.start.clone()));
                origin.push((e, piece.start.clone()));
                edges.push(Edge { id, tail: piece.from, head: piece.to, length: piece.length.clone() });
            }
        }
        let refinement = Refinement { pieces, origin, new_vertices, original_vertex_count: self.vertices.len() };
        (Self::assemble(vertices, edges), refinement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn theta() -> MetricGraph {
        MetricGraph::from_edges(2, &[(0, 1, int(1)), (0, 1, int(1)), (0, 1, int(1))]).unwrap()
    }

    fn circle(len: Rational) -> MetricGraph {
        MetricGraph::from_edges(1, &[(0, 0, len)]).unwrap()
    }

    #[test]
    fn validation_examples() {
        let path = MetricGraph::from_edges(2, &[(0, 1, int(1))]).unwrap();
        assert_eq!(path.genus(), 0);
        assert_eq!(theta().genus(), 2);
        assert_eq!(MetricGraph::from_edges(2, &[(0, 1, int(0))]), Err(Error::NonpositiveLength { edge: "e0".into() }));
        assert_eq!(MetricGraph::from_edges(3, &[(0, 1, int(1))]), Err(Error::DisconnectedGraph));
        let raw = RawGraph {
            vertices: vec!["a".into()],
            edges: vec![RawEdge { id: "x".into(), ends: ("a".into(), "b".into()), length: int(1) }],
        };
        assert_eq!(
            MetricGraph::validate_model(&raw),
            Err(Error::DanglingEndpoint { edge: "x".into(), vertex: "b".into() })
        );
    }

    #[test]
    fn genus_of_tree_and_circle() {
        let tree = MetricGraph::from_edges(
            8,
            &[
                (0, 1, int(1)),
                (1, 2, int(2)),
                (1, 3, int(1)),
                (3, 4, int(1)),
                (3, 5, int(3)),
                (5, 6, int(1)),
                (5, 7, int(1)),
            ],
        )
        .unwrap();
        assert_eq!(tree.genus(), 0);
        assert_eq!(circle(int(1)).genus(), 1);
    }

    #[test]
    fn valences() {
        let g = theta();
        assert_eq!(g.valence(&Point::Vertex(0)), 3);
        assert_eq!(g.valence(&g.point(0, rat(1, 2)).unwrap()), 2);
        let wedge = MetricGraph::from_edges(1, &[(0, 0, int(1)), (0, 0, int(1)), (0, 0, int(2))]).unwrap();
        assert_eq!(wedge.valence(&Point::Vertex(0)), 6);
    }

    #[test]
    fn segment_classes() {
        let dumbbell = MetricGraph::from_edges(2, &[(0, 0, int(1)), (0, 1, int(1)), (1, 1, int(1))]).unwrap();
        assert_eq!(dumbbell.segment_class(&Segment::whole(&dumbbell, 1)).unwrap(), SegmentClass::Bridge);
        let c = circle(int(1));
        assert_eq!(c.segment_class(&Segment::whole(&c, 0)).unwrap(), SegmentClass::Loop);
        let half = Segment { edge: 0, start: rat(0, 1), end: rat(1, 2) };
        assert_eq!(c.segment_class(&half).unwrap(), SegmentClass::Ordinary);
        let t = theta();
        for e in 0..3 {
            assert_eq!(t.segment_class(&Segment::whole(&t, e)).unwrap(), SegmentClass::Ordinary);
        }
    }

    #[test]
    fn canonical_points_and_distances() {
        let t = theta();
        assert_eq!(t.point(0, int(1)).unwrap(), Point::Vertex(1));
        assert_eq!(t.point(0, int(0)).unwrap(), Point::Vertex(0));
        assert!(t.point(0, int(2)).is_err());
        assert_eq!(t.path_distance(&Point::Vertex(0), &Point::Vertex(1)), int(1));
        let c = circle(int(4));
        assert_eq!(c.path_distance(&Point::Vertex(0), &c.point(0, int(3)).unwrap()), int(1));
        let a = c.point(0, rat(1, 2)).unwrap();
        let b = c.point(0, rat(7, 2)).unwrap();
        assert_eq!(c.path_distance(&a, &b), int(1));
    }

    #[test]
    fn subdivision_examples() {
        let c = circle(int(1));
        let (r, map) = c.subdivide_at(&[c.point(0, rat(1, 2)).unwrap()]);
        assert_eq!((r.vertex_count(), r.edge_count(), r.genus()), (2, 2, 1));
        assert!(r.edges().iter().all(|e| e.length == rat(1, 2)));
        let p = c.point(0, rat(3, 4)).unwrap();
        assert_eq!(map.to_original(&map.to_refined(&p)), p);

        let (same, _) = c.subdivide_at(&[Point::Vertex(0)]);
        assert_eq!(same, c);

        let t = theta();
        let mids: Vec<Point> = (0..3).map(|e| t.point(e, rat(1, 2)).unwrap()).collect();
        let (r, _) = t.subdivide_at(&mids);
        assert_eq!((r.vertex_count(), r.edge_count(), r.genus()), (5, 6, 2));
    }
}
