//! Continuous piecewise-linear functions on a metric graph.
//!
//! A function stores its value at every vertex and, for every edge, the
//! interior breakpoints `(offset, value)` where it changes slope. Between
//! consecutive knots it interpolates linearly. Continuity is built into the
//! representation. Interior knots at which the two adjacent slopes agree are
//! dropped, so two functions are equal exactly when their representations are.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::graph::{MetricGraph, Point};
use crate::model::Model;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    vertex_values: Vec<Rational>,
    interior: Vec<Vec<(Rational, Rational)>>,
}

fn slope(a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

impl PlFunction {
    pub fn constant(graph: &MetricGraph, c: Rational) -> PlFunction {
        PlFunction { vertex_values: vec![c; graph.vertex_count()], interior: vec![Vec::new(); graph.edge_count()] }
    }

    pub fn zero(graph: &MetricGraph) -> PlFunction {
        Self::constant(graph, Rational::zero())
    }

    /// Builds a function from vertex values and per-edge interior knots.
    /// Knots must lie strictly inside their edge; they are sorted here.
    pub fn from_parts(
        graph: &MetricGraph,
        vertex_values: Vec<Rational>,
        mut interior: Vec<Vec<(Rational, Rational)>>,
    ) -> Option<PlFunction> {
        if vertex_values.len() != graph.vertex_count() || interior.len() != graph.edge_count() {
            return None;
        }
        for (e, knots) in interior.iter_mut().enumerate() {
            knots.sort_by(|a, b| a.0.cmp(&b.0));
            let len = &graph.edge(e).length;
            if knots.iter().any(|(o, _)| !o.is_positive() || o >= len) || knots.windows(2).any(|w| w[0].0 == w[1].0) {
                return None;
            }
        }
        let mut f = PlFunction { vertex_values, interior };
        f.simplify(graph);
        Some(f)
    }

    /// Linear interpolation of per-node values on a refined model.
    pub(crate) fn from_node_values(model: &Model<'_>, values: &[Rational]) -> PlFunction {
        let graph = model.graph;
        let vertex_values = values[..graph.vertex_count()].to_vec();
        let interior = model
            .edge_pieces
            .iter()
            .map(|pieces| {
                pieces[1..]
                    .iter()
                    .map(|&pid| {
                        let p = &model.pieces[pid];
                        (p.start.clone(), values[p.from].clone())
                    })
                    .collect()
            })
            .collect();
        let mut f = PlFunction { vertex_values, interior };
        f.simplify(graph);
        f
    }

    fn simplify(&mut self, graph: &MetricGraph) {
        for e in 0..graph.edge_count() {
            let knots = self.edge_knots(graph, e);
            let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(knots.len());
            for i in 1..knots.len() - 1 {
                let prev = kept.last().unwrap_or(&knots[0]);
                if slope(prev, &knots[i]) != slope(&knots[i], &knots[i + 1]) {
                    kept.push(knots[i].clone());
                }
            }
            self.interior[e] = kept;
        }
    }

    pub fn vertex_value(&self, v: usize) -> &Rational {
        &self.vertex_values[v]
    }

    /// Interior breakpoints of an edge.
    pub fn breakpoints(&self, e: usize) -> &[(Rational, Rational)] {
        &self.interior[e]
    }

    /// All knots of an edge including both endpoints, ordered by offset.
    pub fn edge_knots(&self, graph: &MetricGraph, e: usize) -> Vec<(Rational, Rational)> {
        let edge = graph.edge(e);
        let mut out = Vec::with_capacity(self.interior[e].len() + 2);
        out.push((Rational::zero(), self.vertex_values[edge.tail].clone()));
        out.extend(self.interior[e].iter().cloned());
        out.push((edge.length.clone(), self.vertex_values[edge.head].clone()));
        out
    }

    /// `(start, end, slope)` for every linear piece, slopes taken tail to head.
    pub fn edge_slopes(&self, graph: &MetricGraph, e: usize) -> Vec<(Rational, Rational, Rational)> {
        self.edge_knots(graph, e).windows(2).map(|w| (w[0].0.clone(), w[1].0.clone(), slope(&w[0], &w[1]))).collect()
    }

    pub fn value_on_edge(&self, graph: &MetricGraph, e: usize, offset: &Rational) -> Rational {
        let knots = self.edge_knots(graph, e);
        let i = knots.partition_point(|(o, _)| o <= offset);
        if i == 0 {
            return knots[0].1.clone();
        }
        if i == knots.len() {
            return knots[i - 1].1.clone();
        }
        let (a, b) = (&knots[i - 1], &knots[i]);
        &a.1 + slope(a, b) * (offset - &a.0)
    }

    pub fn value_at(&self, graph: &MetricGraph, p: &Point) -> Rational {
        match p {
            Point::Vertex(v) => self.vertex_values[*v].clone(),
            Point::Interior { edge, offset } => self.value_on_edge(graph, *edge, offset),
        }
    }

    fn combine(
        &self,
        other: &PlFunction,
        graph: &MetricGraph,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> PlFunction {
        let vertex_values = self.vertex_values.iter().zip(&other.vertex_values).map(|(a, b)| op(a, b)).collect();
        let interior = (0..graph.edge_count())
            .map(|e| {
                let mut offsets: Vec<Rational> =
                    self.interior[e].iter().chain(&other.interior[e]).map(|(o, _)| o.clone()).collect();
                offsets.sort();
                offsets.dedup();
                offsets
                    .into_iter()
                    .map(|o| {
                        let v = op(&self.value_on_edge(graph, e, &o), &other.value_on_edge(graph, e, &o));
                        (o, v)
                    })
                    .collect()
            })
            .collect();
        let mut f = PlFunction { vertex_values, interior };
        f.simplify(graph);
        f
    }

    pub fn add(&self, other: &PlFunction, graph: &MetricGraph) -> PlFunction {
        self.combine(other, graph, |a, b| a + b)
    }

    pub fn sub(&self, other: &PlFunction, graph: &MetricGraph) -> PlFunction {
        self.combine(other, graph, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> PlFunction {
        if c.is_zero() {
            return PlFunction {
                vertex_values: vec![Rational::zero(); self.vertex_values.len()],
                interior: vec![Vec::new(); self.interior.len()],
            };
        }
        PlFunction {
            vertex_values: self.vertex_values.iter().map(|v| v * c).collect(),
            interior: self.interior.iter().map(|k| k.iter().map(|(o, v)| (o.clone(), v * c)).collect()).collect(),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> PlFunction {
        PlFunction {
            vertex_values: self.vertex_values.iter().map(|v| v + c).collect(),
            interior: self.interior.iter().map(|k| k.iter().map(|(o, v)| (o.clone(), v + c)).collect()).collect(),
        }
    }

    /// Pointwise `max(f, level)`.
    pub fn max_with(&self, graph: &MetricGraph, level: &Rational) -> PlFunction {
        let vertex_values =
            self.vertex_values.iter().map(|v| if v > level { v.clone() } else { level.clone() }).collect();
        let interior = (0..graph.edge_count())
            .map(|e| {
                let knots = self.edge_knots(graph, e);
                let mut out = Vec::new();
                for (i, w) in knots.windows(2).enumerate() {
                    if i > 0 {
                        let v = &w[0].1;
                        out.push((w[0].0.clone(), if v > level { v.clone() } else { level.clone() }));
                    }
                    let (a, b) = (&w[0], &w[1]);
                    if (a.1 < *level && b.1 > *level) || (a.1 > *level && b.1 < *level) {
                        let t = &a.0 + (level - &a.1) / slope(a, b);
                        out.push((t, level.clone()));
                    }
                }
                out
            })
            .collect();
        let mut f = PlFunction { vertex_values, interior };
        f.simplify(graph);
        f
    }

    /// The real-valued principal divisor: the sum of outgoing slopes at every
    /// point where it is nonzero.
    pub fn laplacian(&self, graph: &MetricGraph) -> BTreeMap<Point, Rational> {
        let mut out: BTreeMap<Point, Rational> = BTreeMap::new();
        for e in 0..graph.edge_count() {
            let edge = graph.edge(e);
            let slopes = self.edge_slopes(graph, e);
            let first = &slopes[0].2;
            let last = &slopes[slopes.len() - 1].2;
            *out.entry(Point::Vertex(edge.tail)).or_insert_with(Rational::zero) += first;
            *out.entry(Point::Vertex(edge.head)).or_insert_with(Rational::zero) -= last;
            for w in slopes.windows(2) {
                let p = Point::Interior { edge: e, offset: w[0].1.clone() };
                *out.entry(p).or_insert_with(Rational::zero) += &w[1].2 - &w[0].2;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn has_integer_slopes(&self, graph: &MetricGraph) -> bool {
        (0..graph.edge_count()).all(|e| self.edge_slopes(graph, e).iter().all(|(_, _, s)| s.is_integer()))
    }

    pub fn max_abs_slope(&self, graph: &MetricGraph) -> Rational {
        (0..graph.edge_count())
            .flat_map(|e| self.edge_slopes(graph, e))
            .map(|(_, _, s)| s.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn max_value(&self) -> Rational {
        self.vertex_values
            .iter()
            .chain(self.interior.iter().flatten().map(|(_, v)| v))
            .max()
            .cloned()
            .expect("graph has a vertex")
    }

    pub fn min_value(&self) -> Rational {
        self.vertex_values
            .iter()
            .chain(self.interior.iter().flatten().map(|(_, v)| v))
            .min()
            .cloned()
            .expect("graph has a vertex")
    }

    /// `∫ f dx` over `[a, b]` of edge `e`, exact by the trapezoid rule on
    /// each linear piece.
    pub fn integrate_on_edge(&self, graph: &MetricGraph, e: usize, a: &Rational, b: &Rational) -> Rational {
        let mut points = vec![a.clone()];
        points.extend(self.interior[e].iter().map(|(o, _)| o.clone()).filter(|o| o > a && o < b));
        points.push(b.clone());
        points
            .windows(2)
            .map(|w| {
                let fa = self.value_on_edge(graph, e, &w[0]);
                let fb = self.value_on_edge(graph, e, &w[1]);
                (fa + fb) * (&w[1] - &w[0]) / Rational::from_integer(2.into())
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn circle() -> MetricGraph {
        MetricGraph::from_edges(1, &[(0, 0, int(1))]).unwrap()
    }

    fn tent() -> PlFunction {
        let g = circle();
        PlFunction::from_parts(&g, vec![int(0)], vec![vec![(rat(1, 2), rat(1, 2))]]).unwrap()
    }

    #[test]
    fn evaluation_and_slopes() {
        let g = circle();
        let f = tent();
        assert_eq!(f.value_at(&g, &g.point(0, rat(1, 4)).unwrap()), rat(1, 4));
        assert_eq!(f.value_at(&g, &g.point(0, rat(3, 4)).unwrap()), rat(1, 4));
        assert_eq!(f.max_abs_slope(&g), int(1));
        assert!(f.has_integer_slopes(&g));
    }

    #[test]
    fn laplacian_of_tent() {
        let g = circle();
        let lap = tent().laplacian(&g);
        assert_eq!(lap.get(&Point::Vertex(0)), Some(&int(2)));
        assert_eq!(lap.get(&g.point(0, rat(1, 2)).unwrap()), Some(&int(-2)));
        assert_eq!(lap.len(), 2);
    }

    #[test]
    fn collinear_knots_are_merged() {
        let g = circle();
        let f = PlFunction::from_parts(&g, vec![int(0)], vec![vec![(rat(1, 4), rat(1, 4)), (rat(1, 2), rat(1, 2))]])
            .unwrap();
        assert_eq!(f, tent());
        let zero = f.sub(&f, &g);
        assert_eq!(zero, PlFunction::zero(&g));
    }

    #[test]
    fn max_with_level() {
        let g = circle();
        let m = tent().max_with(&g, &rat(1, 4));
        assert_eq!(m.breakpoints(0), &[(rat(1, 4), rat(1, 4)), (rat(1, 2), rat(1, 2)), (rat(3, 4), rat(1, 4))]);
        assert_eq!(m.vertex_value(0), &rat(1, 4));
    }

    #[test]
    fn integral_is_exact() {
        let g = circle();
        assert_eq!(tent().integrate_on_edge(&g, 0, &int(0), &int(1)), rat(1, 4));
        assert_eq!(tent().integrate_on_edge(&g, 0, &rat(1, 4), &rat(1, 2)), rat(3, 32));
    }
}
