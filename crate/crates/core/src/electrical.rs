//! The graph as a resistor network: voltage functions, effective resistance
//! and the canonical measure.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::graph::{MetricGraph, Point, Segment};
use crate::linalg::{CurrentVector, LaplacianSystem, Resistance};
use crate::model::Model;
use crate::plfn::PlFunction;
use crate::rational::Rational;
use crate::Result;

/// `j` with `Div(j) = sink - source` and `j(sink) = 0`: the potential when
/// one unit of current enters at `source` and leaves at `sink`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageFunction {
    pub source: Point,
    pub sink: Point,
    pub function: PlFunction,
}

impl VoltageFunction {
    pub fn value_at(&self, graph: &MetricGraph, x: &Point) -> Rational {
        self.function.value_at(graph, x)
    }
}

/// Potential grounded at `ground` for point currents `currents` (which must
/// sum to zero). The result `f` satisfies `Div(f) = -currents`.
pub fn potential(graph: &MetricGraph, currents: &BTreeMap<Point, Rational>, ground: &Point) -> Result<PlFunction> {
    let model = Model::new(graph, currents.keys().chain(core::iter::once(ground)));
    let mut b = vec![Rational::zero(); model.node_count()];
    for (p, c) in currents {
        b[model.node(p)] += c;
    }
    let sys = LaplacianSystem::new(model.node_count(), &model.resistors(None), model.node(ground));
    let x = sys.solve_grounded(&CurrentVector::new(b)?)?;
    Ok(PlFunction::from_node_values(&model, &x))
}

pub fn voltage_function(graph: &MetricGraph, source: &Point, sink: &Point) -> VoltageFunction {
    let function = if source == sink {
        PlFunction::zero(graph)
    } else {
        let mut currents = BTreeMap::new();
        currents.insert(source.clone(), Rational::one());
        currents.insert(sink.clone(), -Rational::one());
        potential(graph, &currents, sink).expect("connected graph with conserved current")
    };
    VoltageFunction { source: source.clone(), sink: sink.clone(), function }
}

/// Effective resistance `r(x, y)`.
pub fn resistance(graph: &MetricGraph, x: &Point, y: &Point) -> Rational {
    if x == y {
        return Rational::zero();
    }
    voltage_function(graph, x, y).value_at(graph, x)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureRow {
    pub edge: usize,
    /// Mass per unit length.
    pub density: Rational,
    pub mass: Rational,
}

/// Edgewise-constant density of the canonical measure on the graph's model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureTable {
    pub rows: Vec<MeasureRow>,
}

impl MeasureTable {
    pub fn total(&self) -> Rational {
        self.rows.iter().fold(Rational::zero(), |acc, r| acc + &r.mass)
    }

    pub fn density(&self, edge: usize) -> &Rational {
        &self.rows[edge].density
    }

    pub fn mass(&self, edge: usize) -> &Rational {
        &self.rows[edge].mass
    }

    /// Mass of a sub-interval of an edge.
    pub fn segment_mass(&self, segment: &Segment) -> Rational {
        &self.rows[segment.edge].density * segment.length()
    }
}

/// Resistance between the endpoints of `edge` once its interior is removed.
pub fn complement_resistance(graph: &MetricGraph, edge: usize) -> Resistance {
    let e = graph.edge(edge);
    if e.is_loop() {
        return Resistance::Finite(Rational::zero());
    }
    let resistors: Vec<(usize, usize, Rational)> = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != edge)
        .map(|(_, e)| (e.tail, e.head, e.length.clone()))
        .collect();
    LaplacianSystem::new(graph.vertex_count(), &resistors, e.head).vertex_resistance(e.tail, e.head)
}

/// Density `1/(L_e + R_{Γ∖e})` on every edge; `0` when removing the edge
/// disconnects its endpoints.
pub fn canonical_measure(graph: &MetricGraph) -> MeasureTable {
    let rows = (0..graph.edge_count())
        .map(|edge| {
            let len = &graph.edge(edge).length;
            let density = match complement_resistance(graph, edge) {
                Resistance::Infinite => Rational::zero(),
                Resistance::Finite(r) => (len + r).recip(),
            };
            let mass = &density * len;
            MeasureRow { edge, density, mass }
        })
        .collect();
    MeasureTable { rows }
}

/// Density of the canonical measure on `segment` computed from the
/// definition `-(1/2) d²/dx² r(x, y0)`, using exact second differences of
/// the resistance at `mesh + 1` equispaced points.
pub fn second_difference_oracle(graph: &MetricGraph, segment: &Segment, y0: &Point, mesh: u32) -> Result<Rational> {
    if mesh < 2 {
        return Err(Error::InvalidMesh);
    }
    let (s, t) = segment.endpoints(graph)?;
    if let Point::Interior { edge, offset } = y0 {
        if *edge == segment.edge && *offset > segment.start && *offset < segment.end {
            return Err(Error::InvalidSegment);
        }
    }
    let step = segment.length() / Rational::from_integer(mesh.into());
    let values: Vec<Rational> = (0..=mesh)
        .map(|k| {
            let x = match k {
                0 => s.clone(),
                k if k == mesh => t.clone(),
                k => graph
                    .point(segment.edge, &segment.start + &step * Rational::from_integer(k.into()))
                    .expect("inside segment"),
            };
            resistance(graph, &x, y0)
        })
        .collect();
    let second: Vec<Rational> =
        values.windows(3).map(|w| &w[0] - &w[1] * Rational::from_integer(2.into()) + &w[2]).collect();
    if second.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NotQuadratic);
    }
    Ok(-&second[0] / (&step * &step * Rational::from_integer(2.into())))
}
