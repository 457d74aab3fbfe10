//! Divisors, piecewise Z-linear functions and reduced divisors.
//!
//! Reduction uses Dhar's burning algorithm on the metric graph: burn from the
//! base point, and while some closed set survives, fire it toward the fire by
//! the largest amount that does not pass a node. Divisors that are not
//! effective away from the base are first made so by borrowing chips from the
//! base along reduced divisors of `(g + 1)·q`.
//!
//! Sign convention: `Div(f)(x)` is the sum of the outgoing slopes of `f` at
//! `x`, so a function with a local minimum at `x` has a positive coefficient
//! there.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::iter;

use num_traits::{Signed, Zero};

use crate::electrical::potential;
use crate::error::Error;
use crate::graph::{MetricGraph, Point};
use crate::model::Model;
use crate::plfn::PlFunction;
use crate::rational::Rational;
use crate::Result;

/// A finite formal sum of points with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    /// `coeff · p`.
    pub fn point(p: Point, coeff: i64) -> Divisor {
        let mut d = Divisor::new();
        d.add_at(p, coeff);
        d
    }

    pub fn from_pairs<I: IntoIterator<Item = (Point, i64)>>(pairs: I) -> Divisor {
        let mut d = Divisor::new();
        for (p, c) in pairs {
            d.add_at(p, c);
        }
        d
    }

    pub fn add_at(&mut self, p: Point, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.coeffs.entry(p) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, p: &Point) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> + '_ {
        self.coeffs.iter().map(|(p, c)| (p, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> + '_ {
        self.coeffs.keys()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    pub fn is_effective_away_from(&self, q: &Point) -> bool {
        self.coeffs.iter().all(|(p, &c)| c > 0 || p == q)
    }

    /// Degree of the part supported outside `q`.
    pub fn degree_away_from(&self, q: &Point) -> i64 {
        self.coeffs.iter().filter(|(p, _)| *p != q).map(|(_, c)| c).sum()
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, c) in other.iter() {
            d.add_at(p.clone(), c);
        }
        d
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::new();
        }
        Divisor { coeffs: self.coeffs.iter().map(|(p, c)| (p.clone(), c * k)).collect() }
    }

    /// The positive part `max(D, 0)`.
    pub fn positive_part(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().filter(|(_, &c)| c > 0).map(|(p, c)| (p.clone(), *c)).collect() }
    }

    /// The negative part `max(-D, 0)`, as an effective divisor.
    pub fn negative_part(&self) -> Divisor {
        Divisor { coeffs: self.coeffs.iter().filter(|(_, &c)| c < 0).map(|(p, c)| (p.clone(), -c)).collect() }
    }

    fn as_currents(&self) -> BTreeMap<Point, Rational> {
        self.coeffs.iter().map(|(p, c)| (p.clone(), Rational::from_integer((*c).into()))).collect()
    }
}

/// A piecewise linear function with integer slopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlzFunction(PlFunction);

impl PlzFunction {
    pub fn new(graph: &MetricGraph, f: PlFunction) -> Result<PlzFunction> {
        if f.has_integer_slopes(graph) {
            Ok(PlzFunction(f))
        } else {
            Err(Error::NonIntegralSlope)
        }
    }

    pub fn zero(graph: &MetricGraph) -> PlzFunction {
        PlzFunction(PlFunction::zero(graph))
    }

    pub fn function(&self) -> &PlFunction {
        &self.0
    }

    pub fn into_function(self) -> PlFunction {
        self.0
    }

    pub fn principal_divisor(&self, graph: &MetricGraph) -> Divisor {
        principal_divisor(graph, self)
    }

    /// Positive part of `Div(f)`, supported at local minima.
    pub fn zeros(&self, graph: &MetricGraph) -> Divisor {
        self.principal_divisor(graph).positive_part()
    }

    /// Negative part of `Div(f)`, supported at local maxima.
    pub fn poles(&self, graph: &MetricGraph) -> Divisor {
        self.principal_divisor(graph).negative_part()
    }
}

pub fn principal_divisor(graph: &MetricGraph, f: &PlzFunction) -> Divisor {
    Divisor::from_pairs(f.0.laplacian(graph).into_iter().map(|(p, c)| {
        let c = c.to_integer();
        (p, i64::try_from(c).expect("slope sum fits in i64"))
    }))
}

/// `poles(f) + Div(max(f, level))`, an effective divisor equivalent to both
/// `zeros(f)` and `poles(f)`.
pub fn interpolate_level(graph: &MetricGraph, f: &PlzFunction, level: &Rational) -> Divisor {
    let g = PlzFunction(f.0.max_with(graph, level));
    f.poles(graph).plus(&g.principal_divisor(graph))
}

/// The function `f` with `Div(f) = target - source`, normalized by `f(ground) = 0`.
/// Returns `None` when `f` is not piecewise Z-linear, i.e. the divisors are
/// not linearly equivalent (or their degrees differ).
pub fn equivalence_witness(
    graph: &MetricGraph,
    source: &Divisor,
    target: &Divisor,
    ground: &Point,
) -> Option<PlzFunction> {
    if source.degree() != target.degree() {
        return None;
    }
    let f = potential(graph, &source.minus(target).as_currents(), ground).expect("degree zero current");
    PlzFunction::new(graph, f).ok()
}

/// `Σ_{i,j} j_q^{y_i}(y_j)` over the points `y_i` of `d` with multiplicity.
pub fn q_energy(graph: &MetricGraph, q: &Point, d: &Divisor) -> Result<Rational> {
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    let mut currents = d.as_currents();
    *currents.entry(q.clone()).or_insert_with(Rational::zero) -= Rational::from_integer(d.degree().into());
    let j = potential(graph, &currents, q)?;
    Ok(d.iter().fold(Rational::zero(), |acc, (p, c)| acc + j.value_at(graph, p) * Rational::from_integer(c.into())))
}

/// Where a chip fired from `node` along `piece` lands after moving `eps`.
fn landing(model: &Model<'_>, piece: usize, node: usize, eps: &Rational) -> Point {
    let p = &model.pieces[piece];
    let offset = if p.from == node { &p.start + eps } else { &p.end - eps };
    model.graph.point(p.edge, offset).expect("landing point lies on the piece")
}

/// Dhar's burning from `q` with `chips` indexed by model node. Returns the
/// burnt mask, or `None` if everything burns.
fn burn(model: &Model<'_>, chips: &[i64], q: usize) -> Option<Vec<bool>> {
    let n = model.node_count();
    let mut burnt = vec![false; n];
    let mut heat = vec![0i64; n];
    burnt[q] = true;
    let mut stack = vec![q];
    while let Some(u) = stack.pop() {
        for &(_, w) in &model.adj[u] {
            if burnt[w] {
                continue;
            }
            heat[w] += 1;
            if heat[w] > chips[w] {
                burnt[w] = true;
                stack.push(w);
            }
        }
    }
    if burnt.iter().all(|&b| b) {
        None
    } else {
        Some(burnt)
    }
}

fn chip_vector(model: &Model<'_>, d: &Divisor) -> Vec<i64> {
    let mut chips = vec![0i64; model.node_count()];
    for (p, c) in d.iter() {
        chips[model.node(p)] += c;
    }
    chips
}

/// `q`-reduced form of a divisor that is effective away from `q`.
pub(crate) fn dhar_reduce(graph: &MetricGraph, q: &Point, d: &Divisor) -> Divisor {
    debug_assert!(d.is_effective_away_from(q));
    let mut d = d.clone();
    loop {
        let model = Model::new(graph, d.support().chain(iter::once(q)));
        let chips = chip_vector(&model, &d);
        let Some(burnt) = burn(&model, &chips, model.node(q)) else {
            return d;
        };
        let mut moves: Vec<(usize, usize)> = Vec::new();
        let mut eps: Option<Rational> = None;
        for u in (0..model.node_count()).filter(|&u| !burnt[u]) {
            for &(pid, w) in &model.adj[u] {
                if burnt[w] {
                    moves.push((pid, u));
                    let len = &model.pieces[pid].length;
                    if eps.as_ref().is_none_or(|e| len < e) {
                        eps = Some(len.clone());
                    }
                }
            }
        }
        let eps = eps.expect("an unburnt closed set borders the fire");
        for (pid, u) in moves {
            d.add_at(model.nodes[u].clone(), -1);
            d.add_at(landing(&model, pid, u, &eps), 1);
        }
    }
}

/// Whether `d` is `q`-reduced: effective away from `q` and burnt completely from `q`.
pub fn is_reduced(graph: &MetricGraph, q: &Point, d: &Divisor) -> bool {
    if !d.is_effective_away_from(q) {
        return false;
    }
    let model = Model::new(graph, d.support().chain(iter::once(q)));
    burn(&model, &chip_vector(&model, d), model.node(q)).is_none()
}

/// `q`-reduced form of any divisor, without a witness.
pub fn reduced_form(graph: &MetricGraph, q: &Point, d: &Divisor) -> Divisor {
    dhar_reduce(graph, q, &make_effective_away(graph, q, d))
}

/// A divisor equivalent to `d` and effective away from `q`.
fn make_effective_away(graph: &MetricGraph, q: &Point, d: &Divisor) -> Divisor {
    if d.is_effective_away_from(q) {
        return d.clone();
    }
    let m = graph.genus() + 1;
    let mut out = d.clone();
    for (p, c) in d.iter().filter(|(p, c)| *c < 0 && *p != q) {
        // red_p(m·q) puts at least one chip on p because at most g sit elsewhere.
        let borrow = dhar_reduce(graph, p, &Divisor::point(q.clone(), m));
        debug_assert!(borrow.coeff(p) >= 1);
        let delta = borrow.minus(&Divisor::point(q.clone(), m));
        out = out.plus(&delta.scaled(-c));
    }
    debug_assert!(out.is_effective_away_from(q));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDivisor {
    pub base: Point,
    pub divisor: Divisor,
    /// `Div(witness) = divisor - input`, with `witness(base) = 0`.
    pub witness: PlzFunction,
}

pub fn reduce(graph: &MetricGraph, q: &Point, d: &Divisor) -> ReducedDivisor {
    let divisor = reduced_form(graph, q, d);
    let witness = equivalence_witness(graph, d, &divisor, q).expect("reduction preserves the class");
    ReducedDivisor { base: q.clone(), divisor, witness }
}

/// Whether the class of `d` contains an effective divisor.
pub fn is_effective_class(graph: &MetricGraph, d: &Divisor) -> bool {
    if d.degree() < 0 {
        return false;
    }
    if d.is_effective() {
        return true;
    }
    let q = d.iter().min_by_key(|(_, c)| *c).map(|(p, _)| p.clone()).expect("nonzero divisor");
    reduced_form(graph, &q, d).coeff(&q) >= 0
}

/// An effective divisor equivalent to `d`, if one exists.
pub fn effective_representative(graph: &MetricGraph, d: &Divisor) -> Option<Divisor> {
    if d.degree() < 0 {
        return None;
    }
    if d.is_effective() {
        return Some(d.clone());
    }
    let q = d.iter().min_by_key(|(_, c)| *c).map(|(p, _)| p.clone()).expect("nonzero divisor");
    let r = reduced_form(graph, &q, d);
    (r.coeff(&q) >= 0).then_some(r)
}

/// Vertices of the model together with every edge midpoint.
pub fn rank_determining_set(graph: &MetricGraph) -> Vec<Point> {
    (0..graph.vertex_count())
        .map(Point::Vertex)
        .chain((0..graph.edge_count()).map(|e| {
            let half = &graph.edge(e).length / Rational::from_integer(2.into());
            Point::Interior { edge: e, offset: half }
        }))
        .collect()
}

/// Whether `[d - E] ≥ 0` for every effective `E` of degree `k` supported on
/// `set[start..]`. `d` must be effective.
fn survives(graph: &MetricGraph, d: &Divisor, k: i64, set: &[Point], start: usize) -> bool {
    if k == 0 {
        return true;
    }
    for (i, x) in set.iter().enumerate().skip(start) {
        let red = dhar_reduce(graph, x, d);
        if red.coeff(x) < 1 {
            return false;
        }
        let rest = red.minus(&Divisor::point(x.clone(), 1));
        if !survives(graph, &rest, k - 1, set, i) {
            return false;
        }
    }
    true
}

/// Rank of an effective divisor, by definition over the rank-determining set.
fn rank_over_set(graph: &MetricGraph, d: &Divisor) -> i64 {
    let set = rank_determining_set(graph);
    let mut k = 0;
    while k < d.degree() && survives(graph, d, k + 1, &set, 0) {
        k += 1;
    }
    k
}

pub(crate) fn rank_of_effective(graph: &MetricGraph, d: &Divisor) -> i64 {
    let g = graph.genus();
    if d.degree() >= 2 * g - 1 {
        return d.degree() - g;
    }
    rank_over_set(graph, d)
}

/// Rank computed from the definition even where the degree alone decides it.
/// Exponential in the rank; meant for cross-checks.
pub fn rank_by_definition(graph: &MetricGraph, d: &Divisor) -> i64 {
    effective_representative(graph, d).map_or(-1, |e| rank_over_set(graph, &e))
}

/// Baker–Norine rank.
pub fn rank(graph: &MetricGraph, d: &Divisor) -> i64 {
    let g = graph.genus();
    if d.degree() >= 2 * g - 1 {
        return d.degree() - g;
    }
    match effective_representative(graph, d) {
        None => -1,
        Some(e) => rank_of_effective(graph, &e),
    }
}

/// `Σ (val(v) - 2)·v` over the vertices.
pub fn canonical_divisor(graph: &MetricGraph) -> Divisor {
    Divisor::from_pairs((0..graph.vertex_count()).map(|v| {
        let p = Point::Vertex(v);
        let k = graph.valence(&p) as i64 - 2;
        (p, k)
    }))
}

/// A witness `f` with `Div(f) = d - e` when the divisors are equivalent.
pub fn linearly_equivalent(graph: &MetricGraph, d: &Divisor, e: &Divisor) -> Option<PlzFunction> {
    if d.degree() != e.degree() {
        return None;
    }
    let q = Point::Vertex(0);
    if reduced_form(graph, &q, d) != reduced_form(graph, &q, e) {
        return None;
    }
    Some(equivalence_witness(graph, e, d, &q).expect("equivalent divisors have a Z-linear witness"))
}

/// `(edge, from, to, slope)` for every linear piece of a Z-linear function.
pub fn slope_table(graph: &MetricGraph, f: &PlzFunction) -> Vec<(usize, Rational, Rational, i64)> {
    let mut out = Vec::new();
    for e in 0..graph.edge_count() {
        for (a, b, s) in f.function().edge_slopes(graph, e) {
            let s = i64::try_from(s.to_integer()).expect("slope fits in i64");
            out.push((e, a, b, s));
        }
    }
    out
}

/// Distance moved by the chips between two divisors of the same degree,
/// measured as the largest gap of the sorted multisets on each edge. Used by
/// continuity checks; `None` if the divisors differ in combinatorial type.
pub fn chip_displacement(a: &Divisor, b: &Divisor) -> Option<Rational> {
    fn layout(d: &Divisor) -> BTreeMap<Option<usize>, Vec<Rational>> {
        let mut m: BTreeMap<Option<usize>, Vec<Rational>> = BTreeMap::new();
        for (p, c) in d.iter() {
            let (key, off) = match p {
                Point::Vertex(v) => (None, Rational::from_integer((*v as i64).into())),
                Point::Interior { edge, offset } => (Some(*edge), offset.clone()),
            };
            for _ in 0..c.max(0) {
                m.entry(key).or_default().push(off.clone());
            }
        }
        m
    }
    let la = layout(a);
    let lb = layout(b);
    if la.len() != lb.len() {
        return None;
    }
    let mut best = Rational::zero();
    for ((ka, va), (kb, vb)) in la.iter().zip(lb.iter()) {
        if ka != kb || va.len() != vb.len() {
            return None;
        }
        for (x, y) in va.iter().zip(vb.iter()) {
            if ka.is_none() && x != y {
                return None;
            }
            let d = (x - y).abs();
            if d > best {
                best = d;
            }
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn circle() -> MetricGraph {
        MetricGraph::from_edges(1, &[(0, 0, int(1))]).unwrap()
    }

    fn theta() -> MetricGraph {
        MetricGraph::from_edges(2, &[(0, 1, int(1)), (0, 1, int(1)), (0, 1, int(1))]).unwrap()
    }

    fn tent(g: &MetricGraph) -> PlzFunction {
        let f = PlFunction::from_parts(g, vec![int(0)], vec![vec![(rat(1, 2), rat(1, 2))]]).unwrap();
        PlzFunction::new(g, f).unwrap()
    }

    fn at(g: &MetricGraph, x: Rational) -> Point {
        g.point(0, x).unwrap()
    }

    #[test]
    fn constant_has_no_divisor() {
        let g = theta();
        let f = PlzFunction::new(&g, PlFunction::constant(&g, int(3))).unwrap();
        assert!(f.principal_divisor(&g).is_zero());
    }

    #[test]
    fn tent_divisor() {
        let g = circle();
        let d = tent(&g).principal_divisor(&g);
        assert_eq!(d, Divisor::from_pairs([(Point::Vertex(0), 2), (at(&g, rat(1, 2)), -2)]));
        assert_eq!(d.degree(), 0);
    }

    #[test]
    fn rejects_fractional_slopes() {
        let g = circle();
        let f = PlFunction::from_parts(&g, vec![int(0)], vec![vec![(rat(1, 2), rat(1, 4))]]).unwrap();
        assert_eq!(PlzFunction::new(&g, f), Err(Error::NonIntegralSlope));
    }

    #[test]
    fn bridge_tent() {
        let g = MetricGraph::from_edges(2, &[(0, 1, int(2))]).unwrap();
        let f = PlFunction::from_parts(&g, vec![int(0), int(1)], vec![vec![(int(1), int(1))]]).unwrap();
        let d = PlzFunction::new(&g, f).unwrap().principal_divisor(&g);
        assert_eq!(d, Divisor::from_pairs([(Point::Vertex(0), 1), (at(&g, int(1)), -1)]));
    }

    #[test]
    fn interpolation_levels() {
        let g = circle();
        let f = tent(&g);
        assert_eq!(interpolate_level(&g, &f, &int(1)), f.poles(&g));
        assert_eq!(interpolate_level(&g, &f, &int(-1)), f.zeros(&g));
        let mid = interpolate_level(&g, &f, &rat(1, 4));
        assert_eq!(mid, Divisor::from_pairs([(at(&g, rat(1, 4)), 1), (at(&g, rat(3, 4)), 1)]));
    }

    #[test]
    fn energies() {
        let g = circle();
        let q = Point::Vertex(0);
        assert_eq!(q_energy(&g, &q, &Divisor::point(q.clone(), 5)).unwrap(), int(0));
        let y = at(&g, rat(1, 3));
        assert_eq!(q_energy(&g, &q, &Divisor::point(y, 1)).unwrap(), rat(2, 9));
        let half = at(&g, rat(1, 2));
        assert_eq!(q_energy(&g, &q, &Divisor::point(half, 2)).unwrap(), int(1));
        assert_eq!(q_energy(&g, &q, &Divisor::point(q.clone(), -1)), Err(Error::NotEffective));
    }

    #[test]
    fn circle_reduction_with_witness() {
        let g = circle();
        let q = Point::Vertex(0);
        let d = Divisor::point(at(&g, rat(1, 2)), 2);
        let red = reduce(&g, &q, &d);
        assert_eq!(red.divisor, Divisor::point(q.clone(), 2));
        assert_eq!(red.witness.function(), tent(&g).function());
        assert_eq!(red.witness.principal_divisor(&g), red.divisor.minus(&d));
        assert!(is_reduced(&g, &q, &red.divisor));
        assert!(!is_reduced(&g, &q, &d));
        assert_eq!(reduce(&g, &q, &red.divisor).divisor, red.divisor);
    }

    #[test]
    fn reduction_of_non_effective() {
        let g = theta();
        let q = Point::Vertex(0);
        let d = Divisor::from_pairs([(Point::Vertex(1), -1), (g.point(0, rat(1, 3)).unwrap(), 2)]);
        let red = reduce(&g, &q, &d);
        assert!(red.divisor.is_effective_away_from(&q));
        assert_eq!(red.divisor.degree(), 1);
        assert_eq!(red.witness.principal_divisor(&g), red.divisor.minus(&d));
    }

    #[test]
    fn effective_classes() {
        let g = circle();
        let p = at(&g, rat(1, 3));
        assert!(!is_effective_class(&g, &Divisor::point(p.clone(), -1)));
        assert!(!is_effective_class(&g, &Divisor::from_pairs([(p.clone(), 1), (Point::Vertex(0), -1)])));
        assert!(is_effective_class(&g, &Divisor::point(p, 2)));
        assert!(is_effective_class(&g, &Divisor::new()));
    }

    #[test]
    fn ranks() {
        let t = theta();
        assert_eq!(rank(&t, &canonical_divisor(&t)), 1);
        assert_eq!(rank(&t, &Divisor::point(Point::Vertex(0), 1)), 0);
        let c = circle();
        for n in 1..4 {
            assert_eq!(rank(&c, &Divisor::point(Point::Vertex(0), n)), n - 1);
        }
        assert_eq!(rank(&c, &Divisor::from_pairs([(at(&c, rat(1, 3)), 1), (Point::Vertex(0), -1)])), -1);
    }

    #[test]
    fn canonical_divisors() {
        assert!(canonical_divisor(&circle()).is_zero());
        let t = theta();
        assert_eq!(canonical_divisor(&t), Divisor::from_pairs([(Point::Vertex(0), 1), (Point::Vertex(1), 1)]));
        let wedge = MetricGraph::from_edges(1, &[(0, 0, int(1)), (0, 0, int(1)), (0, 0, int(1))]).unwrap();
        assert_eq!(canonical_divisor(&wedge), Divisor::point(Point::Vertex(0), 4));
    }

    #[test]
    fn equivalences() {
        let g = circle();
        let d = Divisor::point(at(&g, rat(1, 3)), 1);
        assert_eq!(linearly_equivalent(&g, &d, &d).unwrap().principal_divisor(&g), Divisor::new());
        let two_half = Divisor::point(at(&g, rat(1, 2)), 2);
        let two_zero = Divisor::point(Point::Vertex(0), 2);
        let w = linearly_equivalent(&g, &two_half, &two_zero).unwrap();
        assert_eq!(w.principal_divisor(&g), two_half.minus(&two_zero));
        assert!(linearly_equivalent(&g, &d, &Divisor::point(at(&g, rat(2, 3)), 1)).is_none());
    }

    #[test]
    fn wedge_generic_reduction() {
        // Wedge of two circles: N - g chips at the wedge point, one inside each circle.
        let g = MetricGraph::from_edges(1, &[(0, 0, int(1)), (0, 0, int(1))]).unwrap();
        let d = Divisor::from_pairs([
            (g.point(0, rat(1, 7)).unwrap(), 2),
            (g.point(1, rat(2, 5)).unwrap(), 1),
            (g.point(1, rat(1, 3)).unwrap(), 1),
        ]);
        let r = reduced_form(&g, &Point::Vertex(0), &d);
        assert_eq!(r.coeff(&Point::Vertex(0)), 2);
        assert_eq!(r.iter().filter(|(p, _)| p.edge() == Some(0)).count(), 1);
        assert_eq!(r.iter().filter(|(p, _)| p.edge() == Some(1)).count(), 1);
    }
}
