//! Exact divisor theory on compact metric graphs.
//!
//! Everything here works over arbitrary-precision rationals: edge lengths,
//! point offsets, voltages, resistances and measure densities are all exact,
//! so results can be compared with `==`.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and parallel experiment drivers live in the `tropweier` crate.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`] | metric graphs, points, segments, subdivision, distances |
//! | [`linalg`] | grounded Laplacian solver, vertex resistances |
//! | [`plfn`] | continuous piecewise-linear functions on a graph |
//! | [`electrical`] | voltage functions, effective resistance, canonical measure |
//! | [`divisor`] | divisors, principal divisors, reduced divisors, rank |
//! | [`weierstrass`] | Weierstrass loci, segment sweeps, mesh oracle |
//! | [`equidist`] | divisor sampling and equidistribution experiments |

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod divisor;
pub mod electrical;
pub mod equidist;
mod error;
pub mod graph;
pub mod linalg;
mod model;
pub mod plfn;
pub mod rational;
pub mod weierstrass;

pub use divisor::{Divisor, PlzFunction, ReducedDivisor};
pub use electrical::{MeasureRow, MeasureTable, VoltageFunction};
pub use error::Error;
pub use graph::{MetricGraph, Point, RawEdge, RawGraph, Segment, SegmentClass};
pub use plfn::PlFunction;
pub use rational::Rational;
pub use weierstrass::{SweepConfig, WeierstrassLocus};

pub type Result<T> = core::result::Result<T, Error>;
