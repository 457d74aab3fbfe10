//! Exact solver for grounded weighted Laplacians.
//!
//! An edge of length `L` is a resistor of resistance `L`, so it contributes
//! conductance `1/L` between its endpoints. Loops carry no current and are
//! ignored. Grounding deletes the ground row and column; for a connected
//! network the remaining matrix is positive definite.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::Rational;
use crate::Result;

/// External currents injected at each node. Entries sum to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentVector(Vec<Rational>);

impl CurrentVector {
    pub fn new(values: Vec<Rational>) -> Result<CurrentVector> {
        let total = values.iter().fold(Rational::zero(), |acc, x| acc + x);
        if !total.is_zero() {
            return Err(Error::CurrentNotConserved);
        }
        Ok(CurrentVector(values))
    }

    pub fn zeros(n: usize) -> CurrentVector {
        CurrentVector(vec![Rational::zero(); n])
    }

    /// Unit current entering at `source` and leaving at `sink`.
    pub fn unit(n: usize, source: usize, sink: usize) -> CurrentVector {
        let mut v = vec![Rational::zero(); n];
        v[source] += Rational::one();
        v[sink] -= Rational::one();
        CurrentVector(v)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resistance {
    Finite(Rational),
    /// The two nodes lie in different components.
    Infinite,
}

#[derive(Clone, Debug)]
pub struct LaplacianSystem {
    /// Symmetric conductance matrix; `c[u][v]` sums `1/length` over edges u–v.
    conductance: Vec<Vec<Rational>>,
    ground: usize,
}

impl LaplacianSystem {
    /// `resistors` are `(u, v, length)` triples on nodes `0..n`.
    pub fn new(n: usize, resistors: &[(usize, usize, Rational)], ground: usize) -> LaplacianSystem {
        let mut conductance = vec![vec![Rational::zero(); n]; n];
        for (u, v, len) in resistors {
            if u == v {
                continue;
            }
            let c = len.recip();
            conductance[*u][*v] += &c;
            conductance[*v][*u] += &c;
        }
        LaplacianSystem { conductance, ground }
    }

    pub fn size(&self) -> usize {
        self.conductance.len()
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// `(L x)[u] = sum_v c(u,v) (x[u] - x[v])`, the net current leaving `u`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.conductance
            .iter()
            .enumerate()
            .map(|(u, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (v, c)| acc + c * (&x[u] - &x[v]))
            })
            .collect()
    }

    fn connected(&self, a: usize, b: usize) -> bool {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut stack = vec![a];
        seen[a] = true;
        while let Some(u) = stack.pop() {
            if u == b {
                return true;
            }
            for (v, c) in self.conductance[u].iter().enumerate() {
                if !seen[v] && !c.is_zero() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    /// Potentials with value 0 at the ground node satisfying Kirchhoff's
    /// current law for the injected currents `b`.
    pub fn solve_grounded(&self, b: &CurrentVector) -> Result<Vec<Rational>> {
        let n = self.size();
        let rhs = b.as_slice();
        if rhs.len() != n {
            return Err(Error::InvalidConfig("current vector has the wrong length".into()));
        }
        let idx: Vec<usize> = (0..n).filter(|&u| u != self.ground).collect();
        let m = idx.len();
        // Augmented reduced system [A | b] with the ground row/column deleted.
        let mut a: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&u| {
                let mut row: Vec<Rational> = idx
                    .iter()
                    .map(|&v| {
                        if u == v {
                            self.conductance[u].iter().fold(Rational::zero(), |acc, c| acc + c)
                        } else {
                            -self.conductance[u][v].clone()
                        }
                    })
                    .collect();
                row.push(rhs[u].clone());
                row
            })
            .collect();
        for col in 0..m {
            let pivot = (col..m)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()))
                .ok_or(Error::SingularSystem)?;
            a.swap(col, pivot);
            let (top, rest) = a.split_at_mut(col + 1);
            let prow = &top[col];
            for row in rest.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &prow[col];
                for k in col..=m {
                    if !prow[k].is_zero() {
                        let t = &factor * &prow[k];
                        row[k] -= t;
                    }
                }
            }
        }
        let mut sol = vec![Rational::zero(); m];
        for col in (0..m).rev() {
            let mut acc = a[col][m].clone();
            for k in col + 1..m {
                if !a[col][k].is_zero() {
                    acc -= &a[col][k] * &sol[k];
                }
            }
            sol[col] = acc / &a[col][col];
        }
        let mut out = vec![Rational::zero(); n];
        for (k, &u) in idx.iter().enumerate() {
            out[u] = sol[k].clone();
        }
        Ok(out)
    }

    /// Effective resistance between two nodes.
    pub fn vertex_resistance(&self, u: usize, v: usize) -> Resistance {
        if u == v {
            return Resistance::Finite(Rational::zero());
        }
        if !self.connected(u, v) {
            return Resistance::Infinite;
        }
        // Solve on the component only; other components would make the
        // grounded matrix singular.
        let n = self.size();
        let mut comp = vec![false; n];
        let mut stack = vec![u];
        comp[u] = true;
        while let Some(a) = stack.pop() {
            for (b, c) in self.conductance[a].iter().enumerate() {
                if !comp[b] && !c.is_zero() {
                    comp[b] = true;
                    stack.push(b);
                }
            }
        }
        let members: Vec<usize> = (0..n).filter(|&x| comp[x]).collect();
        let local = |x: usize| members.iter().position(|&m| m == x).unwrap();
        let sub = LaplacianSystem {
            conductance: members
                .iter()
                .map(|&a| members.iter().map(|&b| self.conductance[a][b].clone()).collect())
                .collect(),
            ground: local(v),
        };
        let b = CurrentVector::unit(members.len(), local(u), local(v));
        let x = sub.solve_grounded(&b).expect("component is connected");
        Resistance::Finite(x[local(u)].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn zero_current_gives_zero_potential() {
        let sys = LaplacianSystem::new(2, &[(0, 1, int(1))], 1);
        let x = sys.solve_grounded(&CurrentVector::zeros(2)).unwrap();
        assert!(x.iter().all(Zero::is_zero));
    }

    #[test]
    fn single_resistor() {
        let sys = LaplacianSystem::new(2, &[(0, 1, int(1))], 1);
        let x = sys.solve_grounded(&CurrentVector::unit(2, 0, 1)).unwrap();
        assert_eq!(x, vec![int(1), int(0)]);
    }

    #[test]
    fn theta_is_three_parallel_resistors() {
        let sys = LaplacianSystem::new(2, &[(0, 1, int(1)), (0, 1, int(1)), (0, 1, int(1))], 1);
        let x = sys.solve_grounded(&CurrentVector::unit(2, 0, 1)).unwrap();
        assert_eq!(x[0], rat(1, 3));
        assert_eq!(sys.vertex_resistance(0, 1), Resistance::Finite(rat(1, 3)));
        assert_eq!(sys.vertex_resistance(1, 1), Resistance::Finite(int(0)));
    }

    #[test]
    fn circle_antipodes() {
        // Circle of length 8 as a 4-cycle of length-2 edges.
        let sys = LaplacianSystem::new(4, &[(0, 1, int(2)), (1, 2, int(2)), (2, 3, int(2)), (3, 0, int(2))], 0);
        assert_eq!(sys.vertex_resistance(0, 2), Resistance::Finite(int(2)));
    }

    #[test]
    fn unconserved_current_rejected() {
        assert_eq!(CurrentVector::new(vec![int(1), int(0)]), Err(Error::CurrentNotConserved));
    }

    #[test]
    fn disconnected_is_infinite() {
        let sys = LaplacianSystem::new(3, &[(0, 1, int(1))], 0);
        assert_eq!(sys.vertex_resistance(0, 2), Resistance::Infinite);
        assert_eq!(sys.vertex_resistance(0, 1), Resistance::Finite(int(1)));
    }
}
