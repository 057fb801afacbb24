//! Total orders refining the opposite dominance order, lowest-term valuations
//! and extended g-vectors.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exchange::ExchangeMatrix;
use super::laurent::LaurentExpr;
use crate::error::{Error, Result};
use crate::linalg::{self, Rat};

/// Secondary key used when the primary functional ties.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Tiebreak {
    /// Compare from the first coordinate.
    Lex,
    /// Compare from the last coordinate.
    #[default]
    RevLex,
    /// Perturb the functional along the kernel of the matrix and compare in a
    /// shuffled coordinate order.
    Random(u64),
}

/// `a < b` first by `phi(a) < phi(b)`, where `phi` is positive on every row of
/// the exchange matrix, then by the tiebreak. Adding a row of the matrix strictly
/// increases `phi`, so the order refines the opposite dominance order, and both
/// keys are translation invariant.
#[derive(Clone, Debug)]
pub struct TotalOrder {
    functional: Vec<Rat>,
    coordinate_order: Vec<usize>,
}

impl TotalOrder {
    pub fn new(matrix: &ExchangeMatrix, tiebreak: Tiebreak) -> Result<Self> {
        if !matrix.full_rank {
            return Err(Error::NotFullRank);
        }
        let m = matrix.m;
        let e = linalg::to_rat_matrix(&matrix.entries);
        let ones = vec![Rat::one(); e.len()];
        let mut functional = if e.is_empty() {
            vec![Rat::zero(); m]
        } else {
            linalg::solve(&e, &ones).expect("full row rank system is consistent")
        };
        let mut coordinate_order: Vec<usize> = (0..m).collect();
        match tiebreak {
            Tiebreak::Lex => {}
            Tiebreak::RevLex => coordinate_order.reverse(),
            Tiebreak::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let kernel = if e.is_empty() { identity(m) } else { linalg::nullspace(&e, m) };
                for k in &kernel {
                    let c = Rat::from_integer(rng.gen_range(-3..=3));
                    for (f, x) in functional.iter_mut().zip(k) {
                        *f += c * x;
                    }
                }
                for i in (1..m).rev() {
                    coordinate_order.swap(i, rng.gen_range(0..=i));
                }
            }
        }
        Ok(TotalOrder { functional, coordinate_order })
    }

    fn phi(&self, a: &[i64]) -> Rat {
        self.functional.iter().zip(a).map(|(f, &x)| f * Rat::from_integer(x as i128)).sum()
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.phi(a)
            .cmp(&self.phi(b))
            .then_with(|| self.coordinate_order.iter().map(|&j| a[j].cmp(&b[j])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
    }

    fn lowest(&self, exps: impl Iterator<Item = Vec<i64>>) -> Option<Vec<i64>> {
        exps.min_by(|a, b| self.cmp(a, b))
    }
}

fn identity(m: usize) -> Vec<Vec<Rat>> {
    (0..m).map(|i| (0..m).map(|j| Rat::from_integer(i64::from(i == j) as i128)).collect()).collect()
}

/// Lowest exponent of the numerator minus lowest exponent of the denominator.
pub fn lowest_term_valuation(f: &LaurentExpr, order: &TotalOrder) -> Result<Vec<i64>> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let low = |p: &super::poly::Poly| -> Vec<i64> {
        order
            .lowest(p.terms().map(|(e, _)| e.iter().map(|&x| i64::from(x)).collect()))
            .expect("nonzero polynomial")
    };
    let (n, d) = (low(f.numerator()), low(f.denominator()));
    Ok(f.shift().iter().zip(n.iter().zip(&d)).map(|(s, (a, b))| s + a - b).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GVector {
    /// `f = A^g (c_0 + sum_{a > 0} c_a X^a)`; `strict` when `c_0 = 1`.
    Pointed { g: Vec<i64>, strict: bool },
    /// A term whose exponent is not `g + v e` with `v >= 0` integral.
    NotPointed { exponent: Vec<i64> },
}

/// Extended g-vector of a Laurent polynomial in the seed's own variables.
pub fn g_vector(f: &LaurentExpr, matrix: &ExchangeMatrix) -> Result<GVector> {
    let order = TotalOrder::new(matrix, Tiebreak::default())?;
    let g = lowest_term_valuation(f, &order)?;
    let mut c0 = BigRational::zero();
    for (e, c) in f.laurent_terms()? {
        let diff: Vec<i64> = e.iter().zip(&g).map(|(a, b)| a - b).collect();
        if diff.iter().all(|&x| x == 0) {
            c0 = c;
        } else if matrix.nonnegative_coefficients(&diff)?.is_none() {
            return Ok(GVector::NotPointed { exponent: e });
        }
    }
    Ok(GVector::Pointed { g, strict: c0.is_one() })
}

#[cfg(test)]
mod tests {
    use super::super::exchange::build_exchange_from_word;
    use super::super::seed::Seed;
    use super::*;
    use crate::rootdata::{RootDatum, Series};

    fn a2() -> ExchangeMatrix {
        build_exchange_from_word(&RootDatum::new(Series::A, 2).unwrap(), &[1, 2, 1]).unwrap()
    }

    #[test]
    fn valuations() {
        let e = a2();
        for tb in [Tiebreak::Lex, Tiebreak::RevLex, Tiebreak::Random(7)] {
            let o = TotalOrder::new(&e, tb).unwrap();
            assert_eq!(lowest_term_valuation(&LaurentExpr::var(3, 0), &o).unwrap(), vec![1, 0, 0]);
            let f = LaurentExpr::from_terms(3, &[(vec![0, 0, 0], 1), (vec![0, -1, 1], 1)]);
            assert_eq!(lowest_term_valuation(&f, &o).unwrap(), vec![0, 0, 0]);
            assert_eq!(o.cmp(&[0, 0, 0], &[0, -1, 1]), Ordering::Less);
        }
        let o = TotalOrder::new(&e, Tiebreak::default()).unwrap();
        assert_eq!(lowest_term_valuation(&LaurentExpr::zero(3), &o), Err(Error::ZeroFunction));
    }

    #[test]
    fn g_vectors() {
        let e = a2();
        assert_eq!(g_vector(&LaurentExpr::var(3, 0), &e).unwrap(), GVector::Pointed { g: vec![1, 0, 0], strict: true });
        let f = LaurentExpr::from_terms(3, &[(vec![0, 0, 0], 1), (vec![0, -1, 1], 1)]);
        assert_eq!(g_vector(&f, &e).unwrap(), GVector::Pointed { g: vec![0, 0, 0], strict: true });
        // A_2 + A_3 = A_2 (1 + X^_1) is pointed at (0,1,0)
        let f = LaurentExpr::from_terms(3, &[(vec![0, 1, 0], 1), (vec![0, 0, 1], 1)]);
        assert_eq!(g_vector(&f, &e).unwrap(), GVector::Pointed { g: vec![0, 1, 0], strict: true });
        let f = LaurentExpr::from_terms(3, &[(vec![1, 0, 0], 1), (vec![0, 1, 0], 1)]);
        assert!(matches!(g_vector(&f, &e).unwrap(), GVector::NotPointed { .. }));
        let f = LaurentExpr::from_terms(3, &[(vec![0, 0, 0], 2), (vec![0, -1, 1], 1)]);
        assert_eq!(g_vector(&f, &e).unwrap(), GVector::Pointed { g: vec![0, 0, 0], strict: false });
    }

    #[test]
    fn mutated_variable_matches_tropical_mutation() {
        let e = a2();
        let s = Seed::initial(e.clone()).mutate(1).unwrap();
        let GVector::Pointed { g, .. } = g_vector(&s.variables[0], &e).unwrap() else { panic!() };
        assert_eq!(g, vec![-1, 1, 0]);
        assert_eq!(s.matrix.tropical_mutate(&[1, 0, 0], 1).unwrap(), g);
    }
}
