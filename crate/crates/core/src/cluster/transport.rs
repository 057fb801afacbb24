//! Cluster polytopes and their transport along mutation sequences.

use std::collections::BTreeSet;

use serde::Serialize;

use super::exchange::{build_exchange_from_word, ExchangeMatrix};
use super::upsilon::{upsilon_matrix, Upsilon};
use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::polytope::{convex_hull, string_polytope, RationalPolytope};
use crate::rootdata::Weight;
use crate::zcrystal::WordContext;

/// Tropical mutation on rational points; each side of `x_k = 0` is linear.
fn tropical_rat(e: &ExchangeMatrix, x: &[Rat], k: usize) -> Vec<Rat> {
    let row = &e.entries[e.row_of(k).expect("mutable direction")];
    let xk = x[k - 1];
    let zero = Rat::from_integer(0);
    (1..=e.m)
        .map(|j| {
            if j == k {
                return -xk;
            }
            let c = row[j - 1];
            x[j - 1] + Rat::from_integer((-c).max(0) as i128) * xk + Rat::from_integer(c as i128) * xk.max(zero)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Transported {
    #[serde(skip)]
    pub polytope: RationalPolytope,
    pub lattice_points: Vec<Vec<i64>>,
    pub matrix: ExchangeMatrix,
    pub word: Vec<usize>,
}

/// Applies the tropical mutations along `word` to a set of points.
pub fn transport_points(
    points: &[Vec<i64>],
    matrix: &ExchangeMatrix,
    word: &[usize],
) -> Result<(Vec<Vec<i64>>, ExchangeMatrix)> {
    let mut pts = points.to_vec();
    let mut e = matrix.clone();
    for &k in word {
        pts = pts.iter().map(|p| e.tropical_mutate(p, k)).collect::<Result<_>>()?;
        e = e.mutate(k)?;
    }
    Ok((pts, e))
}

/// Image of `p` under one tropical mutation: the two halves cut by `x_k = 0`
/// are mapped linearly and hulled together. The lattice points of the result
/// must be exactly the pointwise image of the lattice points of `p`.
fn transport_step(p: &RationalPolytope, e: &ExchangeMatrix, k: usize) -> Result<(RationalPolytope, Vec<Vec<i64>>)> {
    let zero = Rat::from_integer(0);
    let mut cloud: Vec<Vec<Rat>> = p.vertices.iter().map(|v| tropical_rat(e, v, k)).collect();
    // crossing points of edges with x_k = 0 are the remaining vertices of the halves
    for f in p.faces().into_iter().filter(|f| f.dim == 1) {
        let (a, b) = (&p.vertices[f.vertices[0]], &p.vertices[f.vertices[1]]);
        let (ak, bk) = (a[k - 1], b[k - 1]);
        if (ak < zero && bk > zero) || (ak > zero && bk < zero) {
            let t = ak / (ak - bk);
            let x: Vec<Rat> = a.iter().zip(b).map(|(u, v)| *u + t * (*v - *u)).collect();
            cloud.push(tropical_rat(e, &x, k));
        }
    }
    let hull = convex_hull(&cloud)?;
    let lp = p.lattice_points()?;
    let image: BTreeSet<Vec<i64>> = lp.iter().map(|x| e.tropical_mutate(x, k)).collect::<Result<_>>()?;
    let got: BTreeSet<Vec<i64>> = hull.lattice_points()?.into_iter().collect();
    if got != image {
        let witness = got.symmetric_difference(&image).next().cloned().unwrap_or_default();
        return Err(Error::TheoremViolation(format!(
            "tropical image in direction {k} is not lattice-convex; witness {witness:?}"
        )));
    }
    Ok((hull, image.into_iter().collect()))
}

/// Transports a polytope in the coordinates of `matrix` along `word`.
pub fn transport_polytope(p: &RationalPolytope, matrix: &ExchangeMatrix, word: &[usize]) -> Result<Transported> {
    if p.ambient != matrix.m {
        return Err(Error::DimensionMismatch { expected: matrix.m, got: p.ambient });
    }
    let mut cur = p.clone();
    let mut lattice_points = p.lattice_points()?;
    let mut e = matrix.clone();
    for &k in word {
        if !e.is_mutable(k) {
            return Err(Error::FrozenDirection(k));
        }
        let (next, pts) = transport_step(&cur, &e, k)?;
        cur = next;
        lattice_points = pts;
        e = e.mutate(k)?;
    }
    Ok(Transported { polytope: cur, lattice_points, matrix: e, word: word.to_vec() })
}

#[derive(Clone, Debug)]
pub struct ClusterPolytope {
    pub polytope: RationalPolytope,
    pub lattice_points: Vec<Vec<i64>>,
    pub upsilon: Upsilon,
    pub matrix: ExchangeMatrix,
    pub saturated: bool,
}

/// Pulls the string polytope back along the transfer matrix.
pub fn cluster_polytope(ctx: &WordContext, lambda: &Weight, k_max: usize) -> Result<ClusterPolytope> {
    let s = string_polytope(ctx, lambda, k_max)?;
    let upsilon = upsilon_matrix(&ctx.datum, &ctx.word)?;
    let verts: Vec<Vec<Rat>> = s.polytope.vertices.iter().map(|v| upsilon.invert_rat(v)).collect();
    let polytope = convex_hull(&verts)?;
    let mut lattice_points: Vec<Vec<i64>> = s.lattice_points.iter().map(|b| upsilon.invert(b)).collect();
    lattice_points.sort();
    let matrix = build_exchange_from_word(&ctx.datum, &ctx.word)?;
    Ok(ClusterPolytope { polytope, lattice_points, upsilon, matrix, saturated: s.saturated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::DEFAULT_K_MAX;
    use crate::rootdata::{RootDatum, Series};

    fn a2() -> WordContext {
        WordContext::new(&RootDatum::new(Series::A, 2).unwrap(), &[1, 2, 1]).unwrap()
    }

    #[test]
    fn a2_cluster_polytope() {
        let ctx = a2();
        let c = cluster_polytope(&ctx, &Weight(vec![1, 1]), DEFAULT_K_MAX).unwrap();
        assert_eq!(c.lattice_points.len(), 8);
        let mut lp = c.polytope.lattice_points().unwrap();
        lp.sort();
        assert_eq!(lp, c.lattice_points);
        let phi: BTreeSet<Vec<i64>> = c.lattice_points.iter().map(|g| c.upsilon.apply(g)).collect();
        let table: BTreeSet<Vec<i64>> = [
            [0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 0], [0, 2, 1], [2, 1, 0], [1, 2, 1],
        ]
        .iter()
        .map(|r| r.to_vec())
        .collect();
        assert_eq!(phi, table);
        let z = cluster_polytope(&ctx, &Weight(vec![0, 0]), DEFAULT_K_MAX).unwrap();
        assert_eq!(z.lattice_points, vec![vec![0, 0, 0]]);
    }

    #[test]
    fn transport_round_trip() {
        let ctx = a2();
        let c = cluster_polytope(&ctx, &Weight(vec![1, 1]), DEFAULT_K_MAX).unwrap();
        let id = transport_polytope(&c.polytope, &c.matrix, &[]).unwrap();
        assert_eq!(id.polytope, c.polytope);
        let t = transport_polytope(&c.polytope, &c.matrix, &[1]).unwrap();
        assert_eq!(t.lattice_points.len(), 8);
        let back = transport_polytope(&t.polytope, &t.matrix, &[1]).unwrap();
        assert_eq!(back.polytope, c.polytope);
        assert_eq!(back.matrix, c.matrix);
        let (pts, _) = transport_points(&c.lattice_points, &c.matrix, &[1]).unwrap();
        let a: BTreeSet<_> = pts.into_iter().collect();
        let b: BTreeSet<_> = t.lattice_points.iter().cloned().collect();
        assert_eq!(a, b);
        assert_eq!(transport_polytope(&c.polytope, &c.matrix, &[2]).err(), Some(Error::FrozenDirection(2)));
    }
}
