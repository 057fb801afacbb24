//! Polytopes as limits of level slices, and the finite Minkowski conditions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{convex_hull, RationalPolytope};
use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::rootdata::{Weight, WeylGroup};
use crate::zcrystal::{LambdaCrystal, WordContext};

pub const DEFAULT_K_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Coordinates {
    /// String parametrization.
    String,
    /// Kashiwara embedding.
    Nz,
}

impl Coordinates {
    pub fn of(self, crystal: &LambdaCrystal, b: usize) -> Vec<i64> {
        match self {
            Coordinates::String => crystal.phi_string(b),
            Coordinates::Nz => crystal.psi(b),
        }
    }

    pub fn all(self, crystal: &LambdaCrystal) -> Vec<Vec<i64>> {
        (0..crystal.len()).map(|b| self.of(crystal, b)).collect()
    }
}

/// Point sets of `B(k lambda)` for `k = 1, 2, ...`.
#[derive(Clone, Debug)]
pub struct LevelFamily {
    pub lambda: Weight,
    pub levels: BTreeMap<usize, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct LevelPolytope {
    pub polytope: RationalPolytope,
    pub saturated: bool,
    /// The level `k` whose hull was returned.
    pub level: usize,
    pub family: LevelFamily,
    pub lattice_points: Vec<Vec<i64>>,
}

/// Hulls `P_k = conv(U_{j<=k} S_j / j)` until `P_k = P_{k+1}` or `k = k_max`; then
/// checks that the lattice points of the result are exactly `S_1`.
pub fn level_polytope(
    lambda: &Weight,
    k_max: usize,
    mut points_at: impl FnMut(usize) -> Result<Vec<Vec<i64>>>,
) -> Result<LevelPolytope> {
    let k_max = k_max.max(1);
    let mut family = LevelFamily { lambda: lambda.clone(), levels: BTreeMap::new() };
    let mut prev: Option<RationalPolytope> = None;
    let mut chosen = None;
    for k in 1..=k_max {
        let pts = points_at(k)?;
        let kr = Rat::from_integer(k as i128);
        let mut cloud: Vec<Vec<Rat>> =
            pts.iter().map(|p| p.iter().map(|&x| Rat::from_integer(x as i128) / kr).collect()).collect();
        if let Some(p) = &prev {
            cloud.extend(p.vertices.iter().cloned());
        }
        family.levels.insert(k, pts);
        let cur = convex_hull(&cloud)?;
        if let Some(p) = prev.take() {
            if p == cur {
                chosen = Some((p, true, k - 1));
                break;
            }
        }
        prev = Some(cur);
    }
    let (polytope, saturated, level) = chosen.unwrap_or_else(|| (prev.expect("k_max >= 1"), false, k_max));
    let lattice_points = polytope.lattice_points()?;
    let expected: BTreeSet<&Vec<i64>> = family.levels[&1].iter().collect();
    let got: BTreeSet<&Vec<i64>> = lattice_points.iter().collect();
    if expected != got {
        return Err(Error::TheoremViolation(format!(
            "lattice points of the level-{level} hull ({}) differ from the level-1 set ({})",
            got.len(),
            expected.len()
        )));
    }
    Ok(LevelPolytope { polytope, saturated, level, family, lattice_points })
}

fn crystal_polytope(ctx: &WordContext, lambda: &Weight, k_max: usize, coords: Coordinates) -> Result<LevelPolytope> {
    level_polytope(lambda, k_max, |k| {
        let c = LambdaCrystal::generate(ctx, &lambda.scale(k as i64))?;
        Ok(coords.all(&c))
    })
}

pub fn string_polytope(ctx: &WordContext, lambda: &Weight, k_max: usize) -> Result<LevelPolytope> {
    crystal_polytope(ctx, lambda, k_max, Coordinates::String)
}

pub fn nz_polytope(ctx: &WordContext, lambda: &Weight, k_max: usize) -> Result<LevelPolytope> {
    crystal_polytope(ctx, lambda, k_max, Coordinates::Nz)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiReport {
    pub condition_i: bool,
    pub condition_ii: bool,
    /// `(a, a')` with `a + a'` wrongly inside the Richardson set at `lambda + lambda'`.
    pub witness_i: Option<(Vec<i64>, Vec<i64>)>,
    /// `a` with `2a` outside the Richardson set at `2 lambda`.
    pub witness_ii: Option<Vec<i64>>,
    pub pairs_checked: usize,
    pub doubles_checked: usize,
}

impl MinkowskiReport {
    pub fn passed(&self) -> bool {
        self.condition_i && self.condition_ii
    }
}

/// The two finite conditions on level slices, in whatever coordinates the sets use.
///
/// (i) `a + a'` avoids `rich_sum` for `a` in `full_l` and `a'` in `full_l2 \ rich_l2`;
/// (ii) `2a` lies in `rich_2l` for `a` in `rich_l`.
pub fn minkowski_check_sets(
    full_l: &[Vec<i64>],
    full_l2: &[Vec<i64>],
    rich_l2: &BTreeSet<Vec<i64>>,
    rich_sum: &BTreeSet<Vec<i64>>,
    rich_l: &BTreeSet<Vec<i64>>,
    rich_2l: &BTreeSet<Vec<i64>>,
) -> MinkowskiReport {
    let mut witness_i = None;
    let mut pairs = 0;
    'outer: for a2 in full_l2.iter().filter(|x| !rich_l2.contains(*x)) {
        for a in full_l {
            pairs += 1;
            let s: Vec<i64> = a.iter().zip(a2).map(|(x, y)| x + y).collect();
            if rich_sum.contains(&s) {
                witness_i = Some((a.clone(), a2.clone()));
                break 'outer;
            }
        }
    }
    let mut witness_ii = None;
    let mut doubles = 0;
    for a in rich_l {
        doubles += 1;
        let d: Vec<i64> = a.iter().map(|x| 2 * x).collect();
        if !rich_2l.contains(&d) {
            witness_ii = Some(a.clone());
            break;
        }
    }
    MinkowskiReport {
        condition_i: witness_i.is_none(),
        condition_ii: witness_ii.is_none(),
        witness_i,
        witness_ii,
        pairs_checked: pairs,
        doubles_checked: doubles,
    }
}

/// Full and Richardson point sets at one level.
pub(crate) fn richardson_points(
    ctx: &WordContext,
    group: &WeylGroup,
    lambda: &Weight,
    v: usize,
    w: usize,
    coords: Coordinates,
) -> Result<(Vec<Vec<i64>>, BTreeSet<Vec<i64>>)> {
    let c = LambdaCrystal::generate(ctx, lambda)?;
    let rich = c.richardson_subset(group, v, w)?;
    let full = coords.all(&c);
    let r = rich.members.iter().map(|&b| full[b].clone()).collect();
    Ok((full, r))
}

pub fn minkowski_condition_check(
    ctx: &WordContext,
    group: &WeylGroup,
    lambda: &Weight,
    lambda2: &Weight,
    v: usize,
    w: usize,
    coords: Coordinates,
) -> Result<MinkowskiReport> {
    for l in [lambda, lambda2] {
        if !l.is_dominant() {
            return Err(Error::NotDominant(l.0.clone()));
        }
    }
    let (full_l, rich_l) = richardson_points(ctx, group, lambda, v, w, coords)?;
    let (full_l2, rich_l2) = richardson_points(ctx, group, lambda2, v, w, coords)?;
    let (_, rich_sum) = richardson_points(ctx, group, &lambda.add(lambda2), v, w, coords)?;
    let (_, rich_2l) = richardson_points(ctx, group, &lambda.scale(2), v, w, coords)?;
    Ok(minkowski_check_sets(&full_l, &full_l2, &rich_l2, &rich_sum, &rich_l, &rich_2l))
}

#[cfg(test)]
mod tests {
    use super::super::{from_halfspaces, Halfspace};
    use super::*;
    use crate::rootdata::{RootDatum, Series};

    fn a2_ctx() -> (WordContext, WeylGroup) {
        let d = RootDatum::new(Series::A, 2).unwrap();
        (WordContext::new(&d, &[1, 2, 1]).unwrap(), WeylGroup::new(&d).unwrap())
    }

    fn hs(normal: &[i64], offset: i64) -> Halfspace {
        Halfspace { normal: normal.to_vec(), offset: Rat::from_integer(offset as i128) }
    }

    #[test]
    fn a2_string_and_nz() {
        let (ctx, _) = a2_ctx();
        let lam = Weight(vec![1, 1]);
        let s = string_polytope(&ctx, &lam, DEFAULT_K_MAX).unwrap();
        assert!(s.saturated);
        assert_eq!(s.level, 1);
        let paper = from_halfspaces(
            3,
            &[hs(&[0, 0, -1], 0), hs(&[0, 0, 1], 1), hs(&[0, -1, 1], 0), hs(&[0, 1, -1], 1), hs(&[-1, 0, 0], 0), hs(&[1, -1, 2], 1)],
            &[],
        )
        .unwrap();
        assert_eq!(s.polytope, paper);
        assert_eq!(s.lattice_points.len(), 8);
        let nz = nz_polytope(&ctx, &lam, DEFAULT_K_MAX).unwrap();
        let paper_nz = from_halfspaces(
            3,
            &[hs(&[-1, 0, 0], 0), hs(&[1, 0, 0], 1), hs(&[0, 0, -1], 0), hs(&[0, 0, 1], 1), hs(&[1, -1, 0], 0), hs(&[0, 1, -1], 1)],
            &[],
        )
        .unwrap();
        assert_eq!(nz.polytope, paper_nz);
        assert!(nz.saturated);
    }

    #[test]
    fn rank_one_segment() {
        let d = RootDatum::new(Series::A, 1).unwrap();
        let ctx = WordContext::new(&d, &[1]).unwrap();
        for m in 1..4 {
            for p in [string_polytope(&ctx, &Weight(vec![m]), 3).unwrap(), nz_polytope(&ctx, &Weight(vec![m]), 3).unwrap()] {
                assert_eq!(p.polytope.vertices, vec![vec![Rat::from_integer(0)], vec![Rat::from_integer(m as i128)]]);
            }
        }
    }

    #[test]
    fn a3_lattice_points() {
        let d = RootDatum::new(Series::A, 3).unwrap();
        let ctx = WordContext::new(&d, &[1, 2, 1, 3, 2, 1]).unwrap();
        let lam = Weight(vec![1, 1, 1]);
        let s = string_polytope(&ctx, &lam, 2).unwrap();
        assert_eq!(s.lattice_points.len(), 64);
        let n = nz_polytope(&ctx, &lam, 2).unwrap();
        assert_eq!(n.lattice_points.len(), 64);
    }

    #[test]
    fn minkowski_examples() {
        let (ctx, g) = a2_ctx();
        let lam = Weight(vec![1, 1]);
        let r = minkowski_condition_check(&ctx, &g, &lam, &lam, 0, g.longest(), Coordinates::String).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 0);
        let s1 = g.index_of_word(&[1]).unwrap();
        let r = minkowski_condition_check(&ctx, &g, &lam, &lam, s1, g.longest(), Coordinates::String).unwrap();
        assert!(r.passed());
        assert_eq!(r.pairs_checked, 8 * 3);
        let r = minkowski_condition_check(&ctx, &g, &lam, &lam, s1, s1, Coordinates::String).unwrap();
        assert!(r.condition_ii);
        assert_eq!(r.doubles_checked, 1);
    }

    #[test]
    fn minkowski_detects_violations() {
        let full = vec![vec![0], vec![1]];
        let rich = BTreeSet::from([vec![1]]);
        let sum_rich = BTreeSet::from([vec![1], vec![2]]);
        let r = minkowski_check_sets(&full, &full, &rich, &sum_rich, &rich, &BTreeSet::new());
        assert!(!r.condition_i);
        assert_eq!(r.witness_i, Some((vec![1], vec![0])));
        assert_eq!(r.witness_ii, Some(vec![1]));
    }
}
