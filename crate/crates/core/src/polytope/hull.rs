//! Conversions between vertex and facet descriptions.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::Zero;

use super::dd::{self, Ray};
use super::{Halfspace, RationalPolytope, MAX_AMBIENT_DIM, MAX_POINTS};
use crate::error::{Error, Result};
use crate::linalg::{self, Rat};

fn to_i64(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("normal coefficient"))
}

/// Scales `normal . x <= offset` to a primitive integer normal.
fn primitive(normal: &[Rat], offset: Rat) -> Result<Halfspace> {
    let l = normal.iter().fold(1i128, |l, x| l.lcm(x.denom()));
    let ints: Vec<i128> = normal.iter().map(|x| (x * Rat::from_integer(l)).to_integer()).collect();
    let g = linalg::gcd_slice(&ints);
    let factor = Rat::new(l, g);
    Ok(Halfspace {
        normal: ints.iter().map(|&x| to_i64(x / g)).collect::<Result<_>>()?,
        offset: offset * factor,
    })
}

pub fn from_integer_points(points: &[Vec<i64>]) -> Result<RationalPolytope> {
    let pts: Vec<Vec<Rat>> = points.iter().map(|p| p.iter().map(|&x| linalg::rat(x)).collect()).collect();
    convex_hull(&pts)
}

pub fn convex_hull(points: &[Vec<Rat>]) -> Result<RationalPolytope> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: p.len() });
    }
    if n > MAX_AMBIENT_DIM {
        return Err(Error::CapExceeded { what: "ambient dimension", cap: MAX_AMBIENT_DIM });
    }
    if points.len() > MAX_POINTS {
        return Err(Error::CapExceeded { what: "point count", cap: MAX_POINTS });
    }
    let pts: Vec<Vec<Rat>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let homog: Vec<Vec<Rat>> = pts
        .iter()
        .map(|p| std::iter::once(Rat::from_integer(1)).chain(p.iter().copied()).collect())
        .collect();
    let (_, pivots) = linalg::rref(homog.clone());

    // affine hull: y' . x = -y0 for every (y0, y') in the null space
    let null = linalg::nullspace(&homog, n + 1);
    let eq_rows: Vec<Vec<Rat>> =
        null.iter().map(|y| y[1..].iter().copied().chain([-y[0]]).collect()).collect();
    let (eq_rref, _) = if eq_rows.is_empty() { (vec![], vec![]) } else { linalg::rref(eq_rows) };
    let eq_pivots: Vec<usize> =
        eq_rref.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect();
    if eq_pivots.contains(&n) {
        unreachable!("points are nonempty, so the affine hull is consistent");
    }

    // pointed dual cone on the pivot columns
    let rows: Vec<Vec<i128>> = homog
        .iter()
        .map(|h| {
            let sel: Vec<Rat> = pivots.iter().map(|&c| h[c]).collect();
            let l = sel.iter().fold(1i128, |l, x| l.lcm(x.denom()));
            sel.iter().map(|x| (x * Rat::from_integer(l)).to_integer()).collect()
        })
        .collect();
    let centroid: Vec<Rat> = (0..n)
        .map(|j| pts.iter().map(|p| p[j]).sum::<Rat>() / Rat::from_integer(pts.len() as i128))
        .collect();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    let dist: Vec<Rat> = pts
        .iter()
        .map(|p| p.iter().zip(&centroid).map(|(a, c)| (a - c) * (a - c)).sum())
        .collect();
    order.sort_by(|&a, &b| dist[b].cmp(&dist[a]).then(a.cmp(&b)));
    let rays: Vec<Ray> = dd::extreme_rays(&rows, &order)?;

    let mut facets: BTreeSet<Halfspace> = BTreeSet::new();
    for r in &rays {
        let mut y = vec![Rat::zero(); n + 1];
        for (k, &c) in pivots.iter().enumerate() {
            y[c] = Rat::from_integer(r.v[k]);
        }
        let mut normal: Vec<Rat> = y[1..].iter().map(|x| -x).collect();
        let mut offset = y[0];
        for (row, &p) in eq_rref.iter().zip(&eq_pivots) {
            let coef = normal[p];
            if coef.is_zero() {
                continue;
            }
            for j in 0..n {
                normal[j] -= coef * row[j];
            }
            offset -= coef * row[n];
        }
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        facets.insert(primitive(&normal, offset)?);
    }
    let halfspaces: Vec<Halfspace> = facets.into_iter().collect();
    let equalities: Vec<Halfspace> = eq_rref
        .iter()
        .map(|row| primitive(&row[..n], row[n]))
        .collect::<Result<_>>()?;

    let eq_normals: Vec<Vec<Rat>> =
        equalities.iter().map(|e| e.normal.iter().map(|&x| linalg::rat(x)).collect()).collect();
    let vertices: Vec<Vec<Rat>> = pts
        .into_iter()
        .filter(|p| {
            let mut m = eq_normals.clone();
            for h in &halfspaces {
                if h.value(p) == h.offset {
                    m.push(h.normal.iter().map(|&x| linalg::rat(x)).collect());
                }
            }
            linalg::rank(&m) == n
        })
        .collect();
    Ok(RationalPolytope { ambient: n, vertices, halfspaces, dim: n - equalities.len(), equalities })
}

/// Vertices of a bounded H-description, returned in canonical form.
pub fn from_halfspaces(
    ambient: usize,
    halfspaces: &[Halfspace],
    equalities: &[Halfspace],
) -> Result<RationalPolytope> {
    // cone over P: t*b - n.x >= 0, t >= 0; equalities as two opposite rows
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut push = |normal: &[i64], offset: &Rat, sign: i128| {
        let d = *offset.denom();
        let mut row = vec![sign * offset.numer()];
        row.extend(normal.iter().map(|&c| -sign * c as i128 * d));
        rows.push(row);
    };
    for h in halfspaces {
        if h.normal.len() != ambient {
            return Err(Error::DimensionMismatch { expected: ambient, got: h.normal.len() });
        }
        push(&h.normal, &h.offset, 1);
    }
    for e in equalities {
        push(&e.normal, &e.offset, 1);
        push(&e.normal, &e.offset, -1);
    }
    let mut t = vec![0i128; ambient + 1];
    t[0] = 1;
    rows.push(t);
    let order: Vec<usize> = (0..rows.len()).collect();
    let rays = dd::extreme_rays(&rows, &order)?;
    let mut verts = Vec::new();
    for r in rays {
        if r.v[0] == 0 {
            return Err(Error::Unbounded);
        }
        let t = r.v[0];
        verts.push(r.v[1..].iter().map(|&x| Rat::new(x, t)).collect::<Vec<Rat>>());
    }
    if verts.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    convex_hull(&verts)
}
