//! Exact rational polytopes: hulls, H-representations, faces, lattice points,
//! string and Nakashima-Zelevinsky polytopes, and the union-of-faces certifier.

mod dd;
mod faces;
mod hull;
mod level;

use std::fmt::Write as _;

use serde::Serialize;

use crate::linalg::{self, Rat};

pub use faces::{FaceCertificate, FaceUnion};
pub use hull::{convex_hull, from_halfspaces, from_integer_points};
pub use level::{
    level_polytope, minkowski_check_sets, minkowski_condition_check, nz_polytope, string_polytope,
    Coordinates, LevelFamily, LevelPolytope, MinkowskiReport, DEFAULT_K_MAX,
};

pub const MAX_AMBIENT_DIM: usize = 12;
pub const MAX_POINTS: usize = 100_000;

/// `normal . x <= offset`, or `normal . x = offset` when stored as an equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub offset: Rat,
}

impl Halfspace {
    pub fn value(&self, x: &[Rat]) -> Rat {
        self.normal.iter().zip(x).map(|(&a, b)| linalg::rat(a) * b).sum()
    }

    pub fn value_int(&self, x: &[i64]) -> Rat {
        Rat::from_integer(self.normal.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.value_int(x) <= self.offset
    }

    pub fn tight_int(&self, x: &[i64]) -> bool {
        self.value_int(x) == self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub ambient: usize,
    /// Sorted lexicographically.
    pub vertices: Vec<Vec<Rat>>,
    /// Irredundant facet inequalities, sorted by `(normal, offset)`.
    pub halfspaces: Vec<Halfspace>,
    /// Equations of the affine hull, in reduced echelon form with primitive normals.
    pub equalities: Vec<Halfspace>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices into `halfspaces` that are tight on the whole face.
    pub tight: Vec<usize>,
    /// Indices into `vertices`.
    pub vertices: Vec<usize>,
    pub dim: usize,
}

#[derive(Serialize)]
struct HalfspaceJson {
    normal: Vec<i64>,
    offset: serde_json::Value,
}

fn rat_json(x: &Rat) -> serde_json::Value {
    if x.is_integer() {
        serde_json::json!(x.to_integer() as i64)
    } else {
        serde_json::json!(linalg::fmt_rat(x))
    }
}

impl RationalPolytope {
    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.halfspaces.iter().all(|h| h.contains_int(x)) && self.equalities.iter().all(|h| h.tight_int(x))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| h.value(x) <= h.offset)
            && self.equalities.iter().all(|h| h.value(x) == h.offset)
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| linalg::is_integral(v))
    }

    /// `k * P`.
    pub fn dilate(&self, k: i64) -> RationalPolytope {
        let kr = linalg::rat(k);
        let scale = |hs: &[Halfspace]| -> Vec<Halfspace> {
            hs.iter().map(|h| Halfspace { normal: h.normal.clone(), offset: h.offset * kr }).collect()
        };
        let mut vertices: Vec<Vec<Rat>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x * kr).collect()).collect();
        vertices.sort();
        RationalPolytope {
            ambient: self.ambient,
            vertices,
            halfspaces: scale(&self.halfspaces),
            equalities: scale(&self.equalities),
            dim: self.dim,
        }
    }

    pub fn to_json(&self, lattice_points: Option<&[Vec<i64>]>) -> serde_json::Value {
        let verts: Vec<Vec<String>> =
            self.vertices.iter().map(|v| v.iter().map(linalg::fmt_rat).collect()).collect();
        let hs = |list: &[Halfspace]| -> Vec<HalfspaceJson> {
            list.iter()
                .map(|h| HalfspaceJson { normal: h.normal.clone(), offset: rat_json(&h.offset) })
                .collect()
        };
        let mut v = serde_json::json!({
            "dim": self.dim,
            "vertices": verts,
            "halfspaces": hs(&self.halfspaces),
            "equalities": hs(&self.equalities),
        });
        if let Some(lp) = lattice_points {
            v["lattice_points"] = serde_json::json!(lp);
        }
        v
    }

    /// Inequalities grouped into chains `lower <= a_k <= upper`, one chain per line.
    /// Each inequality is solved for the lowest-index coordinate with coefficient +-1.
    pub fn inequality_text(&self) -> String {
        let n = self.ambient;
        // per variable: lists of lower and upper bound expressions
        let mut lower: Vec<Vec<String>> = vec![Vec::new(); n];
        let mut upper: Vec<Vec<String>> = vec![Vec::new(); n];
        let mut other: Vec<String> = Vec::new();
        for h in &self.halfspaces {
            let Some(k) = h.normal.iter().position(|&c| c.abs() == 1) else {
                other.push(format!("{} <= {}", expr(&h.normal, &Rat::from_integer(0)), linalg::fmt_rat(&h.offset)));
                continue;
            };
            let s = h.normal[k];
            // s a_k + rest . x <= b  =>  a_k <= b - rest.x (s=1) or a_k >= rest.x - b (s=-1)
            let rest: Vec<i64> = h.normal.iter().enumerate().map(|(j, &c)| if j == k { 0 } else { -c * s }).collect();
            let bound = expr(&rest, &(h.offset * linalg::rat(s)));
            if s == 1 {
                upper[k].push(bound);
            } else {
                lower[k].push(bound);
            }
        }
        let mut out = String::new();
        for k in (0..n).rev() {
            let var = format!("a_{}", k + 1);
            let (lo, up) = (&lower[k], &upper[k]);
            let pairs = lo.len().max(up.len());
            for p in 0..pairs {
                match (lo.get(p), up.get(p)) {
                    (Some(l), Some(u)) => {
                        let _ = writeln!(out, "{l} <= {var} <= {u}");
                    }
                    (Some(l), None) => {
                        let _ = writeln!(out, "{l} <= {var}");
                    }
                    (None, Some(u)) => {
                        let _ = writeln!(out, "{var} <= {u}");
                    }
                    (None, None) => {}
                }
            }
        }
        for o in other {
            let _ = writeln!(out, "{o}");
        }
        for e in &self.equalities {
            let _ = writeln!(out, "{} = {}", expr(&e.normal, &Rat::from_integer(0)), linalg::fmt_rat(&e.offset));
        }
        out
    }
}

/// Renders `coeffs . a + constant`, e.g. `a_2 - 2a_3 + 1`.
fn expr(coeffs: &[i64], constant: &Rat) -> String {
    let mut s = String::new();
    for (j, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        let _ = write!(s, "{mag}a_{}", j + 1);
    }
    let zero = Rat::from_integer(0);
    if s.is_empty() {
        return linalg::fmt_rat(constant);
    }
    if *constant > zero {
        let _ = write!(s, " + {}", linalg::fmt_rat(constant));
    } else if *constant < zero {
        let _ = write!(s, " - {}", linalg::fmt_rat(&-constant));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        assert_eq!(expr(&[0, 1, -2], &Rat::from_integer(1)), "a_2 - 2a_3 + 1");
        assert_eq!(expr(&[0, 0, 0], &Rat::from_integer(0)), "0");
        assert_eq!(expr(&[-1, 0], &Rat::new(-1, 2)), "-a_1 - 1/2");
    }

    #[test]
    fn paper_style_text() {
        let pts: Vec<Vec<i64>> = vec![
            vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 1],
            vec![1, 1, 0], vec![0, 2, 1], vec![2, 1, 0], vec![1, 2, 1],
        ];
        let p = from_integer_points(&pts).unwrap();
        let text = p.inequality_text();
        assert_eq!(text, "0 <= a_3 <= 1\na_3 <= a_2 <= a_3 + 1\n0 <= a_1 <= a_2 - 2a_3 + 1\n");
    }
}
