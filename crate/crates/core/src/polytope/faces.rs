//! Face lattice, lattice points and the union-of-faces certifier.

use std::collections::BTreeSet;

use super::dd::Bits;
use super::{Face, RationalPolytope};
use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::par::{self, Execution};

pub const MAX_BOX_POINTS: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceCertificate {
    /// Inclusion-maximal faces whose lattice points lie in the set.
    pub faces: Vec<Face>,
    /// Lattice points of each certificate face.
    pub face_points: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceUnion {
    Certificate(FaceCertificate),
    NotAFaceUnion { witness: Vec<i64> },
}

impl FaceUnion {
    pub fn is_certificate(&self) -> bool {
        matches!(self, FaceUnion::Certificate(_))
    }
}

impl RationalPolytope {
    fn incidence(&self) -> Vec<Bits> {
        self.halfspaces
            .iter()
            .map(|h| {
                let mut b = Bits::new(self.vertices.len());
                for (v, x) in self.vertices.iter().enumerate() {
                    if h.value(x) == h.offset {
                        b.set(v);
                    }
                }
                b
            })
            .collect()
    }

    fn affine_dim(&self, verts: &[usize]) -> usize {
        if verts.len() <= 1 {
            return 0;
        }
        let base = &self.vertices[verts[0]];
        let diffs: Vec<Vec<Rat>> = verts[1..]
            .iter()
            .map(|&v| self.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        linalg::rank(&diffs)
    }

    fn make_face(&self, inc: &[Bits], verts: Vec<usize>) -> Face {
        let tight = (0..inc.len()).filter(|&j| verts.iter().all(|&v| inc[j].get(v))).collect();
        let dim = self.affine_dim(&verts);
        Face { tight, vertices: verts, dim }
    }

    /// Every nonempty face exactly once, sorted by `(dim, vertices)`; the last is `P`.
    pub fn faces(&self) -> Vec<Face> {
        let inc = self.incidence();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([all.clone()]);
        let mut stack = vec![all];
        while let Some(f) = stack.pop() {
            for facet in &inc {
                let g: Vec<usize> = f.iter().copied().filter(|&v| facet.get(v)).collect();
                if !g.is_empty() && g.len() < f.len() && seen.insert(g.clone()) {
                    stack.push(g);
                }
            }
        }
        let mut faces: Vec<Face> = seen.into_iter().map(|v| self.make_face(&inc, v)).collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    /// The smallest face containing `x`, given that `x` lies in the polytope.
    pub fn minimal_face_of(&self, x: &[i64]) -> Face {
        let inc = self.incidence();
        let tight: Vec<usize> = (0..self.halfspaces.len()).filter(|&j| self.halfspaces[j].tight_int(x)).collect();
        let verts: Vec<usize> =
            (0..self.vertices.len()).filter(|&v| tight.iter().all(|&j| inc[j].get(v))).collect();
        self.make_face(&inc, verts)
    }

    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        self.lattice_points_with(Execution::default())
    }

    pub fn lattice_points_with(&self, exec: Execution) -> Result<Vec<Vec<i64>>> {
        if self.vertices.is_empty() {
            return Err(Error::Unbounded);
        }
        let n = self.ambient;
        if n == 0 {
            return Ok(vec![vec![]]);
        }
        let lo: Vec<i64> = (0..n)
            .map(|j| self.vertices.iter().map(|v| v[j].ceil().to_integer()).min().unwrap() as i64)
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|j| self.vertices.iter().map(|v| v[j].floor().to_integer()).max().unwrap() as i64)
            .collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(vec![]);
        }
        let volume: u128 = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1) as u128).product();
        if volume > MAX_BOX_POINTS {
            return Err(Error::CapExceeded { what: "lattice box", cap: MAX_BOX_POINTS as usize });
        }
        let first: Vec<i64> = (lo[0]..=hi[0]).collect();
        let chunks = par::map(&first, exec, |&x0| {
            let mut out = Vec::new();
            let mut cur = lo.clone();
            cur[0] = x0;
            loop {
                if self.contains_int(&cur) {
                    out.push(cur.clone());
                }
                // odometer over coordinates 1..n
                let mut j = n - 1;
                loop {
                    if j == 0 {
                        return out;
                    }
                    if cur[j] < hi[j] {
                        cur[j] += 1;
                        break;
                    }
                    cur[j] = lo[j];
                    j -= 1;
                }
            }
        });
        Ok(chunks.into_iter().flatten().collect())
    }

    /// Lattice points of `face`, drawn from the polytope's lattice points.
    pub fn face_points(&self, face: &Face, lattice_points: &[Vec<i64>]) -> Vec<Vec<i64>> {
        lattice_points
            .iter()
            .filter(|x| face.tight.iter().all(|&j| self.halfspaces[j].tight_int(x)))
            .cloned()
            .collect()
    }

    /// Decides whether `s` is the set of lattice points of a union of faces.
    pub fn union_of_faces(&self, s: &BTreeSet<Vec<i64>>) -> Result<FaceUnion> {
        let lp = self.lattice_points()?;
        let lp_set: BTreeSet<&Vec<i64>> = lp.iter().collect();
        if let Some(x) = s.iter().find(|x| !lp_set.contains(x)) {
            return Err(Error::NotLatticeSubset(x.clone()));
        }
        let faces = self.faces();
        let mut inside: Vec<(Face, Vec<Vec<i64>>)> = Vec::new();
        let mut covered: BTreeSet<Vec<i64>> = BTreeSet::new();
        for f in faces {
            let pts = self.face_points(&f, &lp);
            if !pts.is_empty() && pts.iter().all(|x| s.contains(x)) {
                covered.extend(pts.iter().cloned());
                inside.push((f, pts));
            }
        }
        if let Some(w) = s.iter().find(|x| !covered.contains(*x)) {
            return Ok(FaceUnion::NotAFaceUnion { witness: w.clone() });
        }
        let maximal: Vec<(Face, Vec<Vec<i64>>)> = inside
            .iter()
            .filter(|(f, _)| {
                !inside.iter().any(|(g, _)| {
                    g.vertices.len() > f.vertices.len() && f.vertices.iter().all(|v| g.vertices.contains(v))
                })
            })
            .cloned()
            .collect();
        let (faces, face_points) = maximal.into_iter().unzip();
        Ok(FaceUnion::Certificate(FaceCertificate { faces, face_points }))
    }
}
