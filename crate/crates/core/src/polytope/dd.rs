//! Double description on integer rays: extreme rays of a pointed cone `{y : A y >= 0}`.

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};

#[derive(Clone, Debug)]
pub(crate) struct Ray {
    pub v: Vec<i128>,
    pub tight: Bits,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Bits(pub Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn contains(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    let mut s: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        let p = x.checked_mul(*y).ok_or(Error::Overflow("ray evaluation"))?;
        s = s.checked_add(p).ok_or(Error::Overflow("ray evaluation"))?;
    }
    Ok(s)
}

fn normalize(mut v: Vec<i128>) -> Vec<i128> {
    let g = linalg::gcd_slice(&v);
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    v
}

/// Extreme rays of `{y : rows[k] . y >= 0 for all k}`. The rows must have full
/// column rank so the cone is pointed. `order` fixes the insertion order.
pub(crate) fn extreme_rays(rows: &[Vec<i128>], order: &[usize]) -> Result<Vec<Ray>> {
    let m = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    // greedy simplex basis
    let mut basis: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    for &k in order {
        if basis.len() == d {
            break;
        }
        let mut cand: Vec<Rat> = rows[k].iter().map(|&x| Rat::from_integer(x)).collect();
        let trial: Vec<Vec<Rat>> = echelon.iter().cloned().chain([cand.clone()]).collect();
        if linalg::rank(&trial) > echelon.len() {
            basis.push(k);
            echelon.push(std::mem::take(&mut cand));
        }
    }
    if basis.len() < d {
        return Err(Error::Unbounded);
    }
    let binv = linalg::inverse(&echelon).expect("basis rows are independent");
    let mut rays: Vec<Ray> = (0..d)
        .map(|c| {
            let col: Vec<Rat> = (0..d).map(|r| binv[r][c]).collect();
            let v = linalg::primitive_integer(&col);
            let mut tight = Bits::new(m);
            for (k, &b) in basis.iter().enumerate() {
                if k != c {
                    tight.set(b);
                }
            }
            Ray { v, tight }
        })
        .collect();
    for &k in order {
        if basis.contains(&k) {
            continue;
        }
        let a = &rows[k];
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let vals: Vec<i128> = rays.iter().map(|r| dot(a, &r.v)).collect::<Result<_>>()?;
        if vals.iter().all(|&s| s >= 0) {
            for (r, &s) in rays.iter_mut().zip(&vals) {
                if s == 0 {
                    r.tight.set(k);
                }
            }
            continue;
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                if common.count() + 2 < d {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(o, r)| o != p && o != q && r.tight.contains(&common));
                if blocked {
                    continue;
                }
                let (sp, sq) = (vals[p], vals[q]);
                let mut v = Vec::with_capacity(d);
                for (x, y) in rays[q].v.iter().zip(&rays[p].v) {
                    let l = sp.checked_mul(*x).ok_or(Error::Overflow("ray combination"))?;
                    let r = sq.checked_mul(*y).ok_or(Error::Overflow("ray combination"))?;
                    v.push(l.checked_sub(r).ok_or(Error::Overflow("ray combination"))?);
                }
                let mut tight = common;
                tight.set(k);
                next.push(Ray { v: normalize(v), tight });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                next.push(r);
            } else if vals[i] == 0 {
                r.tight.set(k);
                next.push(r);
            }
        }
        rays = next;
    }
    Ok(rays)
}
