//! Finite-type root data, weights, Weyl group arithmetic and the Bruhat order.
//!
//! Weights are stored in fundamental-weight coordinates, so `coords[i]` is the
//! pairing of the weight with the `i`-th simple coroot. Weyl group elements are
//! identified by their action on these coordinates; every element carries its
//! lexicographically minimal reduced word.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};

pub const DEFAULT_GROUP_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl std::str::FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return Err(Error::InvalidRootDatum(format!("unknown series {other:?}"))),
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j]` is the pairing of the `j`-th simple root with the `i`-th simple coroot.
    pub cartan: Vec<Vec<i64>>,
    #[serde(skip_serializing, default)]
    pub symmetrizers: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    #[serde(skip)]
    pub action: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.action
                .iter()
                .map(|row| row.iter().zip(&w.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

fn cartan_entry_from_lengths(len_i: i64, len_j: i64, bond: i64) -> i64 {
    // c_{ij} = 2 (a_i, a_j) / (a_i, a_i); inner product of adjacent simple roots is
    // -max(len)/2 for single/double/triple bonds normalised by squared lengths.
    if bond == 0 {
        return 0;
    }
    let inner = -(len_i.max(len_j)) / 2;
    2 * inner / len_i
}

impl RootDatum {
    /// Standard Cartan matrix with Bourbaki numbering.
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let valid = match series {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !valid {
            return Err(Error::InvalidRootDatum(format!(
                "{series}_{rank} is not a finite-type Dynkin diagram"
            )));
        }
        let n = rank;
        // squared root lengths (short = 2) and edges of the Dynkin diagram
        let mut lengths = vec![2i64; n];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match series {
            Series::A | Series::B | Series::C => {
                edges.extend((0..n - 1).map(|i| (i, i + 1)));
                if series == Series::B {
                    lengths = vec![4; n];
                    lengths[n - 1] = 2;
                } else if series == Series::C {
                    lengths[n - 1] = 4;
                }
            }
            Series::D => {
                edges.extend((0..n - 2).map(|i| (i, i + 1)));
                edges.push((n - 3, n - 1));
            }
            Series::E => {
                edges.push((0, 2));
                edges.push((1, 3));
                edges.extend((2..n - 1).map(|i| (i, i + 1)));
            }
            Series::F => {
                edges.extend([(0, 1), (1, 2), (2, 3)]);
                lengths = vec![4, 4, 2, 2];
            }
            Series::G => {
                edges.push((0, 1));
                lengths = vec![2, 6];
            }
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            cartan[i][j] = cartan_entry_from_lengths(lengths[i], lengths[j], 1);
            cartan[j][i] = cartan_entry_from_lengths(lengths[j], lengths[i], 1);
        }
        let symmetrizers = lengths.iter().map(|l| l / 2).collect();
        let datum = RootDatum { series, rank, cartan, symmetrizers };
        datum.validate()?;
        Ok(datum)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank;
        let c = &self.cartan;
        let d = &self.symmetrizers;
        if c.len() != n || c.iter().any(|r| r.len() != n) || d.len() != n {
            return Err(Error::InvalidRootDatum("shape mismatch".into()));
        }
        for i in 0..n {
            if c[i][i] != 2 || d[i] <= 0 {
                return Err(Error::InvalidRootDatum("bad diagonal or symmetrizer".into()));
            }
            for j in 0..n {
                if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                    return Err(Error::InvalidRootDatum(format!("bad entry ({i},{j})")));
                }
                if d[i] * c[i][j] != d[j] * c[j][i] {
                    return Err(Error::InvalidRootDatum("not symmetrizable".into()));
                }
            }
        }
        // positive definiteness via leading principal minors
        let sym: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| linalg::rat(d[i] * c[i][j])).collect())
            .collect();
        for k in 1..=n {
            let minor: Vec<Vec<Rat>> = sym[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !linalg::determinant(&minor).is_positive() {
                return Err(Error::InvalidRootDatum("not of finite type".into()));
            }
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }

    /// Simple root `alpha_i` (1-based) in fundamental coordinates: column `i` of the Cartan matrix.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|r| self.cartan[r][i - 1]).collect())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn reflect_weight(&self, i: usize, lambda: &Weight) -> Result<Weight> {
        self.check_index(i)?;
        if lambda.0.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: lambda.0.len() });
        }
        Ok(self.reflect_unchecked(i, lambda))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, lambda: &Weight) -> Weight {
        let p = lambda.0[i - 1];
        Weight((0..self.rank).map(|r| lambda.0[r] - p * self.cartan[r][i - 1]).collect())
    }

    /// Reducedness without enumerating the group: reading right to left, each
    /// letter must pair positively with the current image of rho.
    pub fn is_reduced_word(&self, word: &[usize]) -> Result<bool> {
        let mut mu = self.rho();
        for &i in word.iter().rev() {
            self.check_index(i)?;
            if mu.0[i - 1] <= 0 {
                return Ok(false);
            }
            mu = self.reflect_unchecked(i, &mu);
        }
        Ok(true)
    }

    /// Matrix of `s_i` acting on fundamental coordinates.
    pub fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank;
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let id = i64::from(r == c);
                        if c == i - 1 {
                            id - self.cartan[r][i - 1]
                        } else {
                            id
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Expresses a weight in the basis of simple roots.
    pub fn root_coordinates(&self, lambda: &Weight) -> Vec<Rat> {
        let c = linalg::to_rat_matrix(&self.cartan);
        let b: Vec<Rat> = lambda.0.iter().map(|&x| linalg::rat(x)).collect();
        linalg::solve(&c, &b).expect("Cartan matrix is invertible")
    }

    /// The Weyl-invariant symmetric form with `(alpha_i, alpha_j) = d_i c_ij`.
    pub fn form(&self, lambda: &Weight, mu: &Weight) -> Rat {
        let q = self.root_coordinates(mu);
        q.iter()
            .enumerate()
            .map(|(j, qj)| *qj * linalg::rat(self.symmetrizers[j] * lambda.0[j]))
            .sum()
    }

    /// Positive roots in fundamental coordinates, sorted by height then coordinates.
    pub fn positive_roots(&self) -> Vec<Weight> {
        let n = self.rank;
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut stack: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        while let Some(q) = stack.pop() {
            if !seen.insert(q.clone()) {
                continue;
            }
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| self.cartan[i][j] * q[j]).sum();
                let mut r = q.clone();
                r[i] -= pairing;
                if !seen.contains(&r) {
                    stack.push(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|q| q.iter().all(|&x| x >= 0)).collect();
        pos.sort_by_key(|q| (q.iter().sum::<i64>(), q.clone()));
        pos.iter()
            .map(|q| Weight((0..n).map(|i| (0..n).map(|j| self.cartan[i][j] * q[j]).sum()).collect()))
            .collect()
    }

    /// Dominant representative of the Weyl orbit of `lambda`.
    pub fn dominant_conjugate(&self, lambda: &Weight) -> Weight {
        let mut w = lambda.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect_unchecked(i + 1, &w);
        }
        w
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> u64 {
        let rho = self.rho();
        let lr = lambda.add(&rho);
        let mut num = Rat::from_integer(1);
        for alpha in self.positive_roots() {
            num *= self.form(&lr, &alpha) / self.form(&rho, &alpha);
        }
        debug_assert!(num.is_integer());
        num.to_integer() as u64
    }
}

/// The full Weyl group, enumerated and sorted by `(length, canonical word)`.
#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    bruhat: OnceLock<Vec<Vec<u64>>>,
}

fn mat_mul_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

fn mat_vec_i64(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<Self> {
        Self::with_cap(datum, DEFAULT_GROUP_CAP)
    }

    pub fn with_cap(datum: &RootDatum, cap: usize) -> Result<Self> {
        let n = datum.rank;
        let rho: Vec<i64> = vec![1; n];
        let refl: Vec<Vec<Vec<i64>>> = (1..=n).map(|i| datum.reflection_matrix(i)).collect();
        let identity: Vec<Vec<i64>> =
            (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
        let mut elements = vec![WeylElement { word: vec![], action: identity }];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(rho.clone(), 0);
        let mut level_start = 0;
        loop {
            let level_end = elements.len();
            for e in level_start..level_end {
                for i in 1..=n {
                    let action = mat_mul_i64(&elements[e].action, &refl[i - 1]);
                    let key = mat_vec_i64(&action, &rho);
                    if index.contains_key(&key) {
                        continue;
                    }
                    let mut word = elements[e].word.clone();
                    word.push(i);
                    index.insert(key, elements.len());
                    elements.push(WeylElement { word, action });
                    if elements.len() > cap {
                        return Err(Error::CapExceeded { what: "Weyl group order", cap });
                    }
                }
            }
            if elements.len() == level_end {
                break;
            }
            level_start = level_end;
        }
        let key_of = |a: &[Vec<i64>]| mat_vec_i64(a, &rho);
        let right = elements
            .iter()
            .map(|e| {
                (0..n)
                    .map(|i| index[&key_of(&mat_mul_i64(&e.action, &refl[i]))])
                    .collect()
            })
            .collect();
        let left = elements
            .iter()
            .map(|e| {
                (0..n)
                    .map(|i| index[&key_of(&mat_mul_i64(&refl[i], &e.action))])
                    .collect()
            })
            .collect();
        Ok(WeylGroup { datum: datum.clone(), elements, index, right, left, bruhat: OnceLock::new() })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn length(&self, idx: usize) -> usize {
        self.elements[idx].word.len()
    }

    /// Index of the element represented by an arbitrary (possibly non-reduced) word.
    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let mut cur = 0;
        for &i in word {
            if i == 0 || i > self.datum.rank {
                return Err(Error::IndexOutOfRange { index: i, rank: self.datum.rank });
            }
            cur = self.right[cur][i - 1];
        }
        Ok(cur)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        Ok(self.elements[self.index_of_word(word)?].clone())
    }

    pub fn index_of(&self, w: &WeylElement) -> usize {
        self.index[&mat_vec_i64(&w.action, &vec![1; self.datum.rank])]
    }

    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        Ok(self.length(self.index_of_word(word)?) == word.len())
    }

    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right[w][i - 1]
    }

    pub fn left_mul(&self, i: usize, w: usize) -> usize {
        self.left[w][i - 1]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b].word.iter().fold(a, |cur, &i| self.right[cur][i - 1])
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.elements[a].word.iter().rev().fold(0, |cur, &i| self.right[cur][i - 1])
    }

    /// All reduced words of an element, sorted lexicographically.
    pub fn reduced_words(&self, idx: usize) -> Vec<Vec<usize>> {
        fn go(g: &WeylGroup, idx: usize, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if idx == 0 {
                out.push(suffix.iter().rev().copied().collect());
                return;
            }
            let l = g.length(idx);
            for i in 1..=g.datum.rank {
                let prev = g.right_mul(idx, i);
                if g.length(prev) < l {
                    suffix.push(i);
                    go(g, prev, suffix, out);
                    suffix.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, idx, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Indices of all reflections `u s_i u^{-1}`.
    pub fn reflections(&self) -> Vec<usize> {
        let mut set = BTreeSet::new();
        for u in 0..self.len() {
            let uinv = self.inverse(u);
            for i in 1..=self.datum.rank {
                set.insert(self.mul(self.right_mul(u, i), uinv));
            }
        }
        set.into_iter().collect()
    }

    fn bruhat_table(&self) -> &Vec<Vec<u64>> {
        self.bruhat.get_or_init(|| {
            let n = self.len();
            let words = n.div_ceil(64);
            let refl = self.reflections();
            let mut covers: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (v, cv) in covers.iter_mut().enumerate() {
                for &t in &refl {
                    let w = self.mul(t, v);
                    if self.length(w) == self.length(v) + 1 {
                        cv.push(w);
                    }
                }
            }
            let mut up = vec![vec![0u64; words]; n];
            // elements are sorted by length, so reverse order visits covers first
            for v in (0..n).rev() {
                let mut bits = vec![0u64; words];
                bits[v / 64] |= 1 << (v % 64);
                for &w in &covers[v] {
                    for (b, u) in bits.iter_mut().zip(&up[w]) {
                        *b |= u;
                    }
                }
                up[v] = bits;
            }
            up
        })
    }

    pub fn bruhat_leq(&self, v: usize, w: usize) -> bool {
        let t = self.bruhat_table();
        t[v][w / 64] >> (w % 64) & 1 == 1
    }

    /// All pairs `(v, w)` with `v <= w`, ordered by `(l(v), l(w), words)`.
    pub fn bruhat_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|v| (0..self.len()).map(move |w| (v, w)))
            .filter(|&(v, w)| self.bruhat_leq(v, w))
            .collect();
        pairs.sort_by(|a, b| {
            (self.length(a.0), self.length(a.1), &self.elements[a.0].word, &self.elements[a.1].word)
                .cmp(&(
                    self.length(b.0),
                    self.length(b.1),
                    &self.elements[b.0].word,
                    &self.elements[b.1].word,
                ))
        });
        pairs
    }
}

/// Canonicalises a word by enumerating the group.
pub fn weyl_from_word(datum: &RootDatum, word: &[usize]) -> Result<WeylElement> {
    WeylGroup::new(datum)?.from_word(word)
}

pub fn enumerate_group(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
    WeylGroup::with_cap(datum, cap)
}

pub fn is_zero_weight(w: &Weight) -> bool {
    w.0.iter().all(Zero::is_zero)
}

pub fn parse_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    parse_list(s)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| Error::Parse(format!("negative letter {x}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> RootDatum {
        RootDatum::new(Series::A, n).unwrap()
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(a(2).cartan, vec![vec![2, -1], vec![-1, 2]]);
        let a3 = a(3);
        assert_eq!(a3.cartan[0][2], 0);
        assert_eq!(a3.cartan[0][1], -1);
        let g2 = RootDatum::new(Series::G, 2).unwrap();
        let mut off = vec![g2.cartan[0][1], g2.cartan[1][0]];
        off.sort();
        assert_eq!(off, vec![-3, -1]);
        let b2 = RootDatum::new(Series::B, 2).unwrap();
        assert_eq!(b2.cartan, vec![vec![2, -1], vec![-2, 2]]);
        let c3 = RootDatum::new(Series::C, 3).unwrap();
        assert_eq!(c3.cartan[1][2], -2);
        assert_eq!(c3.cartan[2][1], -1);
        for (s, n) in [(Series::D, 4), (Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4)] {
            RootDatum::new(s, n).unwrap();
        }
    }

    #[test]
    fn invalid_pairs() {
        for (s, n) in [(Series::A, 0), (Series::B, 1), (Series::C, 2), (Series::D, 3), (Series::E, 5), (Series::F, 3), (Series::G, 3)] {
            assert!(matches!(RootDatum::new(s, n), Err(Error::InvalidRootDatum(_))));
        }
    }

    #[test]
    fn reflections_of_weights() {
        let d = a(2);
        assert_eq!(d.reflect_weight(1, &Weight(vec![1, 0])).unwrap(), Weight(vec![-1, 1]));
        assert_eq!(d.reflect_weight(2, &Weight(vec![0, 1])).unwrap(), Weight(vec![1, -1]));
        assert_eq!(d.reflect_weight(1, &Weight(vec![0, 0])).unwrap(), Weight(vec![0, 0]));
        assert!(matches!(d.reflect_weight(3, &Weight(vec![0, 0])), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn group_orders() {
        for (s, n, order, maxlen) in [
            (Series::A, 2, 6, 3),
            (Series::A, 3, 24, 6),
            (Series::B, 2, 8, 4),
            (Series::G, 2, 12, 6),
            (Series::D, 4, 192, 12),
            (Series::F, 4, 1152, 24),
        ] {
            let g = WeylGroup::new(&RootDatum::new(s, n).unwrap()).unwrap();
            assert_eq!(g.len(), order, "{s}{n}");
            assert_eq!(g.length(g.longest()), maxlen);
            assert_eq!(RootDatum::new(s, n).unwrap().positive_roots().len(), maxlen);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let e8 = RootDatum::new(Series::E, 8).unwrap();
        assert!(matches!(WeylGroup::new(&e8), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn words_canonicalise() {
        let g = WeylGroup::new(&a(2)).unwrap();
        assert_eq!(g.from_word(&[1, 2, 1]).unwrap(), g.from_word(&[2, 1, 2]).unwrap());
        assert_eq!(g.from_word(&[1, 2, 1]).unwrap().word, vec![1, 2, 1]);
        assert_eq!(g.from_word(&[]).unwrap().word, Vec::<usize>::new());
        let e = g.from_word(&[1, 1]).unwrap();
        assert_eq!(e.length(), 0);
        assert!(!g.is_reduced(&[1, 1]).unwrap());
        assert_eq!(g.reduced_words(g.longest()), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert!(g.index_of_word(&[3]).is_err());
    }

    /// Subword criterion: v <= w iff some reduced word of w contains a reduced word of v
    /// as a subword. Used as an independent oracle for the cover-closure table.
    fn subword_leq(g: &WeylGroup, v: usize, w: usize) -> bool {
        let word = &g.element(w).word;
        let m = word.len();
        (0u32..(1 << m)).any(|mask| {
            let sub: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| word[k]).collect();
            g.index_of_word(&sub).unwrap() == v
        })
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for (s, n) in [(Series::A, 2), (Series::A, 3), (Series::B, 2), (Series::G, 2)] {
            let g = WeylGroup::new(&RootDatum::new(s, n).unwrap()).unwrap();
            for v in 0..g.len() {
                for w in 0..g.len() {
                    assert_eq!(g.bruhat_leq(v, w), subword_leq(&g, v, w));
                }
            }
        }
        let g = WeylGroup::new(&a(2)).unwrap();
        assert_eq!(g.bruhat_pairs().len(), 19);
        let s1 = g.index_of_word(&[1]).unwrap();
        let s2 = g.index_of_word(&[2]).unwrap();
        assert!(!g.bruhat_leq(s1, s2));
        assert!((0..6).all(|w| g.bruhat_leq(0, w)));
    }

    #[test]
    fn bruhat_is_partial_order() {
        for (s, n) in [(Series::A, 2), (Series::A, 3), (Series::B, 2)] {
            let g = WeylGroup::new(&RootDatum::new(s, n).unwrap()).unwrap();
            let m = g.len();
            for x in 0..m {
                assert!(g.bruhat_leq(x, x));
                for y in 0..m {
                    if x != y && g.bruhat_leq(x, y) {
                        assert!(!g.bruhat_leq(y, x));
                    }
                    for z in 0..m {
                        if g.bruhat_leq(x, y) && g.bruhat_leq(y, z) {
                            assert!(g.bruhat_leq(x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn longest_element_duality() {
        for n in [2, 3] {
            let g = WeylGroup::new(&a(n)).unwrap();
            let w0 = g.longest();
            for w in 0..g.len() {
                assert_eq!(g.length(w), g.length(w0) - g.length(g.mul(w0, w)));
            }
        }
    }

    #[test]
    fn action_is_product_of_reflections() {
        let d = RootDatum::new(Series::B, 2).unwrap();
        let g = WeylGroup::new(&d).unwrap();
        let lam = Weight(vec![3, -2]);
        for e in g.elements() {
            let direct = e.word.iter().rev().fold(lam.clone(), |acc, &i| d.reflect_weight(i, &acc).unwrap());
            assert_eq!(e.apply(&lam), direct);
        }
    }

    #[test]
    fn form_is_weyl_invariant() {
        for (s, n) in [(Series::A, 3), (Series::B, 2), (Series::G, 2), (Series::C, 3)] {
            let d = RootDatum::new(s, n).unwrap();
            let l = Weight((0..n as i64).map(|k| k + 1).collect());
            let m = Weight((0..n as i64).map(|k| 2 - k).collect());
            for i in 1..=n {
                let (rl, rm) = (d.reflect_weight(i, &l).unwrap(), d.reflect_weight(i, &m).unwrap());
                assert_eq!(d.form(&rl, &rm), d.form(&l, &m));
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(a(2).weyl_dimension(&Weight(vec![1, 1])), 8);
        assert_eq!(a(3).weyl_dimension(&Weight(vec![1, 1, 1])), 64);
        assert_eq!(a(1).weyl_dimension(&Weight(vec![3])), 4);
        let b2 = RootDatum::new(Series::B, 2).unwrap();
        assert_eq!(b2.weyl_dimension(&Weight(vec![1, 1])), 16);
        let g2 = RootDatum::new(Series::G, 2).unwrap();
        assert_eq!(g2.weyl_dimension(&Weight(vec![1, 0])), 7);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(a(2)).unwrap();
        assert_eq!(v, serde_json::json!({"series":"A","rank":2,"cartan":[[2,-1],[-1,2]]}));
        let g = WeylGroup::new(&a(2)).unwrap();
        let w = serde_json::to_value(g.element(g.longest())).unwrap();
        assert_eq!(w, serde_json::json!({"word":[1,2,1]}));
    }
}
