//! Exchange matrices: construction from reduced words, mutation, dominance.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::rootdata::RootDatum;

/// Rows are indexed by the mutable directions, columns by `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeMatrix {
    pub m: usize,
    /// Mutable indices in `1..=m`, increasing.
    pub unfrozen: Vec<usize>,
    pub entries: Vec<Vec<i64>>,
    /// Positive integers with `d_s e_{s,t} = -d_t e_{t,s}` on the principal part.
    pub symmetrizer: Vec<i64>,
    pub full_rank: bool,
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

impl ExchangeMatrix {
    pub fn new(m: usize, unfrozen: Vec<usize>, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.len() != unfrozen.len() {
            return Err(Error::DimensionMismatch { expected: unfrozen.len(), got: entries.len() });
        }
        if let Some(r) = entries.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, got: r.len() });
        }
        if unfrozen.windows(2).any(|w| w[0] >= w[1]) || unfrozen.iter().any(|&k| k == 0 || k > m) {
            return Err(Error::Parse(format!("bad mutable index list {unfrozen:?}")));
        }
        let symmetrizer = find_symmetrizer(&unfrozen, &entries).ok_or(Error::NotSkewSymmetrizable)?;
        let full_rank = linalg::rank_i64(&entries) == unfrozen.len();
        Ok(ExchangeMatrix { m, unfrozen, entries, symmetrizer, full_rank })
    }

    /// `e_{s,t}` for mutable `s` and any `t`, both 1-based.
    pub fn get(&self, s: usize, t: usize) -> i64 {
        let r = self.row_of(s).expect("s is mutable");
        self.entries[r][t - 1]
    }

    pub fn row_of(&self, k: usize) -> Option<usize> {
        self.unfrozen.binary_search(&k).ok()
    }

    pub fn is_mutable(&self, k: usize) -> bool {
        self.row_of(k).is_some()
    }

    fn check_direction(&self, k: usize) -> Result<usize> {
        self.row_of(k).ok_or(Error::FrozenDirection(k))
    }

    /// Matrix mutation in direction `k`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        let rk = self.check_direction(k)?;
        let row_k = &self.entries[rk];
        let entries: Vec<Vec<i64>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(ri, row)| {
                let i = self.unfrozen[ri];
                (1..=self.m)
                    .map(|j| {
                        let e = row[j - 1];
                        if i == k || j == k {
                            -e
                        } else {
                            let eik = row[k - 1];
                            e + eik.signum() * pos(eik * row_k[j - 1])
                        }
                    })
                    .collect()
            })
            .collect();
        let full_rank = linalg::rank_i64(&entries) == self.unfrozen.len();
        Ok(ExchangeMatrix {
            m: self.m,
            unfrozen: self.unfrozen.clone(),
            entries,
            symmetrizer: self.symmetrizer.clone(),
            full_rank,
        })
    }

    pub fn mutate_word(&self, word: &[usize]) -> Result<ExchangeMatrix> {
        word.iter().try_fold(self.clone(), |e, &k| e.mutate(k))
    }

    /// Tropical mutation of an extended g-vector in direction `k`.
    pub fn tropical_mutate(&self, g: &[i64], k: usize) -> Result<Vec<i64>> {
        let rk = self.check_direction(k)?;
        if g.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: g.len() });
        }
        let row = &self.entries[rk];
        let gk = g[k - 1];
        Ok((1..=self.m)
            .map(|j| if j == k { -gk } else { g[j - 1] + pos(-row[j - 1]) * gk + row[j - 1] * pos(gk) })
            .collect())
    }

    /// Solves `diff = v e` for the row vector `v`; unique under full rank.
    pub fn coefficients(&self, diff: &[i64]) -> Result<Option<Vec<Rat>>> {
        if !self.full_rank {
            return Err(Error::NotFullRank);
        }
        if diff.len() != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, got: diff.len() });
        }
        // transpose system: e^T v^T = diff^T
        let n = self.unfrozen.len();
        let et: Vec<Vec<Rat>> =
            (0..self.m).map(|j| (0..n).map(|r| linalg::rat(self.entries[r][j])).collect()).collect();
        let b: Vec<Rat> = diff.iter().map(|&x| linalg::rat(x)).collect();
        Ok(linalg::solve(&et, &b))
    }

    /// Nonnegative integer `v` with `diff = v e`, if any.
    pub fn nonnegative_coefficients(&self, diff: &[i64]) -> Result<Option<Vec<i64>>> {
        Ok(self.coefficients(diff)?.and_then(|v| {
            let ok = v.iter().all(|x| x.is_integer() && *x >= Rat::from_integer(0));
            ok.then(|| v.iter().map(|x| x.to_integer() as i64).collect())
        }))
    }

    /// Dominance order: `a <= a'` iff `a = a' + v e` with `v >= 0` integral.
    pub fn dominance_leq(&self, a: &[i64], a2: &[i64]) -> Result<bool> {
        let diff: Vec<i64> = a.iter().zip(a2).map(|(x, y)| x - y).collect();
        Ok(self.nonnegative_coefficients(&diff)?.is_some())
    }

    /// Arrows `s -> t` with multiplicity, for `e_{s,t} < 0` or `e_{t,s} > 0`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for s in 1..=self.m {
            for t in 1..=self.m {
                if s == t {
                    continue;
                }
                let mult = match (self.row_of(s), self.row_of(t)) {
                    (Some(rs), _) if self.entries[rs][t - 1] < 0 => -self.entries[rs][t - 1],
                    (None, Some(rt)) if self.entries[rt][s - 1] > 0 => self.entries[rt][s - 1],
                    _ => 0,
                };
                if mult > 0 {
                    out.push((s, t, mult));
                }
            }
        }
        out
    }

    /// Graphviz quiver; frozen vertices are boxes, multiple arrows are labelled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in 1..=self.m {
            let shape = if self.is_mutable(v) { "circle" } else { "box" };
            let _ = writeln!(s, "  {v} [shape={shape}];");
        }
        for (a, b, mult) in self.arrows() {
            if mult == 1 {
                let _ = writeln!(s, "  {a} -> {b};");
            } else {
                let _ = writeln!(s, "  {a} -> {b} [label=\"{mult}\"];");
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Positive integer `d` with `d_s e_{s,t} = -d_t e_{t,s}` on the principal
/// part, found by propagating ratios along nonzero entries.
fn find_symmetrizer(unfrozen: &[usize], entries: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = unfrozen.len();
    let b = |r: usize, c: usize| entries[r][unfrozen[c] - 1];
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Rat::from_integer(1));
        let mut stack = vec![root];
        while let Some(s) = stack.pop() {
            let ds = d[s].expect("visited");
            for t in 0..n {
                let (st, ts) = (b(s, t), b(t, s));
                if st == 0 && ts == 0 {
                    continue;
                }
                if st == 0 || ts == 0 || st.signum() == ts.signum() {
                    return None;
                }
                // d_t = -d_s e_st / e_ts
                let want = -ds * Rat::new(st as i128, ts as i128);
                match d[t] {
                    None => {
                        d[t] = Some(want);
                        stack.push(t);
                    }
                    Some(x) if x != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    if (0..n).any(|s| b(s, s) != 0) {
        return None;
    }
    let d: Vec<Rat> = d.into_iter().map(|x| x.expect("all visited")).collect();
    Some(linalg::primitive_integer(&d).into_iter().map(|x| x as i64).collect())
}

/// `k^+`: next position with the same letter, or `m + 1`.
fn next_same(word: &[usize], k: usize) -> usize {
    let m = word.len();
    (k + 1..=m).find(|&j| word[j - 1] == word[k - 1]).unwrap_or(m + 1)
}

/// The exchange matrix attached to a reduced word.
pub fn build_exchange_from_word(datum: &RootDatum, word: &[usize]) -> Result<ExchangeMatrix> {
    if !datum.is_reduced_word(word)? {
        return Err(Error::NotReduced { word: word.to_vec() });
    }
    let m = word.len();
    let plus: Vec<usize> = (1..=m).map(|k| next_same(word, k)).collect();
    let unfrozen: Vec<usize> = (1..=m).filter(|&j| plus[j - 1] != m + 1).collect();
    let c = |i: usize, j: usize| datum.cartan[i - 1][j - 1];
    let entries: Vec<Vec<i64>> = unfrozen
        .iter()
        .map(|&s| {
            let sp = plus[s - 1];
            (1..=m)
                .map(|t| {
                    let tp = plus[t - 1];
                    if sp == t {
                        1
                    } else if s == tp {
                        -1
                    } else if s < t && t < sp && sp < tp {
                        c(word[t - 1], word[s - 1])
                    } else if t < s && s < tp && tp < sp {
                        -c(word[t - 1], word[s - 1])
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    ExchangeMatrix::new(m, unfrozen, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Series;

    fn datum(s: Series, n: usize) -> RootDatum {
        RootDatum::new(s, n).unwrap()
    }

    #[test]
    fn sl4_matrix_and_quiver() {
        let e = build_exchange_from_word(&datum(Series::A, 3), &[1, 2, 1, 3, 2, 1]).unwrap();
        assert_eq!(e.unfrozen, vec![1, 2, 3]);
        assert_eq!(e.entries, vec![
            vec![0, -1, 1, 0, 0, 0],
            vec![1, 0, -1, -1, 1, 0],
            vec![-1, 1, 0, 0, -1, 1],
        ]);
        assert!(e.full_rank);
        let arrows: Vec<(usize, usize)> = e.arrows().iter().map(|&(a, b, _)| (a, b)).collect();
        let mut expected = vec![(1, 2), (3, 1), (2, 3), (2, 4), (5, 2), (3, 5), (6, 3)];
        expected.sort();
        assert_eq!(arrows, expected);
        let dot = e.to_dot();
        assert_eq!(dot.matches("->").count(), 7);
        assert!(dot.contains("6 [shape=box]") && dot.contains("1 [shape=circle]"));
    }

    #[test]
    fn small_words() {
        let e = build_exchange_from_word(&datum(Series::A, 2), &[1, 2, 1]).unwrap();
        assert_eq!((e.unfrozen.clone(), e.entries.clone()), (vec![1], vec![vec![0, -1, 1]]));
        let e1 = build_exchange_from_word(&datum(Series::A, 2), &[2]).unwrap();
        assert!(e1.unfrozen.is_empty() && e1.entries.is_empty());
        assert!(matches!(
            build_exchange_from_word(&datum(Series::A, 2), &[1, 1]),
            Err(Error::NotReduced { .. })
        ));
    }

    #[test]
    fn non_simply_laced_symmetrizer() {
        let d = datum(Series::B, 2);
        let e = build_exchange_from_word(&d, &[1, 2, 1, 2]).unwrap();
        assert_eq!(e.unfrozen, vec![1, 2]);
        let s = &e.symmetrizer;
        assert_eq!(s[0] * e.get(1, 2), -s[1] * e.get(2, 1));
        let g = build_exchange_from_word(&datum(Series::G, 2), &[1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(g.unfrozen.len(), 4);
        assert!(g.full_rank);
    }

    #[test]
    fn mutation() {
        let e = build_exchange_from_word(&datum(Series::A, 2), &[1, 2, 1]).unwrap();
        let m = e.mutate(1).unwrap();
        assert_eq!(m.entries, vec![vec![0, 1, -1]]);
        assert_eq!(m.mutate(1).unwrap(), e);
        assert_eq!(e.mutate(2), Err(Error::FrozenDirection(2)));
        let sl4 = build_exchange_from_word(&datum(Series::A, 3), &[1, 2, 1, 3, 2, 1]).unwrap();
        let m = sl4.mutate(1).unwrap();
        assert_eq!(m.entries[0], vec![0, 1, -1, 0, 0, 0]);
        // e_{2,3} + sgn(e_{2,1}) [e_{2,1} e_{1,3}]_+ = -1 + 1
        assert_eq!(m.get(2, 3), 0);
        assert_eq!(m.mutate(1).unwrap(), sl4);
    }

    #[test]
    fn tropical_and_dominance() {
        let e = build_exchange_from_word(&datum(Series::A, 2), &[1, 2, 1]).unwrap();
        assert_eq!(e.tropical_mutate(&[1, 0, 0], 1).unwrap(), vec![-1, 0, 1]);
        assert_eq!(e.tropical_mutate(&[0, 0, 0], 1).unwrap(), vec![0, 0, 0]);
        assert!(e.dominance_leq(&[0, -1, 1], &[0, 0, 0]).unwrap());
        assert!(e.dominance_leq(&[2, 3, 4], &[2, 3, 4]).unwrap());
        assert!(!e.dominance_leq(&[0, 1, 0], &[0, 0, 0]).unwrap());
        assert!(!e.dominance_leq(&[0, 0, 0], &[0, 1, 0]).unwrap());
        let low = ExchangeMatrix::new(2, vec![1, 2], vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(low.full_rank);
        let bad = ExchangeMatrix::new(3, vec![1, 2], vec![vec![0, 1, 1], vec![-1, 0, 0]]).unwrap();
        assert!(bad.full_rank);
        let deg = ExchangeMatrix::new(3, vec![1, 2], vec![vec![0, 0, 1], vec![0, 0, 1]]).unwrap();
        assert_eq!(deg.dominance_leq(&[0, 0, 0], &[0, 0, 0]), Err(Error::NotFullRank));
    }
}
