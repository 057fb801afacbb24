//! Generalized minors in type A and a numeric check that the initial seed's
//! exchange relations hold for minors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cluster::poly::Poly;
use crate::cluster::{build_exchange_from_word, Seed};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rootdata::{RootDatum, Series};

pub const MAX_MINOR_RANK: usize = 4;

fn require_type_a(datum: &RootDatum) -> Result<()> {
    if datum.series != Series::A {
        return Err(Error::NotTypeA(format!("{}{}", datum.series, datum.rank)));
    }
    Ok(())
}

/// Product of the lifts `[[0,-1],[1,0]]` in rows and columns `i, i+1`.
pub fn lift_matrix(datum: &RootDatum, word: &[usize]) -> Result<Vec<Vec<i64>>> {
    require_type_a(datum)?;
    let n = datum.rank + 1;
    let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| i64::from(r == c)).collect()).collect();
    for &i in word {
        if i == 0 || i > datum.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: datum.rank });
        }
        // right multiplication by the block acts on columns i-1, i
        for row in m.iter_mut() {
            let (a, b) = (row[i - 1], row[i]);
            row[i - 1] = b;
            row[i] = -a;
        }
    }
    Ok(m)
}

/// Lower unitriangular matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitriangularPoint {
    pub entries: Vec<Vec<BigRational>>,
}

impl UnitriangularPoint {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = entries.len();
        for (r, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            for (c, x) in row.iter().enumerate() {
                let ok = if r == c { x.is_one() } else if c > r { x.is_zero() } else { true };
                if !ok {
                    return Err(Error::Parse(format!("entry ({}, {}) breaks unitriangularity", r + 1, c + 1)));
                }
            }
        }
        Ok(UnitriangularPoint { entries })
    }

    /// Subdiagonal numerators in `-9..=9`, denominators in `1..=5`.
    pub fn random(size: usize, rng: &mut impl Rng) -> Self {
        let entries = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| match r.cmp(&c) {
                        std::cmp::Ordering::Equal => BigRational::one(),
                        std::cmp::Ordering::Less => BigRational::zero(),
                        std::cmp::Ordering::Greater => {
                            BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=5)))
                        }
                    })
                    .collect()
            })
            .collect();
        UnitriangularPoint { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorSpec {
    pub u: Vec<usize>,
    pub u2: Vec<usize>,
    pub i: usize,
}

/// Entries over any commutative ring used by the determinant below.
trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars())
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
}

/// Laplace expansion along the first row; sizes here are at most five.
fn det<R: Ring>(m: &[Vec<R>]) -> R {
    match m.len() {
        0 => unreachable!("minors have positive size"),
        1 => m[0][0].clone(),
        n => {
            let mut acc = m[0][0].zero_like();
            for c in 0..n {
                let minor: Vec<Vec<R>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&det(&minor));
                acc = if c % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
            }
            acc
        }
    }
}

/// The image of `e_1 ^ ... ^ e_i` under a signed permutation matrix: `(sign, rows)`.
fn wedge_image(lift: &[Vec<i64>], i: usize) -> (i64, Vec<usize>) {
    let mut rows: Vec<usize> = Vec::with_capacity(i);
    let mut sign = 1;
    for c in 0..i {
        let r = (0..lift.len()).find(|&r| lift[r][c] != 0).expect("lift is a signed permutation");
        sign *= lift[r][c];
        rows.push(r);
    }
    // sort rows, tracking the permutation sign
    for a in 0..rows.len() {
        for b in 0..rows.len() - 1 - a {
            if rows[b] > rows[b + 1] {
                rows.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    (sign, rows)
}

fn minor_generic<R: Ring>(datum: &RootDatum, spec: &MinorSpec, g: &[Vec<R>]) -> Result<R> {
    if spec.i == 0 || spec.i > datum.rank {
        return Err(Error::IndexOutOfRange { index: spec.i, rank: datum.rank });
    }
    let (su, rows) = wedge_image(&lift_matrix(datum, &spec.u)?, spec.i);
    let (sv, cols) = wedge_image(&lift_matrix(datum, &spec.u2)?, spec.i);
    let sub: Vec<Vec<R>> = rows.iter().map(|&r| cols.iter().map(|&c| g[r][c].clone()).collect()).collect();
    let d = det(&sub);
    Ok(if su * sv == 1 { d } else { d.neg() })
}

/// `Delta_{u w_i, u' w_i}(g)`: the coefficient of `u (e_1^...^e_i)` in
/// `g u' (e_1^...^e_i)`, with `u, u'` replaced by their lifts.
pub fn generalized_minor(datum: &RootDatum, spec: &MinorSpec, g: &UnitriangularPoint) -> Result<BigRational> {
    if g.size() != datum.rank + 1 {
        return Err(Error::DimensionMismatch { expected: datum.rank + 1, got: g.size() });
    }
    minor_generic(datum, spec, &g.entries)
}

/// `D(k, i)` for `k = 1..m`: `u` is the prefix `i_1 ... i_k`, `u' = e`.
pub fn initial_minor_specs(word: &[usize]) -> Vec<MinorSpec> {
    (1..=word.len()).map(|k| MinorSpec { u: word[..k].to_vec(), u2: vec![], i: word[k - 1] }).collect()
}

/// Generic lower unitriangular matrix over variables `x_{r,c}`, `r > c`.
fn symbolic_point(size: usize) -> Vec<Vec<Poly>> {
    let nv = size * (size - 1) / 2;
    let mut next = 0;
    (0..size)
        .map(|r| {
            (0..size)
                .map(|c| match r.cmp(&c) {
                    std::cmp::Ordering::Equal => Poly::one(nv),
                    std::cmp::Ordering::Less => Poly::zero(nv),
                    std::cmp::Ordering::Greater => {
                        next += 1;
                        Poly::var(nv, next - 1)
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorReport {
    pub word: Vec<usize>,
    pub direction: usize,
    pub samples_ok: usize,
    pub samples_skipped: usize,
    /// Symbolic mutation and the exchange binomial of minors agree on every sample.
    pub consistent: bool,
    /// The exchange binomial of minors is divisible by `D(k)` as a polynomial in
    /// the matrix entries, so the new variable is a regular function.
    pub regular: bool,
}

/// Checks each mutable direction (or just `direction`) on seeded random samples.
pub fn verify_initial_seed(
    datum: &RootDatum,
    word: &[usize],
    direction: Option<usize>,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<MinorReport>> {
    require_type_a(datum)?;
    if datum.rank > MAX_MINOR_RANK {
        return Err(Error::CapExceeded { what: "minor verification rank", cap: MAX_MINOR_RANK });
    }
    let matrix = build_exchange_from_word(datum, word)?;
    let directions: Vec<usize> = match direction {
        Some(k) if !matrix.is_mutable(k) => return Err(Error::FrozenDirection(k)),
        Some(k) => vec![k],
        None => matrix.unfrozen.clone(),
    };
    let specs = initial_minor_specs(word);
    let size = datum.rank + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<UnitriangularPoint> = (0..samples).map(|_| UnitriangularPoint::random(size, &mut rng)).collect();
    let values: Vec<Vec<BigRational>> = points
        .iter()
        .map(|g| specs.iter().map(|s| generalized_minor(datum, s, g)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let sym = symbolic_point(size);
    let sym_minors: Vec<Poly> = specs.iter().map(|s| minor_generic(datum, s, &sym)).collect::<Result<_>>()?;
    let initial = Seed::initial(matrix.clone());
    let mut reports = Vec::new();
    for k in directions {
        let mutated = initial.mutate(k)?.variables[k - 1].clone();
        let row = &matrix.entries[matrix.row_of(k).expect("mutable")];
        let outcomes: Vec<Option<bool>> = par::map(&values, exec, |d| {
            if d[k - 1].is_zero() {
                return None;
            }
            let symbolic = mutated.eval(d)?;
            let mut plus = BigRational::one();
            let mut minus = BigRational::one();
            for (x, &e) in d.iter().zip(row) {
                if e > 0 {
                    plus *= num_traits::pow(x.clone(), e as usize);
                } else if e < 0 {
                    minus *= num_traits::pow(x.clone(), (-e) as usize);
                }
            }
            let direct = (plus + minus) / &d[k - 1];
            Some(direct == symbolic)
        });
        let ok = outcomes.iter().filter(|o| o.is_some()).count();
        if ok == 0 {
            return Err(Error::AllSamplesSkipped(samples));
        }
        let mono = |sign: i64| -> Poly {
            sym_minors.iter().zip(row).fold(Poly::one(sym_minors[0].nvars()), |acc, (p, &e)| {
                let e = e * sign;
                (0..e.max(0)).fold(acc, |a, _| a.mul(p))
            })
        };
        let binomial = mono(1).add(&mono(-1));
        reports.push(MinorReport {
            word: word.to_vec(),
            direction: k,
            samples_ok: ok,
            samples_skipped: samples - ok,
            consistent: outcomes.iter().all(|o| o.unwrap_or(true)),
            regular: binomial.exact_div(&sym_minors[k - 1]).is_some(),
        });
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> RootDatum {
        RootDatum::new(Series::A, n).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn g3(x: i64, y: i64, z: i64) -> UnitriangularPoint {
        UnitriangularPoint::new(vec![
            vec![q(1), q(0), q(0)],
            vec![q(x), q(1), q(0)],
            vec![q(y), q(z), q(1)],
        ])
        .unwrap()
    }

    #[test]
    fn lifts() {
        assert_eq!(lift_matrix(&a(1), &[]).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(lift_matrix(&a(1), &[1]).unwrap(), vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(lift_matrix(&a(2), &[1, 2, 1]).unwrap(), lift_matrix(&a(2), &[2, 1, 2]).unwrap());
        assert!(matches!(lift_matrix(&RootDatum::new(Series::B, 2).unwrap(), &[1]), Err(Error::NotTypeA(_))));
    }

    #[test]
    fn lifts_are_word_independent() {
        for n in [2, 3] {
            let d = a(n);
            let g = crate::rootdata::WeylGroup::new(&d).unwrap();
            for w in 0..g.len() {
                let words = g.reduced_words(w);
                let first = lift_matrix(&d, &words[0]).unwrap();
                for word in &words[1..] {
                    assert_eq!(lift_matrix(&d, word).unwrap(), first);
                }
            }
        }
    }

    #[test]
    fn a2_minors() {
        let d = a(2);
        let g = g3(2, 3, 5);
        let m = |u: &[usize], i| generalized_minor(&d, &MinorSpec { u: u.to_vec(), u2: vec![], i }, &g).unwrap();
        assert_eq!(m(&[], 1), q(1));
        assert_eq!(m(&[], 2), q(1));
        assert_eq!(m(&[1], 1), q(2));
        assert_eq!(m(&[1, 2], 2), q(2 * 5 - 3));
        assert_eq!(m(&[1, 2, 1], 1), q(3));
    }

    /// `Delta_{u w_i, u' w_i}(g)` is the leading principal minor of `u^T g u'`.
    #[test]
    fn minors_match_conjugated_principal_minors() {
        let d = a(3);
        let grp = crate::rootdata::WeylGroup::new(&d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = UnitriangularPoint::random(4, &mut rng);
            for _ in 0..5 {
                let u = grp.element(rng.gen_range(0..grp.len())).word.clone();
                let u2 = grp.element(rng.gen_range(0..grp.len())).word.clone();
                let i = rng.gen_range(1..=3);
                let lu = lift_matrix(&d, &u).unwrap();
                let lv = lift_matrix(&d, &u2).unwrap();
                let h: Vec<Vec<BigRational>> = (0..4)
                    .map(|r| {
                        (0..4)
                            .map(|c| {
                                let mut s = BigRational::zero();
                                for p in 0..4 {
                                    for t in 0..4 {
                                        s += q(lu[p][r] * lv[t][c]) * &g.entries[p][t];
                                    }
                                }
                                s
                            })
                            .collect()
                    })
                    .collect();
                let lead: Vec<Vec<BigRational>> = h[..i].iter().map(|row| row[..i].to_vec()).collect();
                let spec = MinorSpec { u, u2, i };
                assert_eq!(generalized_minor(&d, &spec, &g).unwrap(), det(&lead));
            }
        }
    }

    #[test]
    fn a2_mutation_is_entry() {
        let d = a(2);
        let word = [1, 2, 1];
        let seed = Seed::initial(build_exchange_from_word(&d, &word).unwrap()).mutate(1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let g = UnitriangularPoint::random(3, &mut rng);
            let vals: Vec<BigRational> =
                initial_minor_specs(&word).iter().map(|s| generalized_minor(&d, s, &g).unwrap()).collect();
            if vals[0].is_zero() {
                continue;
            }
            assert_eq!(seed.variables[0].eval(&vals).unwrap(), g.entries[2][1]);
        }
        let r = verify_initial_seed(&d, &word, None, 50, 1, Execution::Sequential).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].consistent && r[0].regular);
        assert_eq!(verify_initial_seed(&d, &word, Some(2), 5, 1, Execution::Sequential), Err(Error::FrozenDirection(2)));
    }

    #[test]
    fn a3_all_directions() {
        let d = a(3);
        let r = verify_initial_seed(&d, &[1, 2, 1, 3, 2, 1], None, 100, 3, Execution::Parallel).unwrap();
        assert_eq!(r.len(), 3);
        for rep in &r {
            assert!(rep.consistent && rep.regular, "{rep:?}");
            assert_eq!(rep.samples_ok + rep.samples_skipped, 100);
        }
    }
}
