//! The Z^infinity crystal attached to a reduced word of the longest element,
//! highest weight crystals generated inside it, the string parametrization and
//! Kashiwara embedding, and Demazure / opposite Demazure / Richardson subsets.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Rat};
use crate::par::{self, Execution};
use crate::rootdata::{RootDatum, Weight, WeylGroup};

pub const DEFAULT_CRYSTAL_CAP: usize = 2_000_000;

/// How the color sequence continues past position `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// 1, 2, ..., n repeated, skipping a color equal to its predecessor.
    Cyclic,
    /// n, n-1, ..., 1 repeated, skipping a color equal to its predecessor.
    ReverseCyclic,
}

#[derive(Clone, Debug)]
pub struct WordContext {
    pub datum: RootDatum,
    pub word: Vec<usize>,
    /// Colors `j_1, j_2, ...` of positions, truncated at a horizon beyond `N` in
    /// which every color occurs at least once.
    colors: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Entries `a_1..a_N`; index 0 is position 1, the rightmost displayed coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZSequence(pub Vec<i64>);

impl WordContext {
    pub fn new(datum: &RootDatum, word: &[usize]) -> Result<Self> {
        Self::with_extension(datum, word, Extension::Cyclic)
    }

    pub fn with_extension(datum: &RootDatum, word: &[usize], ext: Extension) -> Result<Self> {
        let group = WeylGroup::new(datum)?;
        let idx = group.index_of_word(word)?;
        if idx != group.longest() || word.len() != group.length(idx) {
            return Err(Error::NotLongestWord { word: word.to_vec() });
        }
        let n = datum.rank;
        let mut colors: Vec<usize> = word.iter().rev().copied().collect();
        let cycle: Vec<usize> = match ext {
            Extension::Cyclic => (1..=n).collect(),
            Extension::ReverseCyclic => (1..=n).rev().collect(),
        };
        let mut seen = BTreeSet::new();
        let mut k = 0;
        // For rank one no legal extension exists; the single color simply repeats.
        while seen.len() < n {
            let c = cycle[k % n];
            k += 1;
            if n > 1 && colors.last() == Some(&c) {
                continue;
            }
            colors.push(c);
            seen.insert(c);
        }
        Ok(WordContext { datum: datum.clone(), word: word.to_vec(), colors })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn color(&self, position: usize) -> usize {
        self.colors[position - 1]
    }

    pub fn zero(&self) -> ZSequence {
        ZSequence(vec![0; self.len()])
    }

    /// `sigma_k` for every position in the horizon (index 0 is position 1).
    fn sigmas(&self, a: &ZSequence) -> Vec<i64> {
        let n = self.datum.rank;
        let big_n = self.len();
        let mut out = vec![0i64; self.colors.len()];
        // running sum of a_l alpha_{j_l} over l > k, in fundamental coordinates
        let mut tail = vec![0i64; n];
        for k in (0..self.colors.len()).rev() {
            let c = self.colors[k] - 1;
            let ak = if k < big_n { a.0[k] } else { 0 };
            out[k] = ak + tail[c];
            if ak != 0 {
                for (r, t) in tail.iter_mut().enumerate() {
                    *t += ak * self.datum.cartan[r][c];
                }
            }
        }
        out
    }

    /// `sigma^{(i)}`, which is `epsilon_i` on the image of B(infinity).
    pub fn sigma_i(&self, a: &ZSequence, i: usize) -> i64 {
        let s = self.sigmas(a);
        (0..s.len()).filter(|&k| self.colors[k] == i).map(|k| s[k]).max().unwrap_or(0)
    }

    pub fn apply(&self, a: &ZSequence, i: usize, dir: Direction) -> Result<Option<ZSequence>> {
        if i == 0 || i > self.datum.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.datum.rank });
        }
        let s = self.sigmas(a);
        let positions: Vec<usize> = (0..s.len()).filter(|&k| self.colors[k] == i).collect();
        let top = positions.iter().map(|&k| s[k]).max().unwrap_or(0);
        let argmax: Vec<usize> = positions.into_iter().filter(|&k| s[k] == top).collect();
        match dir {
            Direction::Raise => {
                if top <= 0 {
                    return Ok(None);
                }
                let k = *argmax.last().expect("nonempty");
                let mut out = a.clone();
                out.0[k] -= 1;
                Ok(Some(out))
            }
            Direction::Lower => {
                let k = argmax[0];
                if k >= self.len() {
                    return Err(Error::PositionOverflow { position: k + 1, len: self.len() });
                }
                let mut out = a.clone();
                out.0[k] += 1;
                Ok(Some(out))
            }
        }
    }

    /// Weight `-sum a_k alpha_{j_k}` in fundamental coordinates.
    pub fn wt_inf(&self, a: &ZSequence) -> Weight {
        let n = self.datum.rank;
        let mut w = vec![0i64; n];
        for (k, &ak) in a.0.iter().enumerate() {
            let c = self.colors[k] - 1;
            for (r, x) in w.iter_mut().enumerate() {
                *x -= ak * self.datum.cartan[r][c];
            }
        }
        Weight(w)
    }

    /// Coordinate `m` carries color `i_m`: the sequence read left to right.
    pub fn psi(&self, a: &ZSequence) -> Vec<i64> {
        a.0.iter().rev().copied().collect()
    }
}

#[derive(Clone, Debug)]
pub struct LambdaCrystal {
    pub context: WordContext,
    pub lambda: Weight,
    /// Sorted by entries; index 0 is the highest weight element.
    pub elements: Vec<ZSequence>,
    /// `f[b][i-1]`
    pub f: Vec<Vec<Option<usize>>>,
    /// `e[b][i-1]`
    pub e: Vec<Vec<Option<usize>>>,
    pub wt: Vec<Weight>,
    pub eps: Vec<Vec<i64>>,
    pub phi: Vec<Vec<i64>>,
    index: HashMap<ZSequence, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SubsetTag {
    Demazure(Vec<usize>),
    OppositeDemazure(Vec<usize>),
    Richardson(Vec<usize>, Vec<usize>),
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalSubset {
    pub members: BTreeSet<usize>,
    pub tag: SubsetTag,
}

impl CrystalSubset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &CrystalSubset) -> bool {
        self.members.is_subset(&other.members)
    }
}

#[derive(Serialize)]
struct CrystalJson {
    lambda: Weight,
    word: Vec<usize>,
    elements: Vec<Vec<i64>>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct EdgeJson {
    from: Vec<i64>,
    to: Vec<i64>,
    color: usize,
}

impl LambdaCrystal {
    pub fn generate(ctx: &WordContext, lambda: &Weight) -> Result<Self> {
        Self::generate_with(ctx, lambda, DEFAULT_CRYSTAL_CAP, Execution::default())
    }

    pub fn generate_with(
        ctx: &WordContext,
        lambda: &Weight,
        cap: usize,
        exec: Execution,
    ) -> Result<Self> {
        let n = ctx.datum.rank;
        if lambda.0.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: lambda.0.len() });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.0.clone()));
        }
        if ctx.datum.weyl_dimension(lambda) as u128 > cap as u128 {
            return Err(Error::CapExceeded { what: "crystal size", cap });
        }
        let phi_of = |a: &ZSequence| -> Vec<i64> {
            let wt = lambda.add(&ctx.wt_inf(a));
            (1..=n).map(|i| ctx.sigma_i(a, i) + wt.0[i - 1]).collect()
        };
        let mut seen: BTreeSet<ZSequence> = BTreeSet::new();
        seen.insert(ctx.zero());
        let mut frontier = vec![ctx.zero()];
        while !frontier.is_empty() {
            let children: Vec<Result<Vec<ZSequence>>> = par::map(&frontier, exec, |a| {
                let phi = phi_of(a);
                let mut out = Vec::new();
                for i in 1..=n {
                    if phi[i - 1] > 0 {
                        out.push(ctx.apply(a, i, Direction::Lower)?.expect("lowering is total"));
                    }
                }
                Ok(out)
            });
            let mut next = Vec::new();
            for c in children {
                for b in c? {
                    if seen.insert(b.clone()) {
                        next.push(b);
                    }
                }
            }
            if seen.len() > cap {
                return Err(Error::CapExceeded { what: "crystal size", cap });
            }
            frontier = next;
        }
        let elements: Vec<ZSequence> = seen.into_iter().collect();
        let index: HashMap<ZSequence, usize> =
            elements.iter().cloned().enumerate().map(|(k, a)| (a, k)).collect();
        let data: Vec<(Weight, Vec<i64>, Vec<i64>, Vec<Option<usize>>)> =
            par::map(&elements, exec, |a| {
                let wt = lambda.add(&ctx.wt_inf(a));
                let eps: Vec<i64> = (1..=n).map(|i| ctx.sigma_i(a, i)).collect();
                let phi: Vec<i64> = (0..n).map(|i| eps[i] + wt.0[i]).collect();
                let f = (1..=n)
                    .map(|i| {
                        (phi[i - 1] > 0).then(|| {
                            let b = ctx.apply(a, i, Direction::Lower).ok().flatten().expect("in crystal");
                            index[&b]
                        })
                    })
                    .collect();
                (wt, eps, phi, f)
            });
        let mut e = vec![vec![None; n]; elements.len()];
        let mut wt = Vec::with_capacity(elements.len());
        let mut eps = Vec::with_capacity(elements.len());
        let mut phi = Vec::with_capacity(elements.len());
        let mut f = Vec::with_capacity(elements.len());
        for (b, (w, ep, ph, fb)) in data.into_iter().enumerate() {
            for (i, t) in fb.iter().enumerate() {
                if let Some(t) = t {
                    e[*t][i] = Some(b);
                }
            }
            wt.push(w);
            eps.push(ep);
            phi.push(ph);
            f.push(fb);
        }
        Ok(LambdaCrystal { context: ctx.clone(), lambda: lambda.clone(), elements, f, e, wt, eps, phi, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn highest(&self) -> usize {
        0
    }

    pub fn lowest(&self) -> usize {
        (0..self.len())
            .find(|&b| self.phi[b].iter().all(|&p| p == 0))
            .expect("finite crystal has a lowest element")
    }

    pub fn index_of(&self, a: &ZSequence) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn index_of_psi(&self, psi: &[i64]) -> Option<usize> {
        self.index_of(&ZSequence(psi.iter().rev().copied().collect()))
    }

    pub fn f_tilde(&self, b: usize, i: usize) -> Option<usize> {
        self.f[b][i - 1]
    }

    pub fn e_tilde(&self, b: usize, i: usize) -> Option<usize> {
        self.e[b][i - 1]
    }

    pub fn psi(&self, b: usize) -> Vec<i64> {
        self.context.psi(&self.elements[b])
    }

    /// String parametrization: maximal raising strings in the order of the word.
    pub fn phi_string(&self, b: usize) -> Vec<i64> {
        let ctx = &self.context;
        let mut a = self.elements[b].clone();
        let mut out = Vec::with_capacity(ctx.len());
        for &i in &ctx.word {
            let mut k = 0;
            while let Some(next) = ctx.apply(&a, i, Direction::Raise).expect("valid color") {
                a = next;
                k += 1;
            }
            out.push(k);
        }
        assert!(a == ctx.zero(), "did not reach highest weight");
        out
    }

    pub fn all_psi(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|b| self.psi(b)).collect()
    }

    pub fn all_phi(&self) -> Vec<Vec<i64>> {
        (0..self.len()).map(|b| self.phi_string(b)).collect()
    }

    fn close(&self, set: &mut BTreeSet<usize>, i: usize, lower: bool) {
        let start: Vec<usize> = set.iter().copied().collect();
        for mut b in start {
            loop {
                let next = if lower { self.f_tilde(b, i) } else { self.e_tilde(b, i) };
                match next {
                    Some(t) => {
                        set.insert(t);
                        b = t;
                    }
                    None => break,
                }
            }
        }
    }

    /// Demazure crystal of `w`, built from a chosen reduced word of `w`.
    pub fn demazure_word(&self, word: &[usize]) -> CrystalSubset {
        let mut set = BTreeSet::from([self.highest()]);
        for &i in word.iter().rev() {
            self.close(&mut set, i, true);
        }
        CrystalSubset { members: set, tag: SubsetTag::Demazure(word.to_vec()) }
    }

    /// Opposite Demazure crystal from a reduced word of `w_0 v^{-1}`.
    pub fn opposite_demazure_word(&self, v_word: &[usize], complement_word: &[usize]) -> CrystalSubset {
        let mut set = BTreeSet::from([self.lowest()]);
        for &i in complement_word {
            self.close(&mut set, i, false);
        }
        CrystalSubset { members: set, tag: SubsetTag::OppositeDemazure(v_word.to_vec()) }
    }

    pub fn demazure_subset(&self, group: &WeylGroup, w: usize) -> CrystalSubset {
        self.demazure_word(&group.element(w).word)
    }

    pub fn opposite_demazure_subset(&self, group: &WeylGroup, v: usize) -> CrystalSubset {
        let c = group.mul(group.longest(), group.inverse(v));
        self.opposite_demazure_word(&group.element(v).word, &group.element(c).word)
    }

    pub fn richardson_subset(&self, group: &WeylGroup, v: usize, w: usize) -> Result<CrystalSubset> {
        if !group.bruhat_leq(v, w) {
            return Err(Error::EmptyRichardson);
        }
        let d = self.demazure_subset(group, w);
        let o = self.opposite_demazure_subset(group, v);
        let members: BTreeSet<usize> = d.members.intersection(&o.members).copied().collect();
        if members.is_empty() {
            return Err(Error::TheoremViolation("Richardson crystal is empty for v <= w".into()));
        }
        Ok(CrystalSubset {
            members,
            tag: SubsetTag::Richardson(group.element(v).word.clone(), group.element(w).word.clone()),
        })
    }

    /// Weight multiset as a multiplicity map.
    pub fn character(&self) -> BTreeMap<Weight, u64> {
        let mut m = BTreeMap::new();
        for w in &self.wt {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut edges = Vec::new();
        for b in 0..self.len() {
            for i in 1..=self.context.datum.rank {
                if let Some(t) = self.f_tilde(b, i) {
                    edges.push(EdgeJson { from: self.psi(b), to: self.psi(t), color: i });
                }
            }
        }
        serde_json::to_value(CrystalJson {
            lambda: self.lambda.clone(),
            word: self.context.word.clone(),
            elements: self.all_psi(),
            edges,
        })
        .expect("serialisable")
    }

    /// Graphviz rendering; `label` picks the displayed coordinates of a node.
    pub fn to_dot(&self, label: impl Fn(usize) -> Vec<i64>) -> String {
        let show = |v: Vec<i64>| {
            let parts: Vec<String> = v.iter().map(i64::to_string).collect();
            format!("({})", parts.join(", "))
        };
        let mut s = String::from("digraph crystal {\n  rankdir=LR;\n");
        for b in 0..self.len() {
            let _ = writeln!(s, "  n{b} [label=\"{}\"];", show(label(b)));
        }
        for b in 0..self.len() {
            for i in 1..=self.context.datum.rank {
                if let Some(t) = self.f_tilde(b, i) {
                    let _ = writeln!(s, "  n{b} -> n{t} [label=\"{i}\"];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Weight multiplicities of the irreducible module with highest weight `lambda`,
/// by Freudenthal's recursion. Independent of all crystal code.
pub fn weight_multiplicities_oracle(
    datum: &RootDatum,
    lambda: &Weight,
    cap: usize,
) -> Result<(BTreeMap<Weight, u64>, u64)> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0.clone()));
    }
    let n = datum.rank;
    let in_hull = |mu: &Weight| -> bool {
        let d = datum.dominant_conjugate(mu);
        let q = datum.root_coordinates(&lambda.sub(&d));
        q.iter().all(|x| x.is_integer() && *x >= Rat::from_integer(0))
    };
    // weights reached by subtracting simple roots, with their depth below lambda
    let mut depth: BTreeMap<Weight, i64> = BTreeMap::new();
    depth.insert(lambda.clone(), 0);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        let h = depth[&mu];
        for i in 1..=n {
            let nu = mu.sub(&datum.simple_root(i));
            if !depth.contains_key(&nu) && in_hull(&nu) {
                depth.insert(nu.clone(), h + 1);
                queue.push_back(nu);
                if depth.len() > cap {
                    return Err(Error::CapExceeded { what: "weight set", cap });
                }
            }
        }
    }
    let mut order: Vec<(&Weight, &i64)> = depth.iter().collect();
    order.sort_by_key(|(w, h)| (**h, (*w).clone()));
    let roots = datum.positive_roots();
    let rho = datum.rho();
    let lr = lambda.add(&rho);
    let norm_lr = datum.form(&lr, &lr);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    let mut total = 0u64;
    for (mu, _) in order {
        let m = if mu == lambda {
            1
        } else {
            let mut sum = Rat::from_integer(0);
            for alpha in &roots {
                let mut k = 1;
                loop {
                    let nu = mu.add(&alpha.scale(k));
                    match mult.get(&nu) {
                        Some(&c) => sum += linalg::rat(c as i64) * datum.form(&nu, alpha),
                        None if depth.contains_key(&nu) => {}
                        None => break,
                    }
                    k += 1;
                }
            }
            let mr = mu.add(&rho);
            let denom = norm_lr - datum.form(&mr, &mr);
            let val = Rat::from_integer(2) * sum / denom;
            assert!(val.is_integer(), "Freudenthal produced a non-integer");
            val.to_integer() as u64
        };
        if m > 0 {
            mult.insert(mu.clone(), m);
            total += m;
            if total as usize > cap {
                return Err(Error::CapExceeded { what: "module dimension", cap });
            }
        }
    }
    Ok((mult, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Series;

    fn a2() -> (WordContext, LambdaCrystal) {
        let d = RootDatum::new(Series::A, 2).unwrap();
        let ctx = WordContext::new(&d, &[1, 2, 1]).unwrap();
        let c = LambdaCrystal::generate(&ctx, &Weight(vec![1, 1])).unwrap();
        (ctx, c)
    }

    fn set(v: &[[i64; 3]]) -> BTreeSet<Vec<i64>> {
        v.iter().map(|x| x.to_vec()).collect()
    }

    #[test]
    fn zinf_operators() {
        let (ctx, _) = a2();
        let z = ctx.zero();
        let f1 = ctx.apply(&z, 1, Direction::Lower).unwrap().unwrap();
        assert_eq!(f1.0[0], 1);
        assert_eq!(ctx.psi(&f1), vec![0, 0, 1]);
        for i in 1..=2 {
            assert_eq!(ctx.apply(&z, i, Direction::Raise).unwrap(), None);
        }
        let f21 = ctx.apply(&f1, 2, Direction::Lower).unwrap().unwrap();
        assert_eq!(ctx.psi(&f21), vec![0, 1, 1]);
        assert!(ctx.apply(&z, 3, Direction::Lower).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let (ctx, _) = a2();
        // position 2 has color 2 and sigma_2 = a_2 + c_{2,1} a_3 = -1, so the
        // minimum of M^{(2)} lies past N; such a sequence is not in the image
        let r = ctx.apply(&ZSequence(vec![0, 0, 1]), 2, Direction::Lower);
        assert!(matches!(r, Err(Error::PositionOverflow { .. })));
    }

    #[test]
    fn paper_sl3_example() {
        let (_, c) = a2();
        assert_eq!(c.len(), 8);
        let psi: BTreeSet<Vec<i64>> = c.all_psi().into_iter().collect();
        assert_eq!(
            psi,
            set(&[[0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 1, 0], [0, 2, 1], [1, 1, 1], [1, 2, 1]])
        );
        let phi: BTreeSet<Vec<i64>> = c.all_phi().into_iter().collect();
        assert_eq!(
            phi,
            set(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 1], [1, 1, 0], [0, 2, 1], [2, 1, 0], [1, 2, 1]])
        );
        let low = c.lowest();
        assert_eq!(c.phi_string(low), vec![1, 2, 1]);
        assert_eq!(c.psi(low), vec![1, 2, 1]);
        assert_eq!(c.phi_string(c.f_tilde(0, 2).unwrap()), vec![0, 1, 0]);
        assert_eq!(c.psi(c.f_tilde(0, 1).unwrap()), vec![0, 0, 1]);
        assert_eq!(c.phi_string(0), vec![0, 0, 0]);
    }

    fn edge_set(c: &LambdaCrystal, label: impl Fn(usize) -> Vec<i64>) -> BTreeSet<(Vec<i64>, Vec<i64>, usize)> {
        let mut s = BTreeSet::new();
        for b in 0..c.len() {
            for i in 1..=2 {
                if let Some(t) = c.f_tilde(b, i) {
                    s.insert((label(b), label(t), i));
                }
            }
        }
        s
    }

    #[test]
    fn paper_diagrams_match() {
        let (_, c) = a2();
        let e = |a: [i64; 3], b: [i64; 3], i| (a.to_vec(), b.to_vec(), i);
        let string_diagram = BTreeSet::from([
            e([0, 0, 0], [1, 0, 0], 1),
            e([1, 0, 0], [0, 1, 1], 2),
            e([0, 1, 1], [0, 2, 1], 2),
            e([0, 2, 1], [1, 2, 1], 1),
            e([0, 0, 0], [0, 1, 0], 2),
            e([0, 1, 0], [1, 1, 0], 1),
            e([1, 1, 0], [2, 1, 0], 1),
            e([2, 1, 0], [1, 2, 1], 2),
        ]);
        assert_eq!(edge_set(&c, |b| c.phi_string(b)), string_diagram);
        let psi_diagram = BTreeSet::from([
            e([0, 0, 0], [0, 0, 1], 1),
            e([0, 0, 1], [0, 1, 1], 2),
            e([0, 1, 1], [0, 2, 1], 2),
            e([0, 2, 1], [1, 2, 1], 1),
            e([0, 0, 0], [0, 1, 0], 2),
            e([0, 1, 0], [1, 1, 0], 1),
            e([1, 1, 0], [1, 1, 1], 1),
            e([1, 1, 1], [1, 2, 1], 2),
        ]);
        assert_eq!(edge_set(&c, |b| c.psi(b)), psi_diagram);
    }

    #[test]
    fn rank_one_chain() {
        let d = RootDatum::new(Series::A, 1).unwrap();
        let ctx = WordContext::new(&d, &[1]).unwrap();
        for m in 0..6 {
            let c = LambdaCrystal::generate(&ctx, &Weight(vec![m])).unwrap();
            assert_eq!(c.len() as i64, m + 1);
            let mut b = 0;
            let mut steps = 0;
            while let Some(t) = c.f_tilde(b, 1) {
                b = t;
                steps += 1;
            }
            assert_eq!(steps, m);
        }
    }

    #[test]
    fn a3_size_and_character() {
        let d = RootDatum::new(Series::A, 3).unwrap();
        let ctx = WordContext::new(&d, &[1, 2, 1, 3, 2, 1]).unwrap();
        let lam = Weight(vec![1, 1, 1]);
        let c = LambdaCrystal::generate(&ctx, &lam).unwrap();
        assert_eq!(c.len(), 64);
        let (mult, dim) = weight_multiplicities_oracle(&d, &lam, 1 << 20).unwrap();
        assert_eq!(dim, 64);
        assert_eq!(c.character(), mult);
    }

    #[test]
    fn freudenthal_small_cases() {
        let d = RootDatum::new(Series::A, 2).unwrap();
        let (m, dim) = weight_multiplicities_oracle(&d, &Weight(vec![1, 1]), 1000).unwrap();
        assert_eq!(dim, 8);
        assert_eq!(m[&Weight(vec![0, 0])], 2);
        let d = RootDatum::new(Series::A, 1).unwrap();
        let (m, dim) = weight_multiplicities_oracle(&d, &Weight(vec![3]), 1000).unwrap();
        assert_eq!(dim, 4);
        assert!(m.values().all(|&x| x == 1));
        let d = RootDatum::new(Series::A, 3).unwrap();
        assert_eq!(weight_multiplicities_oracle(&d, &Weight(vec![1, 1, 1]), 1000).unwrap().1, 64);
        for (s, n, lam) in [(Series::B, 2, vec![1, 1]), (Series::G, 2, vec![1, 1]), (Series::C, 3, vec![0, 1, 1])] {
            let d = RootDatum::new(s, n).unwrap();
            let lam = Weight(lam);
            assert_eq!(weight_multiplicities_oracle(&d, &lam, 100_000).unwrap().1, d.weyl_dimension(&lam));
        }
    }

    #[test]
    fn characters_match_for_other_types() {
        for (s, n, word, lam) in [
            (Series::B, 2, vec![1, 2, 1, 2], vec![1, 1]),
            (Series::B, 2, vec![2, 1, 2, 1], vec![2, 1]),
            (Series::G, 2, vec![1, 2, 1, 2, 1, 2], vec![1, 1]),
            (Series::C, 3, vec![1, 2, 1, 3, 2, 1, 3, 2, 3], vec![1, 0, 1]),
        ] {
            let d = RootDatum::new(s, n).unwrap();
            let ctx = WordContext::new(&d, &word).unwrap();
            let lam = Weight(lam);
            let c = LambdaCrystal::generate(&ctx, &lam).unwrap();
            let (mult, dim) = weight_multiplicities_oracle(&d, &lam, 1 << 20).unwrap();
            assert_eq!(c.len() as u64, dim, "{s}{n}");
            assert_eq!(c.character(), mult);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let d = RootDatum::new(Series::A, 2).unwrap();
        assert!(matches!(WordContext::new(&d, &[1, 2]), Err(Error::NotLongestWord { .. })));
        assert!(matches!(WordContext::new(&d, &[1, 2, 1, 1, 1]), Err(Error::NotLongestWord { .. })));
        let ctx = WordContext::new(&d, &[1, 2, 1]).unwrap();
        assert!(matches!(LambdaCrystal::generate(&ctx, &Weight(vec![-1, 1])), Err(Error::NotDominant(_))));
        assert!(matches!(
            LambdaCrystal::generate_with(&ctx, &Weight(vec![5, 5]), 10, Execution::Sequential),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn demazure_examples() {
        let (_, c) = a2();
        let d = RootDatum::new(Series::A, 2).unwrap();
        let g = WeylGroup::new(&d).unwrap();
        let phis = |s: &CrystalSubset| -> BTreeSet<Vec<i64>> { s.members.iter().map(|&b| c.phi_string(b)).collect() };
        assert_eq!(c.demazure_subset(&g, 0).members, BTreeSet::from([0]));
        assert_eq!(c.demazure_subset(&g, g.longest()).len(), 8);
        let s2s1 = g.index_of_word(&[2, 1]).unwrap();
        assert_eq!(
            phis(&c.demazure_subset(&g, s2s1)),
            set(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 1], [0, 2, 1]])
        );
        assert_eq!(c.opposite_demazure_subset(&g, 0).len(), 8);
        assert_eq!(c.opposite_demazure_subset(&g, g.longest()).members, BTreeSet::from([c.lowest()]));
        let s1 = g.index_of_word(&[1]).unwrap();
        assert_eq!(
            phis(&c.opposite_demazure_subset(&g, s1)),
            set(&[[1, 0, 0], [0, 1, 1], [0, 2, 1], [2, 1, 0], [1, 2, 1]])
        );
        assert_eq!(phis(&c.richardson_subset(&g, s1, s2s1).unwrap()), set(&[[1, 0, 0], [0, 1, 1], [0, 2, 1]]));
        assert_eq!(c.richardson_subset(&g, 0, g.longest()).unwrap().len(), 8);
        let s2 = g.index_of_word(&[2]).unwrap();
        assert!(matches!(c.richardson_subset(&g, s1, s2), Err(Error::EmptyRichardson)));
        for w in 0..g.len() {
            let r = c.richardson_subset(&g, w, w).unwrap();
            assert_eq!(r.len(), 1);
            let b = *r.members.iter().next().unwrap();
            assert_eq!(c.wt[b], g.element(w).apply(&c.lambda));
        }
    }

    #[test]
    fn json_and_dot() {
        let (_, c) = a2();
        let j = c.to_json();
        assert_eq!(j["elements"].as_array().unwrap().len(), 8);
        assert_eq!(j["edges"].as_array().unwrap().len(), 8);
        let dot = c.to_dot(|b| c.psi(b));
        assert!(dot.contains("label=\"(1, 2, 1)\""));
        assert_eq!(dot.matches("->").count(), 8);
    }
}
