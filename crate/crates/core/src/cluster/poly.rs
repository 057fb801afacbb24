//! Multivariate integer polynomials with exact division and gcd.
//!
//! Terms are keyed by exponent vectors; `BTreeMap` order is lexicographic with
//! variable 0 most significant, which is also the monomial order used for
//! leading terms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigInt) -> Self {
        debug_assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.is_constant() && self.terms.values().all(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading().map(|(_, c)| c)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Gcd of the coefficients, zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Componentwise minimum exponent: the largest monomial dividing `self`.
    pub fn monomial_gcd(&self) -> Vec<u32> {
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn shift_down(&self, m: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn shift_up(&self, m: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Makes the leading coefficient positive.
    pub fn with_positive_lead(self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut q = Poly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let t = Poly::monomial(self.nvars, e, qc);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coefficients with respect to `x_v`, each free of `x_v`.
    fn coefficients_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let d = std::mem::take(&mut f[v]);
            out.entry(d).or_insert_with(|| Poly::zero(self.nvars)).add_term(f, c.clone());
        }
        out
    }

    fn coefficient_in(&self, v: usize, d: u32) -> Poly {
        self.coefficients_in(v).remove(&d).unwrap_or_else(|| Poly::zero(self.nvars))
    }

    fn content_in(&self, v: usize) -> Poly {
        self.coefficients_in(v).into_values().fold(Poly::zero(self.nvars), |g, c| gcd(&g, &c))
    }

    fn primitive_in(&self, v: usize) -> Poly {
        let c = self.content_in(v);
        self.exact_div(&c).expect("content divides")
    }

    fn times_var_power(&self, v: usize, k: u32) -> Poly {
        let mut m = vec![0; self.nvars];
        m[v] = k;
        self.shift_up(&m)
    }

    /// Pseudo-remainder of `p` by `q` in `x_v`.
    fn pseudo_rem(p: &Poly, q: &Poly, v: usize) -> Poly {
        let n = q.degree_in(v);
        let lq = q.coefficient_in(v, n);
        let mut r = p.clone();
        while !r.is_zero() && r.degree_in(v) >= n {
            let d = r.degree_in(v);
            let lr = r.coefficient_in(v, d);
            r = lq.mul(&r).sub(&lr.mul(&q.times_var_power(v, d - n)));
        }
        r
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }
}

/// Greatest common divisor with positive leading coefficient. Recursive over
/// variables, with primitive pseudo-remainder sequences in the main variable.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().with_positive_lead();
    }
    if b.is_zero() {
        return a.clone().with_positive_lead();
    }
    let n = a.nvars;
    let main = (0..n).find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0);
    let Some(v) = main else {
        return Poly::constant(n, a.content().gcd(&b.content()));
    };
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content_in(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content_in(v), b);
    }
    let (ca, cb) = (a.content_in(v), b.content_in(v));
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let (mut p, mut q) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    let g = loop {
        let r = Poly::pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v) == 0 {
            break Poly::one(n);
        }
        p = q;
        q = r.primitive_in(v);
    };
    c.mul(&g.primitive_in(v)).with_positive_lead()
}

impl fmt::Display for Poly {
    /// Variables print as `A_1, A_2, ...`; highest lex term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = c.abs();
            let mono = monomial_text(e.iter().map(|&x| i64::from(x)));
            match (mag.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn monomial_text(exps: impl Iterator<Item = i64>) -> String {
    let parts: Vec<String> = exps
        .enumerate()
        .filter(|(_, e)| *e != 0)
        .map(|(j, e)| if e == 1 { format!("A_{}", j + 1) } else { format!("A_{}^{}", j + 1, e) })
        .collect();
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    fn c(n: usize, k: i64) -> Poly {
        Poly::constant(n, BigInt::from(k))
    }

    #[test]
    fn arithmetic_and_division() {
        let (a, b) = (x(2, 0), x(2, 1));
        let s = a.add(&b);
        let sq = s.mul(&s);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.exact_div(&s), Some(s.clone()));
        assert_eq!(sq.exact_div(&a), None);
        assert_eq!(s.sub(&s), Poly::zero(2));
        assert_eq!(sq.to_string(), "A_1^2 + 2*A_1*A_2 + A_2^2");
    }

    #[test]
    fn gcds() {
        let n = 3;
        let (a, b, z) = (x(n, 0), x(n, 1), x(n, 2));
        // (a+b)(a-z) and (a+b)(b+2)
        let f = a.add(&b).mul(&a.sub(&z));
        let g = a.add(&b).mul(&b.add(&c(n, 2)));
        assert_eq!(gcd(&f, &g), a.add(&b));
        // integer content and sign
        assert_eq!(gcd(&f.scale(&BigInt::from(-6)), &g.scale(&BigInt::from(4))), a.add(&b).scale(&BigInt::from(2)));
        // coprime
        assert_eq!(gcd(&a.add(&c(n, 1)), &b), c(n, 1));
        // gcd involving only later variables
        let h = b.mul(&z).add(&c(n, 1));
        assert_eq!(gcd(&h.mul(&a), &h.mul(&b.add(&z))), h);
    }

    #[test]
    fn evaluation() {
        let n = 2;
        let p = x(n, 0).mul(&x(n, 0)).sub(&x(n, 1).scale(&BigInt::from(3)));
        let pt = [BigRational::new(1.into(), 2.into()), BigRational::from_integer(1.into())];
        assert_eq!(p.eval(&pt), BigRational::new((-11).into(), 4.into()));
    }
}
