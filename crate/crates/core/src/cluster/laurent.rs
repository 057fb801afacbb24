//! Rational functions in `A_1..A_m` kept in a unique normal form.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// `A^shift * num / den` where neither polynomial has a monomial factor,
/// `gcd(num, den) = 1` and `den` has positive leading coefficient. Two
/// expressions are equal as functions iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentExpr {
    shift: Vec<i64>,
    num: Poly,
    den: Poly,
}

impl LaurentExpr {
    pub fn zero(m: usize) -> Self {
        LaurentExpr { shift: vec![0; m], num: Poly::zero(m), den: Poly::one(m) }
    }

    pub fn constant(m: usize, c: i64) -> Self {
        Self::from_parts(vec![0; m], Poly::constant(m, BigInt::from(c)), Poly::one(m))
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, 1)
    }

    /// The initial variable `A_{i+1}`.
    pub fn var(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        Self::monomial(&e, 1)
    }

    /// `c * A^exps` with arbitrary integer exponents.
    pub fn monomial(exps: &[i64], c: i64) -> Self {
        let m = exps.len();
        Self::from_parts(exps.to_vec(), Poly::constant(m, BigInt::from(c)), Poly::one(m))
    }

    /// Sum of `c * A^e` over the given terms.
    pub fn from_terms(m: usize, terms: &[(Vec<i64>, i64)]) -> Self {
        terms.iter().fold(Self::zero(m), |acc, (e, c)| acc.add(&Self::monomial(e, *c)))
    }

    pub fn nvars(&self) -> usize {
        self.shift.len()
    }

    fn from_parts(shift: Vec<i64>, num: Poly, den: Poly) -> Self {
        let m = shift.len();
        if num.is_zero() {
            return Self::zero(m);
        }
        let mut shift = shift;
        let mn = num.monomial_gcd();
        let md = den.monomial_gcd();
        for j in 0..m {
            shift[j] += i64::from(mn[j]) - i64::from(md[j]);
        }
        let (num, den) = (num.shift_down(&mn), den.shift_down(&md));
        let g = poly::gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        if den.leading_coefficient().is_some_and(Signed::is_negative) {
            num = num.neg();
            den = den.neg();
        }
        LaurentExpr { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is a monomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_constant()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn add(&self, other: &Self) -> Self {
        let base: Vec<i64> = self.shift.iter().zip(&other.shift).map(|(a, b)| *a.min(b)).collect();
        let lift = |s: &[i64]| -> Vec<u32> { s.iter().zip(&base).map(|(a, b)| (a - b) as u32).collect() };
        let n1 = self.num.shift_up(&lift(&self.shift));
        let n2 = other.num.shift_up(&lift(&other.shift));
        let num = n1.mul(&other.den).add(&n2.mul(&self.den));
        Self::from_parts(base, num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        LaurentExpr { shift: self.shift.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let shift = self.shift.iter().zip(&other.shift).map(|(a, b)| a + b).collect();
        Self::from_parts(shift, self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let shift = self.shift.iter().map(|a| -a).collect();
        Ok(Self::from_parts(shift, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars()), |acc, _| acc.mul(self))
    }

    /// Terms `(exponent, coefficient)` of a Laurent polynomial, in increasing lex
    /// order of exponents.
    pub fn laurent_terms(&self) -> Result<Vec<(Vec<i64>, BigRational)>> {
        if !self.is_laurent() {
            return Err(Error::NotLaurent);
        }
        let d = self.den.leading_coefficient().cloned().unwrap_or_else(BigInt::one);
        Ok(self
            .num
            .terms()
            .map(|(e, c)| {
                let exps = e.iter().zip(&self.shift).map(|(&a, s)| i64::from(a) + s).collect();
                (exps, BigRational::new(c.clone(), d.clone()))
            })
            .collect())
    }

    /// Value at a point; `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut v = self.num.eval(point);
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        v /= d;
        for (x, &s) in point.iter().zip(&self.shift) {
            if s > 0 {
                v *= num_traits::pow(x.clone(), s as usize);
            } else if s < 0 {
                if x.is_zero() {
                    return None;
                }
                v /= num_traits::pow(x.clone(), (-s) as usize);
            }
        }
        Some(v)
    }
}

impl fmt::Display for LaurentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let pos = poly::monomial_text(self.shift.iter().map(|&s| s.max(0)));
        let neg = poly::monomial_text(self.shift.iter().map(|&s| (-s).max(0)));
        let num = if self.num.is_one() && !pos.is_empty() {
            pos
        } else if pos.is_empty() {
            self.num.to_string()
        } else {
            format!("{pos}*({})", self.num)
        };
        let den = match (self.den.is_one(), neg.is_empty()) {
            (true, true) => String::new(),
            (true, false) => neg,
            (false, true) => self.den.to_string(),
            (false, false) => format!("{neg}*({})", self.den),
        };
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            let num = if num.contains(' ') { format!("({num})") } else { num };
            let den = if den.contains([' ', '*']) { format!("({den})") } else { den };
            write!(f, "{num}/{den}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(m: usize, i: usize) -> LaurentExpr {
        LaurentExpr::var(m, i)
    }

    #[test]
    fn normal_form_is_unique() {
        let m = 3;
        let (a1, a2, a3) = (v(m, 0), v(m, 1), v(m, 2));
        let f = a2.add(&a3).div(&a1).unwrap();
        let g = a2.mul(&a1).add(&a3.mul(&a1)).div(&a1.mul(&a1)).unwrap();
        assert_eq!(f, g);
        assert!(f.is_laurent());
        assert_eq!(f.to_string(), "(A_2 + A_3)/A_1");
        assert_eq!(a3.div(&a1.mul(&a2)).unwrap().to_string(), "A_3/(A_1*A_2)");
        // (a1^2 - a2^2)/(a1 - a2) = a1 + a2
        let h = a1.mul(&a1).sub(&a2.mul(&a2)).div(&a1.sub(&a2)).unwrap();
        assert_eq!(h, a1.add(&a2));
        let r = a1.div(&a1.add(&a2)).unwrap();
        assert!(!r.is_laurent());
        assert_eq!(r.mul(&a1.add(&a2)), a1);
        assert!(f.sub(&g).is_zero());
        assert_eq!(LaurentExpr::zero(m).inv(), Err(Error::ZeroFunction));
    }

    #[test]
    fn negative_denominator_sign() {
        let m = 2;
        let f = v(m, 0).div(&v(m, 1).neg().add(&LaurentExpr::constant(m, 1))).unwrap();
        let g = v(m, 0).neg().div(&v(m, 1).sub(&LaurentExpr::constant(m, 1))).unwrap();
        assert_eq!(f, g);
        assert!(f.denominator().leading_coefficient().unwrap().is_positive());
    }

    #[test]
    fn terms_and_eval() {
        let f = LaurentExpr::from_terms(3, &[(vec![0, 0, 0], 1), (vec![0, -1, 1], 1)]);
        let t = f.laurent_terms().unwrap();
        let exps: Vec<Vec<i64>> = t.iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(exps, vec![vec![0, -1, 1], vec![0, 0, 0]]);
        let r = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(f.eval(&[r(5), r(2), r(3)]), Some(BigRational::new(5.into(), 2.into())));
        assert_eq!(f.eval(&[r(5), r(0), r(3)]), None);
    }
}
