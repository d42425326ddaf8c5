use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{ArbNat, ArbRat};

pub type Exponent = [u32; 3];

fn degree(e: &Exponent) -> u32 {
    e[0] + e[1] + e[2]
}

fn add_exp(a: &Exponent, b: &Exponent) -> Exponent {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn divides(a: &Exponent, b: &Exponent) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

/// Power series in three variables with exact rational coefficients, known
/// for all monomials of total degree at most `order`. Zero coefficients are
/// not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    order: u32,
    terms: BTreeMap<Exponent, ArbRat>,
}

impl TSeries {
    pub fn zero(order: u32) -> Self {
        TSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(value: ArbRat, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.insert([0, 0, 0], value);
        s
    }

    pub fn one(order: u32) -> Self {
        Self::constant(ArbRat::one(), order)
    }

    /// The `index`-th variable (0, 1 or 2).
    pub fn var(index: usize, order: u32) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        let mut s = Self::zero(order);
        s.insert(e, ArbRat::one());
        s
    }

    fn insert(&mut self, e: Exponent, value: ArbRat) {
        if degree(&e) <= self.order && !value.is_zero() {
            self.terms.insert(e, value);
        }
    }

    fn add_to(&mut self, e: Exponent, value: ArbRat) {
        if degree(&e) > self.order || value.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(ArbRat::zero);
        *slot += value;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, e: Exponent) -> ArbRat {
        self.terms.get(&e).cloned().unwrap_or_else(ArbRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ArbRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        let f = ArbRat::from_integer(BigInt::from(factor));
        let mut out = Self::zero(self.order);
        for (e, c) in &self.terms {
            out.insert(*e, c * &f);
        }
        out
    }

    /// `a + b * self`.
    pub fn affine(&self, a: i64, b: i64) -> Self {
        let mut s = self.scale_int(b);
        s.add_to([0, 0, 0], ArbRat::from_integer(BigInt::from(a)));
        s
    }

    /// Multiplicative inverse by graded recursion; `None` unless the
    /// constant term is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.terms.get(&[0, 0, 0])?.clone();
        let inv0 = c0.recip();
        let mut monomials: Vec<Exponent> = Vec::new();
        for d in 0..=self.order {
            for a in 0..=d {
                for b in 0..=(d - a) {
                    monomials.push([a, b, d - a - b]);
                }
            }
        }
        let rest: Vec<(&Exponent, &ArbRat)> = self.terms.iter().filter(|(e, _)| degree(e) > 0).collect();
        let mut out = Self::zero(self.order);
        out.insert([0, 0, 0], inv0.clone());
        for m in monomials.into_iter().skip(1) {
            let mut acc = ArbRat::zero();
            for (e, c) in &rest {
                if divides(e, &m) {
                    let other = [m[0] - e[0], m[1] - e[1], m[2] - e[2]];
                    if let Some(prev) = out.terms.get(&other) {
                        acc += *c * prev;
                    }
                }
            }
            out.insert(m, -(acc * &inv0));
        }
        Some(out)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates the integer polynomial given as `(exponent, coefficient)`
    /// pairs at `(a, b, c)`, nesting by the first exponent, then the second,
    /// so only the outer two levels cost a series product.
    pub fn eval_poly(poly: &[(Exponent, i64)], a: &TSeries, b: &TSeries, c: &TSeries) -> Self {
        let order = a.order.min(b.order).min(c.order);
        let max_c = poly.iter().map(|(e, _)| e[2]).max().unwrap_or(0);
        let mut c_pows = vec![Self::one(order)];
        for k in 1..=max_c {
            let next = &c_pows[k as usize - 1] * c;
            c_pows.push(next);
        }
        let mut by_ab: BTreeMap<(u32, u32), Vec<(u32, i64)>> = BTreeMap::new();
        for (e, coef) in poly {
            by_ab.entry((e[0], e[1])).or_default().push((e[2], *coef));
        }
        let max_a = poly.iter().map(|(e, _)| e[0]).max().unwrap_or(0);
        let max_b = poly.iter().map(|(e, _)| e[1]).max().unwrap_or(0);
        let mut outer = Self::zero(order);
        for ea in (0..=max_a).rev() {
            let mut inner = Self::zero(order);
            for eb in (0..=max_b).rev() {
                let mut leaf = Self::zero(order);
                if let Some(list) = by_ab.get(&(ea, eb)) {
                    for (ec, coef) in list {
                        leaf = &leaf + &c_pows[*ec as usize].scale_int(*coef);
                    }
                }
                inner = &(&inner * b) + &leaf;
            }
            outer = &(&outer * a) + &inner;
        }
        outer
    }

    /// Coefficients as naturals; fails on a fractional or negative one.
    pub fn to_naturals(&self, context: &str) -> Result<BTreeMap<Exponent, ArbNat>> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::NonIntegerCoefficient {
                    order: degree(e) as usize,
                    context: format!("{context} at x^{} y^{} u^{}", e[0], e[1], e[2]),
                });
            }
            out.insert(*e, c.to_integer().magnitude().clone());
        }
        Ok(out)
    }
}

impl Add for &TSeries {
    type Output = TSeries;

    fn add(self, rhs: &TSeries) -> TSeries {
        let mut out = TSeries::zero(self.order.min(rhs.order));
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_to(*e, c.clone());
        }
        out
    }
}

impl Sub for &TSeries {
    type Output = TSeries;

    fn sub(self, rhs: &TSeries) -> TSeries {
        let mut out = TSeries::zero(self.order.min(rhs.order));
        for (e, c) in &self.terms {
            out.add_to(*e, c.clone());
        }
        for (e, c) in &rhs.terms {
            out.add_to(*e, -c);
        }
        out
    }
}

impl Mul for &TSeries {
    type Output = TSeries;

    fn mul(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        let mut acc: BTreeMap<Exponent, ArbRat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &rhs.terms {
                if da + degree(eb) <= order {
                    *acc.entry(add_exp(ea, eb)).or_insert_with(ArbRat::zero) += ca * cb;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TSeries { order, terms: acc }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> ArbRat {
        ArbRat::from_integer(BigInt::from(n))
    }

    #[test]
    fn inverse_of_one_minus_sum() {
        let s = &(&TSeries::var(0, 4) + &TSeries::var(1, 4)) + &TSeries::var(2, 4);
        let inv = s.affine(1, -1).inverse().unwrap();
        // 1 / (1 - x - y - u): multinomial coefficients.
        assert_eq!(inv.coeff([1, 1, 1]), int(6));
        assert_eq!(inv.coeff([2, 1, 0]), int(3));
        assert_eq!(inv.coeff([0, 0, 4]), int(1));
        assert_eq!(inv.coeff([2, 2, 1]), int(0));
        let back = &inv * &s.affine(1, -1);
        assert_eq!(back, TSeries::one(4));
    }

    #[test]
    fn truncation_drops_high_degree() {
        let x = TSeries::var(0, 3);
        assert!(x.pow(4).is_empty());
        assert_eq!(x.pow(3).coeff([3, 0, 0]), int(1));
    }

    #[test]
    fn nested_polynomial_evaluation() {
        let (x, y, u) = (TSeries::var(0, 6), TSeries::var(1, 6), TSeries::var(2, 6));
        let poly = [([2, 0, 1], 5), ([0, 1, 0], -3), ([0, 0, 0], 7), ([1, 1, 1], 2)];
        let s = TSeries::eval_poly(&poly, &x, &y, &u);
        assert_eq!(s.coeff([2, 0, 1]), int(5));
        assert_eq!(s.coeff([0, 1, 0]), int(-3));
        assert_eq!(s.coeff([0, 0, 0]), int(7));
        assert_eq!(s.coeff([1, 1, 1]), int(2));
        assert_eq!(s.len(), 4);
    }
}
