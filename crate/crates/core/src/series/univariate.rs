use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{ArbNat, ArbRat};

/// Power series in one variable with exact rational coefficients, known up
/// to and including `z^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    coeffs: Vec<ArbRat>,
}

impl USeries {
    pub fn zero(order: usize) -> Self {
        USeries {
            coeffs: vec![ArbRat::zero(); order + 1],
        }
    }

    pub fn constant(value: ArbRat, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ArbRat::one(), order)
    }

    /// The variable `z` itself.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ArbRat::one();
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<ArbRat>, order: usize) -> Self {
        coeffs.resize(order + 1, ArbRat::zero());
        USeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &ArbRat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[ArbRat] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn scale(&self, factor: &ArbRat) -> Self {
        USeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&ArbRat::from_integer(BigInt::from(factor)))
    }

    /// `1 + k z` style affine combination `a + b * self`.
    pub fn affine(&self, a: i64, b: i64) -> Self {
        let mut s = self.scale_int(b);
        s.coeffs[0] += ArbRat::from_integer(BigInt::from(a));
        s
    }

    /// Multiplicative inverse; `None` unless the constant term is nonzero.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out = vec![ArbRat::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = ArbRat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(acc * &inv0);
        }
        Some(USeries { coeffs: out })
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
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

    /// `self / z^k`. The first `k` coefficients must vanish; the result is
    /// known to order `order - k`.
    pub fn div_z_pow(&self, k: usize) -> Result<Self> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonIntegerCoefficient {
                order: self.valuation().unwrap_or(0),
                context: format!("division by z^{k} of a series with lower-order terms"),
            });
        }
        Ok(USeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `self * z^k`, keeping the order.
    pub fn mul_z_pow(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![ArbRat::zero(); n + 1];
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out[i + k] = self.coeffs[i].clone();
            }
        }
        USeries { coeffs: out }
    }

    /// Evaluates the integer polynomial `sum coeffs[i] x^i` at `x` by Horner.
    pub fn eval_poly(coeffs: &[i64], x: &USeries) -> Self {
        let order = x.order();
        let mut acc = Self::zero(order);
        for &c in coeffs.iter().rev() {
            acc = &acc * x;
            acc.coeffs[0] += ArbRat::from_integer(BigInt::from(c));
        }
        acc
    }

    /// Coefficients as naturals; fails on a fractional or negative one.
    pub fn to_naturals(&self, context: &str) -> Result<Vec<ArbNat>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::NonIntegerCoefficient {
                        order: k,
                        context: context.to_string(),
                    });
                }
                Ok(c.to_integer().magnitude().clone())
            })
            .collect()
    }

    /// Fixed point of `x = f(x)` for a map that gains at least one correct
    /// order per application, starting from zero.
    pub fn fixed_point(order: usize, context: &str, f: impl Fn(&USeries) -> USeries) -> Result<Self> {
        let mut x = Self::zero(order);
        for _ in 0..=order + 1 {
            let next = f(&x);
            if next == x {
                return Ok(x);
            }
            x = next;
        }
        Err(Error::NoConvergence {
            context: context.to_string(),
            rounds: order + 2,
        })
    }
}

fn same_order(a: &USeries, b: &USeries) -> usize {
    a.order().min(b.order())
}

impl Add for &USeries {
    type Output = USeries;

    fn add(self, rhs: &USeries) -> USeries {
        let n = same_order(self, rhs);
        USeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &USeries {
    type Output = USeries;

    fn sub(self, rhs: &USeries) -> USeries {
        let n = same_order(self, rhs);
        USeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &USeries {
    type Output = USeries;

    fn neg(self) -> USeries {
        USeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &USeries {
    type Output = USeries;

    fn mul(self, rhs: &USeries) -> USeries {
        let n = same_order(self, rhs);
        let mut out = vec![ArbRat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        USeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &USeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer());
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = USeries::var(5).affine(1, -1);
        let inv = one_minus_z.inverse().unwrap();
        assert_eq!(ints(&inv), vec![1; 6]);
        assert!(USeries::var(5).inverse().is_none());
    }

    #[test]
    fn pow_matches_binomial() {
        let s = USeries::var(6).affine(1, 1).pow(4);
        assert_eq!(ints(&s), vec![1, 4, 6, 4, 1, 0, 0]);
    }

    #[test]
    fn z_shifts() {
        let s = USeries::var(4).pow(2).affine(0, 3);
        assert_eq!(ints(&s.div_z_pow(2).unwrap()), vec![3, 0, 0]);
        assert!(s.div_z_pow(3).is_err());
        assert_eq!(ints(&USeries::one(3).mul_z_pow(2)), vec![0, 0, 1, 0]);
    }

    #[test]
    fn naturals_reject_fractions() {
        let half = USeries::constant(ArbRat::new(BigInt::from(1), BigInt::from(2)), 2);
        assert!(half.to_naturals("half").is_err());
        let neg = USeries::constant(ArbRat::from_integer(BigInt::from(-1)), 2);
        assert!(neg.to_naturals("neg").is_err());
    }

    #[test]
    fn horner_evaluation() {
        let z = USeries::var(3);
        // 2 + 3z + z^2
        assert_eq!(ints(&USeries::eval_poly(&[2, 3, 1], &z)), vec![2, 3, 1, 0]);
    }
}
