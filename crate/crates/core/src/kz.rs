//! Rooted hypermap counts from the homogeneous-polynomial recurrence
//!
//! ```text
//! (d+1) H[g,d] = (2d-1)(t+u+v) H[g,d-1]
//!              + (d-2)(2(tu+tv+uv) - (t^2+u^2+v^2)) H[g,d-2]
//!              + (d-1)^2 (d-2) H[g-1,d-2]
//!              + sum_{i=0..g} sum_{j=1..d-3} (4+6j)(d-2-j) H[i,j] H[g-i,d-2-j]
//! ```
//!
//! with `H[0,1] = tuv`. The coefficient of `t^f u^b v^w` in `H[g,d]` is the
//! number of rooted hypermaps of genus `g` with `d` darts, `f` faces, `b`
//! hyperedges and `w` vertices.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ArbNat, CountTable, EngineId, HypermapKey, TableMeta};

/// Homogeneous polynomial in `t, u, v` whose monomials all have positive
/// exponents. Homogeneity makes the `v` exponent redundant, so coefficients
/// live on the `(f, b)` triangle `f, b >= 1, f + b < degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomoPoly {
    degree: u32,
    coeffs: Vec<ArbNat>,
}

impl HomoPoly {
    pub fn zero(degree: u32) -> Self {
        HomoPoly {
            degree,
            coeffs: vec![ArbNat::zero(); Self::slots(degree)],
        }
    }

    fn slots(degree: u32) -> usize {
        let n = degree as usize + 1;
        n * n
    }

    fn index(&self, f: u32, b: u32) -> usize {
        f as usize * (self.degree as usize + 1) + b as usize
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient of `t^f u^b v^w`; zero off the degree or for zero exponents.
    pub fn coeff(&self, f: u32, b: u32, w: u32) -> ArbNat {
        if f == 0 || b == 0 || w == 0 || u64::from(f) + u64::from(b) + u64::from(w) != u64::from(self.degree) {
            return ArbNat::zero();
        }
        self.coeffs[self.index(f, b)].clone()
    }

    fn set(&mut self, f: u32, b: u32, value: ArbNat) {
        let idx = self.index(f, b);
        self.coeffs[idx] = value;
    }

    /// Nonzero terms as `((f, b, w), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &ArbNat)> + '_ {
        let n = self.degree + 1;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(idx, c)| {
            let f = idx as u32 / n;
            let b = idx as u32 % n;
            ((f, b, self.degree - f - b), c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> ArbNat {
        self.coeffs.iter().sum()
    }
}

/// Signed dense accumulator on the same `(f, b)` triangle as [`HomoPoly`].
struct Accumulator {
    degree: u32,
    cells: Vec<BigInt>,
}

impl Accumulator {
    fn new(degree: u32) -> Self {
        Accumulator {
            degree,
            cells: vec![BigInt::zero(); HomoPoly::slots(degree)],
        }
    }

    fn add(&mut self, f: u32, b: u32, value: &BigInt) {
        debug_assert!(f >= 1 && b >= 1 && f + b < self.degree);
        let idx = f as usize * (self.degree as usize + 1) + b as usize;
        self.cells[idx] += value;
    }

    /// Adds `scale * monomial * poly`, monomial given as `t^df u^db v^dw`.
    fn add_shifted(&mut self, poly: &HomoPoly, scale: &BigInt, df: u32, db: u32) {
        for ((f, b, _), c) in poly.terms() {
            let term = scale * BigInt::from_biguint(Sign::Plus, c.clone());
            self.add(f + df, b + db, &term);
        }
    }

    /// Adds `scale * lhs * rhs`.
    fn add_product(&mut self, lhs: &HomoPoly, rhs: &HomoPoly, scale: &BigInt) {
        let rhs_terms: Vec<((u32, u32, u32), BigInt)> = rhs
            .terms()
            .map(|(e, c)| (e, BigInt::from_biguint(Sign::Plus, c.clone())))
            .collect();
        for ((f1, b1, _), c1) in lhs.terms() {
            let left = scale * BigInt::from_biguint(Sign::Plus, c1.clone());
            for ((f2, b2, _), c2) in &rhs_terms {
                self.add(f1 + f2, b1 + b2, &(&left * c2));
            }
        }
    }

    /// Divides every cell by `divisor`, checking exactness and sign.
    fn into_poly(self, divisor: u64, genus: u32, darts: u32) -> Result<HomoPoly> {
        let mut poly = HomoPoly::zero(self.degree);
        let big_div = BigInt::from(divisor);
        let n = self.degree + 1;
        for (idx, cell) in self.cells.into_iter().enumerate() {
            if cell.is_zero() {
                continue;
            }
            if cell.is_negative() {
                return Err(Error::NegativeCoefficient {
                    context: format!("H[{genus},{darts}]"),
                });
            }
            let (q, r) = cell.div_rem(&big_div);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    divisor,
                    context: format!("H[{genus},{darts}]"),
                });
            }
            let f = idx as u32 / n;
            let b = idx as u32 % n;
            poly.set(f, b, q.magnitude().clone());
        }
        Ok(poly)
    }
}

/// Degree of `H[g,d]`, or `None` when it is negative.
fn degree_of(genus: u32, darts: u32) -> Option<u32> {
    (darts + 2).checked_sub(2 * genus)
}

/// Filled table of the polynomials `H[g,d]` for `g <= max_genus`,
/// `1 <= d <= max_darts`.
#[derive(Clone, Debug)]
pub struct KzTable {
    max_genus: u32,
    max_darts: u32,
    // polys[g][d]; d = 0 is the zero polynomial.
    polys: Vec<Vec<HomoPoly>>,
}

impl KzTable {
    /// Runs the recurrence over the `(g, d)` wavefront ordered by `d`, then
    /// `g`. Different genera at the same `d` only read smaller `d` and are
    /// computed in parallel.
    pub fn fill(max_genus: u32, max_darts: u32) -> Result<Self> {
        let mut polys: Vec<Vec<HomoPoly>> = (0..=max_genus).map(|_| Vec::with_capacity(max_darts as usize + 1)).collect();
        for (g, row) in polys.iter_mut().enumerate() {
            row.push(HomoPoly::zero(degree_of(g as u32, 0).unwrap_or(0)));
        }
        for d in 1..=max_darts {
            let level: Vec<HomoPoly> = (0..=max_genus)
                .into_par_iter()
                .map(|g| step(&polys, g, d))
                .collect::<Result<_>>()?;
            for (g, poly) in level.into_iter().enumerate() {
                polys[g].push(poly);
            }
        }
        Ok(KzTable {
            max_genus,
            max_darts,
            polys,
        })
    }

    pub fn max_genus(&self) -> u32 {
        self.max_genus
    }

    pub fn max_darts(&self) -> u32 {
        self.max_darts
    }

    fn check(&self, genus: u32, darts: u32) -> Result<()> {
        if genus > self.max_genus || darts > self.max_darts {
            return Err(Error::NotFilled {
                genus,
                darts,
                max_genus: self.max_genus,
                max_darts: self.max_darts,
            });
        }
        Ok(())
    }

    pub fn poly(&self, genus: u32, darts: u32) -> Result<&HomoPoly> {
        self.check(genus, darts)?;
        Ok(&self.polys[genus as usize][darts as usize])
    }

    /// Number of rooted hypermaps of genus `g` with `d` darts, `v` vertices,
    /// `e` hyperedges and `f` faces. Zero for parameter sets that violate
    /// the genus formula.
    pub fn rooted_count(&self, genus: u32, darts: u32, vertices: u32, hyperedges: u32, faces: u32) -> Result<ArbNat> {
        Ok(self.poly(genus, darts)?.coeff(faces, hyperedges, vertices))
    }

    /// Sum of all coefficients of `H[g,d]`.
    pub fn rooted_total(&self, genus: u32, darts: u32) -> Result<ArbNat> {
        Ok(self.poly(genus, darts)?.total())
    }

    /// Rooted counts for one genus as a [`CountTable`].
    pub fn to_table(&self, genus: u32) -> Result<CountTable> {
        self.check(genus, 0)?;
        let mut table = CountTable::new(TableMeta {
            engine: EngineId::Kz,
            max_genus: genus,
            max_darts: self.max_darts,
        });
        for d in 1..=self.max_darts {
            for ((f, b, w), c) in self.polys[genus as usize][d as usize].terms() {
                table.insert(HypermapKey::new(genus, d, w, b, f)?, c.clone())?;
            }
        }
        Ok(table)
    }
}

fn step(polys: &[Vec<HomoPoly>], genus: u32, darts: u32) -> Result<HomoPoly> {
    let Some(degree) = degree_of(genus, darts) else {
        return Ok(HomoPoly::zero(0));
    };
    if genus == 0 && darts == 1 {
        let mut base = HomoPoly::zero(3);
        base.set(1, 1, ArbNat::from(1u32));
        return Ok(base);
    }
    let get = |g: i64, d: i64| -> Option<&HomoPoly> {
        if g < 0 || d < 1 {
            return None;
        }
        polys.get(g as usize).and_then(|row| row.get(d as usize)).filter(|p| !p.is_zero())
    };
    let (g, d) = (i64::from(genus), i64::from(darts));
    let mut acc = Accumulator::new(degree);

    if let Some(prev) = get(g, d - 1) {
        let scale = BigInt::from(2 * d - 1);
        acc.add_shifted(prev, &scale, 1, 0);
        acc.add_shifted(prev, &scale, 0, 1);
        acc.add_shifted(prev, &scale, 0, 0);
    }

    if let Some(prev2) = get(g, d - 2) {
        // (d-2)(2(tu+tv+uv) - t^2 - u^2 - v^2), one monomial at a time. The
        // v exponent is implied by the degree, so only (df, db) is given.
        let plus = BigInt::from(2 * (d - 2));
        let minus = BigInt::from(-(d - 2));
        acc.add_shifted(prev2, &plus, 1, 1);
        acc.add_shifted(prev2, &plus, 1, 0);
        acc.add_shifted(prev2, &plus, 0, 1);
        acc.add_shifted(prev2, &minus, 2, 0);
        acc.add_shifted(prev2, &minus, 0, 2);
        acc.add_shifted(prev2, &minus, 0, 0);
    }

    if let Some(lower) = get(g - 1, d - 2) {
        let scale = BigInt::from((d - 1) * (d - 1) * (d - 2));
        acc.add_shifted(lower, &scale, 0, 0);
    }

    // The summand for (i, j) and its mirror (g-i, d-2-j) multiply the same
    // two polynomials, so each unordered pair is visited once with the two
    // weights added.
    for i in 0..=g {
        for j in 1..=(d - 3) {
            let (mi, mj) = (g - i, d - 2 - j);
            if (i, j) > (mi, mj) {
                continue;
            }
            let (Some(lhs), Some(rhs)) = (get(i, j), get(mi, mj)) else {
                continue;
            };
            let mut weight = (4 + 6 * j) * (d - 2 - j);
            if (i, j) != (mi, mj) {
                weight += (4 + 6 * mj) * (d - 2 - mj);
            }
            acc.add_product(lhs, rhs, &BigInt::from(weight));
        }
    }

    acc.into_poly(darts as u64 + 1, genus, darts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(n: u64) -> ArbNat {
        ArbNat::from(n)
    }

    #[test]
    fn base_polynomial() {
        let table = KzTable::fill(0, 1).unwrap();
        let h01 = table.poly(0, 1).unwrap();
        let terms: Vec<_> = h01.terms().map(|(e, c)| (e, c.clone())).collect();
        assert_eq!(terms, vec![((1, 1, 1), nat(1))]);
    }

    #[test]
    fn published_coefficients() {
        let table = KzTable::fill(6, 13).unwrap();
        assert_eq!(table.poly(0, 4).unwrap().coeff(2, 2, 2), nat(17));
        assert_eq!(table.poly(2, 5).unwrap().coeff(1, 1, 1), nat(8));
        assert_eq!(table.rooted_count(1, 4, 1, 2, 1).unwrap(), nat(5));
        assert_eq!(table.rooted_count(6, 13, 1, 1, 1).unwrap(), nat(68428800));
        assert_eq!(table.rooted_count(0, 3, 2, 2, 1).unwrap(), nat(3));
        assert_eq!(table.rooted_total(0, 5).unwrap(), nat(288));
        assert_eq!(table.rooted_total(1, 7).unwrap(), nat(14805));
        assert_eq!(table.rooted_total(3, 9).unwrap(), nat(268980));
    }

    #[test]
    fn genus_one_two_darts_is_zero() {
        let table = KzTable::fill(1, 2).unwrap();
        assert!(table.poly(1, 2).unwrap().is_zero());
        assert_eq!(table.poly(1, 2).unwrap().degree(), 2);
    }

    #[test]
    fn invalid_key_counts_zero() {
        let table = KzTable::fill(1, 4).unwrap();
        assert_eq!(table.rooted_count(0, 4, 2, 2, 3).unwrap(), nat(0));
        assert_eq!(table.rooted_count(0, 4, 0, 3, 3).unwrap(), nat(0));
    }

    #[test]
    fn not_filled() {
        let table = KzTable::fill(1, 4).unwrap();
        assert!(matches!(table.rooted_count(2, 4, 1, 1, 1), Err(Error::NotFilled { .. })));
        assert!(matches!(table.rooted_total(0, 5), Err(Error::NotFilled { .. })));
    }

    #[test]
    fn homogeneity_and_symmetry() {
        let table = KzTable::fill(3, 10).unwrap();
        for g in 0..=3 {
            for d in 1..=10 {
                let p = table.poly(g, d).unwrap();
                for ((f, b, w), c) in p.terms() {
                    assert_eq!(f + b + w, d + 2 - 2 * g);
                    assert!(!c.is_zero());
                    for (a, bb, cc) in [(f, w, b), (b, f, w), (b, w, f), (w, f, b), (w, b, f)] {
                        assert_eq!(&p.coeff(a, bb, cc), c, "g={g} d={d} ({f},{b},{w})");
                    }
                }
            }
        }
    }

    #[test]
    fn table_conversion_matches_lookup() {
        let kz = KzTable::fill(2, 8).unwrap();
        let table = kz.to_table(2).unwrap();
        assert_eq!(table.total(2, 7), kz.rooted_total(2, 7).unwrap());
        assert_eq!(table.count(2, 7, 2, 1, 2), nat(1183));
        assert_eq!(table.meta().engine, EngineId::Kz);
    }
}
