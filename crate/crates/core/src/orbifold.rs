//! Sensed (unrooted) hypermap counts.
//!
//! Every orientation-preserving automorphism of a hypermap of genus `G` is
//! periodic. Its period `L`, the genus `g` of the quotient and the orbit
//! lengths of its branch points form an orbifold signature. Counting rooted
//! quotients with branch points pasted onto their cells, weighting by the
//! number of automorphisms with that signature and summing over all
//! signatures gives `E` times the number of sensed hypermaps with `E` darts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kz::KzTable;
use crate::model::{ArbNat, CountTable, EngineId, HypermapKey, TableMeta};

/// An admissible automorphism class: period, quotient genus and the orbit
/// lengths of the branch points (sorted ascending, each a proper divisor of
/// the period).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbifoldSignature {
    pub period: u32,
    pub quotient_genus: u32,
    pub orbit_lengths: Vec<u32>,
}

impl OrbifoldSignature {
    /// Branch indices `L / orbit length`, in the same order as the orbit
    /// lengths (so descending).
    pub fn branch_indices(&self) -> Vec<u32> {
        self.orbit_lengths.iter().map(|&i| self.period / i).collect()
    }

    /// Genus `G` of the covering surface, from the Riemann-Hurwitz relation
    /// `2G - 2 = L(2g - 2) + sum (L - orbit length)`.
    pub fn covering_genus(&self) -> Option<u32> {
        let l = i64::from(self.period);
        let twice = l * (2 * i64::from(self.quotient_genus) - 2)
            + self.orbit_lengths.iter().map(|&i| l - i64::from(i)).sum::<i64>()
            + 2;
        (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
    }

    /// `(orbit length, number of branch points)` pairs, ascending.
    pub fn orbit_groups(&self) -> Vec<(u32, u32)> {
        let mut groups: Vec<(u32, u32)> = Vec::new();
        for &i in &self.orbit_lengths {
            match groups.last_mut() {
                Some((len, count)) if *len == i => *count += 1,
                _ => groups.push((i, 1)),
            }
        }
        groups
    }
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Möbius function.
pub fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// All signatures of period `period` that satisfy Riemann-Hurwitz for a
/// covering surface of genus `genus`.
pub fn admissible_signatures(genus: u32, period: u32) -> Vec<OrbifoldSignature> {
    if period == 0 {
        return Vec::new();
    }
    if period == 1 {
        return vec![OrbifoldSignature {
            period: 1,
            quotient_genus: genus,
            orbit_lengths: Vec::new(),
        }];
    }
    let l = i64::from(period);
    let target = 2 * i64::from(genus) - 2;
    // Each branch point contributes L - i, where i is a proper divisor of L.
    let proper: Vec<u32> = divisors(period).into_iter().filter(|&i| i < period).collect();
    let mut out = Vec::new();
    let mut g = 0u32;
    loop {
        let remainder = target - l * (2 * i64::from(g) - 2);
        if remainder < 0 {
            break;
        }
        let mut current = Vec::new();
        collect_branchings(&proper, period, 0, remainder, &mut current, &mut |lengths| {
            let mut lengths = lengths.to_vec();
            lengths.sort_unstable();
            out.push(OrbifoldSignature {
                period,
                quotient_genus: g,
                orbit_lengths: lengths,
            });
        });
        g += 1;
    }
    out.sort();
    out
}

// Multisets (as non-increasing choices from `proper`) whose `L - i` sum to
// `remainder`.
fn collect_branchings(
    proper: &[u32],
    period: u32,
    start: usize,
    remainder: i64,
    current: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if remainder == 0 {
        emit(current);
        return;
    }
    for idx in start..proper.len() {
        let cost = i64::from(period - proper[idx]);
        if cost <= remainder {
            current.push(proper[idx]);
            collect_branchings(proper, period, idx, remainder - cost, current, emit);
            current.pop();
        }
    }
}

/// Residues of `Z_modulus` whose order is exactly `order`.
fn order_indicator(modulus: u32, order: u32) -> Vec<bool> {
    (0..modulus).map(|x| modulus / x.gcd(&modulus) == order).collect()
}

/// Tuples `(b_1..b_r)` in `Z_modulus` with `order(b_i) = m_i` and zero sum,
/// by cyclic convolution over residues.
fn zero_sum_tuples(modulus: u32, indices: &[u32]) -> BigInt {
    if indices.iter().any(|&m| modulus % m != 0) {
        return BigInt::zero();
    }
    let n = modulus as usize;
    let mut dist = vec![BigInt::zero(); n];
    dist[0] = BigInt::one();
    for &m in indices {
        let allowed = order_indicator(modulus, m);
        let mut next = vec![BigInt::zero(); n];
        for (s, ways) in dist.iter().enumerate() {
            if ways.is_zero() {
                continue;
            }
            for (x, ok) in allowed.iter().enumerate() {
                if *ok {
                    next[(s + x) % n] += ways;
                }
            }
        }
        dist = next;
    }
    dist.swap_remove(0)
}

/// Number of epimorphisms from the orbifold fundamental group onto `Z_L`
/// that send each branch generator to an element of order equal to its
/// branch index. Surjectivity is handled by Möbius inversion over the
/// subgroups `Z_l`, `l | L`.
pub fn epi0(sig: &OrbifoldSignature) -> ArbNat {
    let indices = sig.branch_indices();
    let mut total = BigInt::zero();
    for l in divisors(sig.period) {
        let mu = mobius(sig.period / l);
        if mu == 0 {
            continue;
        }
        let tuples = zero_sum_tuples(l, &indices);
        if tuples.is_zero() {
            continue;
        }
        let free = BigInt::from(l).pow(2 * sig.quotient_genus);
        total += BigInt::from(mu) * free * tuples;
    }
    debug_assert!(!total.is_negative());
    total.magnitude().clone()
}

/// How the branch points of one orbit length are shared among white
/// vertices (hypermap vertices), black vertices (hyperedges) and faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchCell {
    pub orbit_length: u32,
    pub vertices: u32,
    pub hyperedges: u32,
    pub faces: u32,
}

/// One assignment of every branch point of a signature to a cell type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDistribution {
    pub cells: Vec<BranchCell>,
}

impl BranchDistribution {
    /// All distributions for a signature's branch points.
    pub fn enumerate(sig: &OrbifoldSignature) -> Vec<BranchDistribution> {
        let mut out = vec![BranchDistribution { cells: Vec::new() }];
        for (len, q) in sig.orbit_groups() {
            let mut next = Vec::new();
            for partial in &out {
                for w in 0..=q {
                    for b in 0..=(q - w) {
                        let mut cells = partial.cells.clone();
                        cells.push(BranchCell {
                            orbit_length: len,
                            vertices: w,
                            hyperedges: b,
                            faces: q - w - b,
                        });
                        next.push(BranchDistribution { cells });
                    }
                }
            }
            out = next;
        }
        out
    }

    fn totals(&self) -> ([u32; 3], [u64; 3]) {
        let mut counts = [0u32; 3];
        let mut lifted = [0u64; 3];
        for c in &self.cells {
            for (k, n) in [c.vertices, c.hyperedges, c.faces].into_iter().enumerate() {
                counts[k] += n;
                lifted[k] += u64::from(c.orbit_length) * u64::from(n);
            }
        }
        (counts, lifted)
    }

    fn factorial_denominators(&self) -> [ArbNat; 3] {
        let mut out = [ArbNat::one(), ArbNat::one(), ArbNat::one()];
        for c in &self.cells {
            for (k, n) in [c.vertices, c.hyperedges, c.faces].into_iter().enumerate() {
                out[k] *= factorial(n);
            }
        }
        out
    }
}

fn factorial(n: u32) -> ArbNat {
    (1..=n).map(ArbNat::from).product()
}

/// Multinomial `cells! / (prod branched! * (cells - branched)!)`, updated in
/// place as `cells` grows by one.
struct Multinomial {
    branched: u32,
    cells: u32,
    value: ArbNat,
}

impl Multinomial {
    /// Starts at `cells = max(branched, 1)`.
    fn start(branched: u32, denominator: &ArbNat) -> Self {
        let cells = branched.max(1);
        let value = factorial(cells) / denominator / factorial(cells - branched);
        Multinomial { branched, cells, value }
    }

    fn advance(&mut self) {
        self.cells += 1;
        self.value *= self.cells;
        self.value /= self.cells - self.branched;
    }
}

/// Cell-indexed accumulator for one covering genus; keys `(E, W, B)`.
type Accumulator = HashMap<(u32, u32, u32), ArbNat>;

fn merge(mut a: Accumulator, b: Accumulator) -> Accumulator {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Sum over all signatures of `epi0 * ν_O` contributions, before the
/// division by `E`. Exposed so that the per-cell divisibility can be checked
/// independently.
pub fn sensed_accumulator(rooted: &KzTable, genus: u32, max_darts: u32) -> Result<HashMap<HypermapKey, ArbNat>> {
    if genus > rooted.max_genus() || max_darts > rooted.max_darts() {
        return Err(Error::NotFilled {
            genus,
            darts: max_darts,
            max_genus: rooted.max_genus(),
            max_darts: rooted.max_darts(),
        });
    }
    let signatures: Vec<OrbifoldSignature> = (1..=max_darts)
        .flat_map(|period| admissible_signatures(genus, period))
        .collect();
    let acc = signatures
        .par_iter()
        .map(|sig| signature_contribution(rooted, sig, genus, max_darts))
        .try_reduce(Accumulator::new, |a, b| Ok(merge(a, b)))?;
    let mut out = HashMap::with_capacity(acc.len());
    for ((darts, vertices, hyperedges), value) in acc {
        out.insert(HypermapKey::from_gtve(genus, darts, vertices, hyperedges)?, value);
    }
    Ok(out)
}

fn signature_contribution(rooted: &KzTable, sig: &OrbifoldSignature, genus: u32, max_darts: u32) -> Result<Accumulator> {
    let mut acc = Accumulator::new();
    let weight = epi0(sig);
    if weight.is_zero() {
        return Ok(acc);
    }
    let period = sig.period;
    let g = sig.quotient_genus;
    let max_quotient_darts = max_darts / period;
    // Quotient darts d = w + b + f - 2(1 - g).
    let euler = 2 - 2 * i64::from(g);
    for dist in BranchDistribution::enumerate(sig) {
        let ([sw, sb, sf], [lw, lb, lf]) = dist.totals();
        let [dw, db, df] = dist.factorial_denominators();
        let mut mw = Multinomial::start(sw, &dw);
        loop {
            let w = mw.cells;
            let mut mb = Multinomial::start(sb, &db);
            let mut any_b = false;
            loop {
                let b = mb.cells;
                let mut mf = Multinomial::start(sf, &df);
                let mut any_f = false;
                loop {
                    let f = mf.cells;
                    let d = i64::from(w) + i64::from(b) + i64::from(f) - euler;
                    if d > i64::from(max_quotient_darts) {
                        break;
                    }
                    any_f = true;
                    if d >= 1 {
                        let d = d as u32;
                        let count = rooted.rooted_count(g, d, w, b, f)?;
                        if !count.is_zero() {
                            let lift = |branched_lifted: u64, cells: u32, branched: u32| {
                                branched_lifted + u64::from(period) * u64::from(cells - branched)
                            };
                            let big_w = lift(lw, w, sw) as u32;
                            let big_b = lift(lb, b, sb) as u32;
                            let big_f = lift(lf, f, sf);
                            let darts = period * d;
                            debug_assert_eq!(
                                i64::from(big_w) + i64::from(big_b) + big_f as i64,
                                i64::from(darts) + 2 - 2 * i64::from(genus)
                            );
                            let term = &weight * &mw.value * &mb.value * &mf.value * count;
                            *acc.entry((darts, big_w, big_b)).or_default() += term;
                        }
                    }
                    mf.advance();
                }
                if !any_f {
                    break;
                }
                any_b = true;
                mb.advance();
            }
            if !any_b {
                break;
            }
            mw.advance();
        }
    }
    Ok(acc)
}

/// Sensed hypermaps of genus `genus` with at most `max_darts` darts.
pub fn sensed_table(rooted: &KzTable, genus: u32, max_darts: u32) -> Result<CountTable> {
    let acc = sensed_accumulator(rooted, genus, max_darts)?;
    let mut table = CountTable::new(TableMeta {
        engine: EngineId::Orbifold,
        max_genus: genus,
        max_darts,
    });
    let mut keys: Vec<&HypermapKey> = acc.keys().collect();
    keys.sort();
    for key in keys {
        let value = &acc[key];
        let (q, r) = value.div_rem(&ArbNat::from(key.darts));
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                divisor: u64::from(key.darts),
                context: format!("sensed count {key}"),
            });
        }
        table.insert(*key, q)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(period: u32, g: u32, lengths: &[u32]) -> OrbifoldSignature {
        OrbifoldSignature {
            period,
            quotient_genus: g,
            orbit_lengths: lengths.to_vec(),
        }
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn signatures_small() {
        assert_eq!(admissible_signatures(1, 1), vec![sig(1, 1, &[])]);
        assert_eq!(
            admissible_signatures(1, 2),
            vec![sig(2, 0, &[1, 1, 1, 1]), sig(2, 1, &[])]
        );
        assert_eq!(admissible_signatures(1, 2)[0].branch_indices(), vec![2, 2, 2, 2]);
        assert_eq!(admissible_signatures(0, 3), vec![sig(3, 0, &[1, 1])]);
        assert_eq!(admissible_signatures(0, 3)[0].branch_indices(), vec![3, 3]);
    }

    #[test]
    fn signatures_satisfy_riemann_hurwitz() {
        for genus in 0..=4 {
            for period in 1..=20 {
                for s in admissible_signatures(genus, period) {
                    assert_eq!(s.covering_genus(), Some(genus), "{s:?}");
                    assert!(s.orbit_lengths.iter().all(|&i| period % i == 0 && i < period));
                }
            }
        }
    }

    #[test]
    fn epi0_small() {
        assert_eq!(epi0(&sig(1, 3, &[])), ArbNat::from(1u32));
        assert_eq!(epi0(&sig(2, 0, &[1, 1, 1, 1])), ArbNat::from(1u32));
        // Branch indices {4, 4, 2}.
        assert_eq!(epi0(&sig(4, 0, &[1, 1, 2])), ArbNat::from(2u32));
        // One branch point alone cannot have a zero-sum image.
        assert_eq!(epi0(&sig(2, 1, &[1])), ArbNat::zero());
        // Torus covering itself: all surjections Z^2 -> Z_2.
        assert_eq!(epi0(&sig(2, 1, &[])), ArbNat::from(3u32));
    }

    #[test]
    fn distributions_cover_compositions() {
        let s = sig(4, 0, &[1, 1, 2]);
        // Two points of length 1: 6 splits; one of length 2: 3 splits.
        assert_eq!(BranchDistribution::enumerate(&s).len(), 18);
    }

    #[test]
    fn multinomial_updates_incrementally() {
        let denominator = factorial(2) * factorial(1);
        let mut m = Multinomial::start(3, &denominator);
        assert_eq!(m.value, ArbNat::from(3u32));
        m.advance();
        // 4! / (2! 1! 1!)
        assert_eq!(m.value, ArbNat::from(12u32));
        m.advance();
        // 5! / (2! 1! 2!)
        assert_eq!(m.value, ArbNat::from(30u32));
        let mut empty = Multinomial::start(0, &ArbNat::one());
        assert_eq!((empty.cells, empty.value.clone()), (1, ArbNat::one()));
        empty.advance();
        assert_eq!(empty.value, ArbNat::one());
    }

    #[test]
    fn published_sensed_values() {
        let rooted = KzTable::fill(5, 11).unwrap();
        let g0 = sensed_table(&rooted, 0, 4).unwrap();
        assert_eq!(g0.count(0, 4, 2, 2, 2), ArbNat::from(5u32));
        let g1 = sensed_table(&rooted, 1, 6).unwrap();
        assert_eq!(g1.total(1, 6), ArbNat::from(285u32));
        let g2 = sensed_table(&rooted, 2, 8).unwrap();
        assert_eq!(g2.count(2, 8, 2, 2, 2), ArbNat::from(2664u32));
        let g5 = sensed_table(&rooted, 5, 11).unwrap();
        assert_eq!(g5.count(5, 11, 1, 1, 1), ArbNat::from(54990u32));
    }

    #[test]
    fn identity_contribution_is_rooted() {
        let rooted = KzTable::fill(1, 6).unwrap();
        let id = signature_contribution(&rooted, &sig(1, 1, &[]), 1, 6).unwrap();
        for ((d, w, b), value) in id {
            let f = d + 2 - 2 - w - b;
            assert_eq!(value, rooted.rooted_count(1, d, w, b, f).unwrap());
        }
    }

    #[test]
    fn needs_filled_rooted_table() {
        let rooted = KzTable::fill(1, 6).unwrap();
        assert!(matches!(sensed_table(&rooted, 2, 6), Err(Error::NotFilled { .. })));
        assert!(matches!(sensed_table(&rooted, 1, 7), Err(Error::NotFilled { .. })));
    }
}
