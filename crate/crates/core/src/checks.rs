//! Consistency checks between the engines and invariants of their output.
//!
//! Each check returns a [`CheckReport`] listing every violation it found, so
//! callers decide whether to stop at the first failure or collect them all.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kz::KzTable;
use crate::model::{faces_from_key, validate_hypermap_key, ArbNat, CountTable};
use crate::orbifold::{sensed_accumulator, sensed_table};
use crate::seq::{DegreeList, SeqEngine, SeqKey};
use crate::series::{self, MAX_TRIVARIATE_GENUS, MAX_UNIVARIATE_GENUS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure() {
            None => write!(f, "PASS {} ({} cases)", self.name, self.cases),
            Some(first) => write!(
                f,
                "FAIL {} ({} of {} cases failed; first: {first})",
                self.name,
                self.failures.len(),
                self.cases
            ),
        }
    }
}

/// Fills the KZ table and reports whether every `(d+1)` division was exact
/// and every coefficient nonnegative; the fill itself refuses otherwise.
pub fn kz_fill_checked(max_genus: u32, max_darts: u32) -> Result<(Option<KzTable>, CheckReport)> {
    let mut report = CheckReport::new("kz exact division");
    match KzTable::fill(max_genus, max_darts) {
        Ok(table) => {
            report.cases = u64::from(max_genus + 1) * u64::from(max_darts);
            Ok((Some(table), report))
        }
        Err(e @ (Error::InexactDivision { .. } | Error::NegativeCoefficient { .. })) => {
            report.record(false, || e.to_string());
            Ok((None, report))
        }
        Err(e) => Err(e),
    }
}

/// Rooted counts from the sequenced recurrence against the KZ table, for
/// every valid `(g, t, f, e)` within the bounds.
pub fn kz_vs_seq(kz: &KzTable, seq: &mut SeqEngine, max_genus: u32, max_darts: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("kz vs seq (g <= {max_genus}, t <= {max_darts})"));
    for genus in 0..=max_genus {
        for darts in 1..=max_darts {
            for faces in 1..=darts {
                for hyperedges in 1..=darts {
                    let vertices = faces_from_key(genus, darts, faces, hyperedges);
                    if vertices < 1 {
                        continue;
                    }
                    let vertices = vertices as u32;
                    let expected = kz.rooted_count(genus, darts, vertices, hyperedges, faces)?;
                    let got = seq.rooted_from_sequenced(genus, darts, faces, hyperedges);
                    report.record(got == expected, || {
                        format!("(g={genus}, t={darts}, v={vertices}, e={hyperedges}, f={faces}): seq {got}, kz {expected}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Multisets of positive integers with at most `max_len` elements and sum at
/// most `max_sum`.
fn degree_lists(max_len: usize, max_sum: u32) -> Vec<DegreeList> {
    fn extend(prefix: &mut Vec<u32>, min: u32, left: u32, max_len: usize, out: &mut Vec<DegreeList>) {
        out.push(DegreeList::new(prefix.iter().copied()));
        if prefix.len() == max_len {
            return;
        }
        for next in min..=left {
            prefix.push(next);
            extend(prefix, next, left - next, max_len, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_sum, max_len, &mut out);
    out
}

/// The direct multirooted recurrence against `H * prod(d_j)` for every
/// feasible key with at most `max_darts` darts and `max_distinguished`
/// distinguished vertices.
pub fn multiroot_relation(seq: &mut SeqEngine, max_darts: u32, max_distinguished: usize) -> CheckReport {
    let mut report = CheckReport::new(format!("multiroot relation (t <= {max_darts}, |D| <= {max_distinguished})"));
    let lists = degree_lists(max_distinguished, max_darts);
    for darts in 1..=max_darts {
        for genus in 0..=(darts - 1) / 2 {
            for faces in 1..=darts {
                for hyperedges in 1..=darts {
                    for root in 1..=darts {
                        for list in &lists {
                            let key = SeqKey::new(genus, darts, faces, hyperedges, root, list.clone());
                            if !key.is_feasible() {
                                continue;
                            }
                            let direct = seq.multirooted_direct(&key);
                            let via = seq.multirooted_count(genus, darts, faces, hyperedges, root, list);
                            report.record(direct == via, || format!("{key:?}: direct {direct}, H*prod {via}"));
                        }
                    }
                }
            }
        }
    }
    report
}

/// Coefficients of the univariate closed forms against KZ totals.
pub fn series_vs_kz(kz: &KzTable, max_genus: u32, max_darts: u32) -> Result<CheckReport> {
    let max_genus = max_genus.min(MAX_UNIVARIATE_GENUS);
    let mut report = CheckReport::new(format!("univariate series vs kz (g <= {max_genus}, d <= {max_darts})"));
    for genus in 0..=max_genus {
        let series = series::hg_univariate(genus, max_darts as usize)?;
        for darts in 0..=max_darts {
            let expected = kz.rooted_total(genus, darts)?;
            let got = series.coeff(darts as usize);
            report.record(got.is_integer() && got.to_integer() == expected.clone().into(), || {
                format!("[z^{darts}] H_{genus}: series {got}, kz {expected}")
            });
        }
    }
    Ok(report)
}

/// Every coefficient of the trivariate closed forms up to `max_degree`
/// against the KZ table. Needs the table filled to `max_degree + 2g - 2`
/// darts.
pub fn trivariate_vs_kz(kz: &KzTable, max_genus: u32, max_degree: u32) -> Result<CheckReport> {
    let max_genus = max_genus.min(MAX_TRIVARIATE_GENUS);
    let mut report = CheckReport::new(format!("trivariate series vs kz (g <= {max_genus}, degree <= {max_degree})"));
    for genus in 0..=max_genus {
        let series = series::hg_trivariate(genus, max_degree)?;
        for degree in 0..=max_degree {
            for v in 0..=degree {
                for e in 0..=degree - v {
                    let f = degree - v - e;
                    let darts = i64::from(degree) + 2 * i64::from(genus) - 2;
                    let expected = if darts >= 1 && validate_hypermap_key(genus, darts as u32, v, e, f) {
                        kz.rooted_count(genus, darts as u32, v, e, f)?
                    } else {
                        ArbNat::zero()
                    };
                    let got = series.coeff([v, e, f]);
                    report.record(got.is_integer() && got.to_integer() == expected.clone().into(), || {
                        format!("[x^{v} y^{e} u^{f}] H_{genus}: series {got}, kz {expected}")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The `tau` and `t` parameterizations give the same series.
pub fn tau_vs_t(max_genus: u32, order: usize) -> Result<CheckReport> {
    let max_genus = max_genus.min(MAX_UNIVARIATE_GENUS);
    let mut report = CheckReport::new(format!("tau vs t parameterization (g <= {max_genus}, order {order})"));
    for genus in 0..=max_genus {
        let a = series::hg_univariate(genus, order)?;
        let b = series::hg_via_t(genus, order)?;
        for k in 0..=order {
            report.record(a.coeff(k) == b.coeff(k), || {
                format!("[z^{k}] H_{genus}: tau {}, t {}", a.coeff(k), b.coeff(k))
            });
        }
    }
    Ok(report)
}

/// `rooted / d <= sensed <= rooted` at every key of either table.
pub fn burnside_sandwich(rooted: &CountTable, sensed: &CountTable) -> CheckReport {
    let mut report = CheckReport::new(format!("burnside sandwich (g = {})", sensed.meta().max_genus));
    let keys: std::collections::BTreeSet<_> = rooted.iter().chain(sensed.iter()).map(|(k, _)| *k).collect();
    for key in keys {
        let r = rooted.get(&key);
        let s = sensed.get(&key);
        let ok = s <= r && &s * ArbNat::from(key.darts) >= r;
        report.record(ok, || format!("{key}: rooted {r}, sensed {s}"));
    }
    report
}

/// Every cell of the orbifold accumulator is divisible by its dart count.
pub fn orbifold_divisibility(kz: &KzTable, genus: u32, max_darts: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("orbifold divisibility (g = {genus}, d <= {max_darts})"));
    let mut cells: Vec<_> = sensed_accumulator(kz, genus, max_darts)?.into_iter().collect();
    cells.sort();
    for (key, value) in cells {
        let rem = &value % ArbNat::from(key.darts);
        report.record(rem.is_zero(), || format!("{key}: accumulator {value} leaves remainder {rem}"));
    }
    Ok(report)
}

/// Counts are invariant under every permutation of `(v, e, f)`.
pub fn permutation_symmetry(table: &CountTable) -> CheckReport {
    let meta = table.meta();
    let mut report = CheckReport::new(format!("(v, e, f) symmetry ({} g = {})", meta.engine, meta.max_genus));
    for (key, count) in table.iter() {
        let (v, e, f) = (key.vertices, key.hyperedges, key.faces());
        for (a, b, c) in [(v, f, e), (e, v, f), (e, f, v), (f, v, e), (f, e, v)] {
            let other = table.count(key.genus, key.darts, a, b, c);
            report.record(&other == count, || {
                format!("{key}: {count} but permuted ({a}, {b}, {c}) has {other}")
            });
        }
    }
    report
}

/// Every stored key satisfies the genus formula.
pub fn key_validity(table: &CountTable) -> CheckReport {
    let meta = table.meta();
    let mut report = CheckReport::new(format!("key validity ({} g = {})", meta.engine, meta.max_genus));
    for (key, _) in table.iter() {
        report.record(
            validate_hypermap_key(key.genus, key.darts, key.vertices, key.hyperedges, key.faces()),
            || key.to_string(),
        );
    }
    report
}

/// Bounds for [`Crosscheck::run`].
#[derive(Clone, Debug)]
pub struct Crosscheck {
    pub max_genus: u32,
    pub max_darts: u32,
    /// Bounds for checks that use the sequenced recurrence; `None` skips them.
    pub seq_bounds: Option<(u32, u32)>,
    pub max_distinguished: usize,
    /// Total degree for the trivariate comparison; `None` skips it.
    pub trivariate_degree: Option<u32>,
    pub tau_t_order: usize,
    /// Orbifold divisibility, Burnside sandwich, validity and symmetry.
    pub invariants: bool,
}

impl Crosscheck {
    /// Runs all configured checks, in a fixed order.
    pub fn run(&self, mut progress: impl FnMut(&CheckReport)) -> Result<Vec<CheckReport>> {
        let mut reports = Vec::new();
        let mut push = |r: CheckReport, reports: &mut Vec<CheckReport>| {
            progress(&r);
            reports.push(r);
        };
        let kz_darts = match self.trivariate_degree {
            Some(deg) => self.max_darts.max((deg + 2 * self.max_genus.min(MAX_TRIVARIATE_GENUS)).saturating_sub(2)),
            None => self.max_darts,
        };
        let (kz, fill_report) = kz_fill_checked(self.max_genus, kz_darts)?;
        push(fill_report, &mut reports);
        let Some(kz) = kz else {
            return Ok(reports);
        };
        if let Some((seq_genus, seq_darts)) = self.seq_bounds {
            let mut seq = SeqEngine::new();
            push(kz_vs_seq(&kz, &mut seq, seq_genus, seq_darts)?, &mut reports);
            push(multiroot_relation(&mut seq, seq_darts, self.max_distinguished), &mut reports);
        }
        push(series_vs_kz(&kz, self.max_genus, self.max_darts)?, &mut reports);
        if let Some(deg) = self.trivariate_degree {
            push(trivariate_vs_kz(&kz, self.max_genus, deg)?, &mut reports);
        }
        push(tau_vs_t(self.max_genus, self.tau_t_order)?, &mut reports);
        for genus in (0..=self.max_genus).filter(|_| self.invariants) {
            let rooted = kz.to_table(genus)?.restricted(self.max_darts);
            let sensed = sensed_table(&kz, genus, self.max_darts)?;
            push(orbifold_divisibility(&kz, genus, self.max_darts)?, &mut reports);
            push(burnside_sandwich(&rooted, &sensed), &mut reports);
            for table in [&rooted, &sensed] {
                push(key_validity(table), &mut reports);
                push(permutation_symmetry(table), &mut reports);
            }
        }
        Ok(reports)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_list_enumeration() {
        let lists = degree_lists(2, 3);
        let as_vecs: Vec<Vec<u32>> = lists.iter().map(|l| l.as_slice().to_vec()).collect();
        assert_eq!(
            as_vecs,
            vec![vec![], vec![1], vec![1, 1], vec![1, 2], vec![2], vec![3]]
        );
    }

    #[test]
    fn report_display() {
        let mut r = CheckReport::new("demo");
        r.record(true, || unreachable!());
        assert_eq!(r.to_string(), "PASS demo (1 cases)");
        r.record(false, || "bad".into());
        assert_eq!(r.to_string(), "FAIL demo (1 of 2 cases failed; first: bad)");
    }

    #[test]
    fn small_crosscheck_passes() {
        let plan = Crosscheck {
            max_genus: 1,
            max_darts: 6,
            seq_bounds: Some((1, 6)),
            max_distinguished: 2,
            trivariate_degree: Some(6),
            tau_t_order: 8,
            invariants: true,
        };
        let reports = plan.run(|_| {}).unwrap();
        for r in &reports {
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0, "{r}");
        }
    }

    #[test]
    fn sandwich_detects_violation() {
        let kz = KzTable::fill(0, 4).unwrap();
        let rooted = kz.to_table(0).unwrap();
        let mut sensed = sensed_table(&kz, 0, 4).unwrap();
        let key = crate::model::HypermapKey::new(0, 4, 2, 2, 2).unwrap();
        sensed.insert(key, 1000u32.into()).unwrap();
        let report = burnside_sandwich(&rooted, &sensed);
        assert_eq!(report.failures.len(), 1);
    }
}
