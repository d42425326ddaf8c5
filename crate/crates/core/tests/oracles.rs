//! Engines against brute-force enumeration of permutation pairs.

mod common;

use std::sync::OnceLock;

use common::{epi0_brute, hypermap_census, map_census, signatures_brute, HypermapCensus};
use hypercount::{
    admissible_signatures, epi0, sensed_table, ArbNat, DegreeList, KzTable, SeqEngine, SeqKey,
};

const MAX_T: usize = 6;

fn censuses() -> &'static Vec<HypermapCensus> {
    static CELL: OnceLock<Vec<HypermapCensus>> = OnceLock::new();
    CELL.get_or_init(|| (1..=MAX_T).map(|t| hypermap_census(t, 2)).collect())
}

fn census(t: u32) -> &'static HypermapCensus {
    &censuses()[t as usize - 1]
}

fn nat(n: u64) -> ArbNat {
    ArbNat::from(n)
}

#[test]
fn census_sanity() {
    // One rooted hypermap with one dart; three with two darts, all planar.
    assert_eq!(census(1).rooted.values().sum::<u64>(), 1);
    assert_eq!(census(2).rooted.values().sum::<u64>(), 3);
    assert_eq!(census(3).rooted[&(1, 1, 1, 1)], 1);
    // The three two-dart hypermaps are pairwise non-isomorphic.
    assert_eq!(census(2).sensed.values().sum::<u64>(), 3);
}

#[test]
fn kz_matches_brute_force() {
    let kz = KzTable::fill(3, MAX_T as u32).unwrap();
    for t in 1..=MAX_T as u32 {
        let brute = &census(t).rooted;
        for g in 0..=3 {
            let table = kz.to_table(g).unwrap();
            for (key, count) in table.iter().filter(|(k, _)| k.darts == t) {
                let expected = brute.get(&(g, key.vertices, key.hyperedges, key.faces())).copied().unwrap_or(0);
                assert_eq!(count, &nat(expected), "{key}");
            }
        }
        for (&(g, v, e, f), &count) in brute {
            assert_eq!(kz.rooted_count(g, t, v, e, f).unwrap(), nat(count), "g={g} t={t} v={v} e={e} f={f}");
        }
    }
}

#[test]
fn orbifold_matches_canonical_forms() {
    let kz = KzTable::fill(3, MAX_T as u32).unwrap();
    for g in 0..=3 {
        let table = sensed_table(&kz, g, MAX_T as u32).unwrap();
        for t in 1..=MAX_T as u32 {
            let brute = &census(t).sensed;
            for (&(bg, v, e, f), &count) in brute.iter().filter(|(k, _)| k.0 == g) {
                assert_eq!(table.count(bg, t, v, e, f), nat(count), "g={g} t={t} v={v} e={e} f={f}");
            }
            let engine_total: ArbNat = table.total(g, t);
            let brute_total: u64 = brute.iter().filter(|(k, _)| k.0 == g).map(|(_, c)| c).sum();
            assert_eq!(engine_total, nat(brute_total), "g={g} t={t}");
        }
    }
}

/// Every feasible sequenced key up to `MAX_T` darts and two distinguished
/// vertices, paired with its brute-force count.
fn sequenced_cases(multirooted: bool) -> Vec<(SeqKey, u64)> {
    let mut out = Vec::new();
    for t in 1..=MAX_T as u32 {
        let brute = if multirooted { &census(t).multirooted } else { &census(t).sequenced };
        for g in 0..=(t - 1) / 2 {
            for f in 1..=t {
                for e in 1..=t {
                    for n in 1..=t {
                        let mut lists: Vec<Vec<u32>> = vec![vec![]];
                        for a in 1..=t {
                            lists.push(vec![a]);
                            for b in 1..=t {
                                lists.push(vec![a, b]);
                            }
                        }
                        for list in lists {
                            let key = SeqKey::new(g, t, f, e, n, DegreeList::new(list.iter().copied()));
                            if !key.is_feasible() {
                                continue;
                            }
                            let expected = brute.get(&(g, t, f, e, n, list)).copied().unwrap_or(0);
                            out.push((key, expected));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn sequenced_matches_brute_force() {
    let mut seq = SeqEngine::new();
    let cases = sequenced_cases(false);
    assert!(cases.len() > 1000);
    let mut nonzero = 0;
    for (key, expected) in cases {
        nonzero += usize::from(expected > 0);
        assert_eq!(seq.seq_hyper_count(&key), nat(expected), "{key:?}");
    }
    assert!(nonzero > 100);
}

#[test]
fn multirooted_matches_brute_force() {
    let mut seq = SeqEngine::new();
    for (key, expected) in sequenced_cases(true) {
        assert_eq!(seq.multirooted_direct(&key), nat(expected), "{key:?}");
    }
}

#[test]
fn every_brute_force_sequenced_key_is_feasible() {
    for t in 1..=MAX_T as u32 {
        for (g, tt, f, e, n, list) in census(t).sequenced.keys() {
            let key = SeqKey::new(*g, *tt, *f, *e, *n, DegreeList::new(list.iter().copied()));
            assert!(key.is_feasible(), "{key:?}");
        }
    }
}

#[test]
fn sequenced_maps_match_brute_force() {
    let mut seq = SeqEngine::new();
    for edges in 1..=4u32 {
        let brute = map_census(edges as usize, 2);
        for ((g, f, n, list), count) in &brute {
            let got = seq.seq_map_count(*g, edges, *f, *n, &DegreeList::new(list.iter().copied()));
            assert_eq!(got, nat(*count), "g={g} e={edges} f={f} n={n} D={list:?}");
        }
        // Rooted maps by edges (no distinguished vertices), all genera.
        let total: u64 = brute.iter().filter(|(k, _)| k.3.is_empty()).map(|(_, c)| c).sum();
        let mut engine_total = ArbNat::from(0u32);
        for g in 0..=edges / 2 {
            for f in 1..=edges + 1 {
                for n in 1..=2 * edges {
                    engine_total += seq.seq_map_count(g, edges, f, n, &DegreeList::empty());
                }
            }
        }
        assert_eq!(engine_total, nat(total), "edges={edges}");
    }
}

#[test]
fn rooted_map_totals() {
    // Rooted maps with 1..4 edges summed over genus: 2, 10, 74, 706.
    let totals: Vec<u64> = (1..=4).map(|e| map_census(e, 0).values().sum()).collect();
    assert_eq!(totals, vec![2, 10, 74, 706]);
}

#[test]
fn signatures_match_riemann_hurwitz_enumeration() {
    for genus in 0..=3 {
        for period in 1..=12 {
            let engine: Vec<(u32, Vec<u32>)> = admissible_signatures(genus, period)
                .into_iter()
                .map(|s| (s.quotient_genus, s.orbit_lengths))
                .collect();
            assert_eq!(engine, signatures_brute(genus, period), "G={genus} L={period}");
        }
    }
}

#[test]
fn epi0_matches_tuple_enumeration() {
    let mut checked = 0;
    for genus in 0..=3 {
        for period in 1..=12 {
            for sig in admissible_signatures(genus, period) {
                let brute = epi0_brute(period, sig.quotient_genus, &sig.branch_indices());
                assert_eq!(epi0(&sig), nat(brute), "{sig:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}
