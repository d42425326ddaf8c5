//! Brute-force counts by direct enumeration of permutations, independent of
//! every recurrence and formula in the library.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

/// All permutations of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Cycle lengths of `p`, with the length of the cycle through 0 first.
pub fn cycles(p: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

pub fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    // x -> b(a(x))
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn transitive(a: &[u8], b: &[u8]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [a[x] as usize, b[x] as usize] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Relabels darts in breadth-first order from `start`, following `a` then
/// `b`, and returns both permutations in the new labels.
fn relabeled(a: &[u8], b: &[u8], start: usize) -> Vec<u8> {
    let n = a.len();
    let mut label = vec![u8::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[start] = 0;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for y in [a[x] as usize, b[x] as usize] {
            if label[y] == u8::MAX {
                label[y] = order.len() as u8;
                order.push(y);
            }
        }
    }
    let mut out = Vec::with_capacity(2 * n);
    for &x in &order {
        out.push(label[a[x] as usize]);
        out.push(label[b[x] as usize]);
    }
    out
}

/// Isomorphism-invariant encoding of a transitive pair.
pub fn canonical(a: &[u8], b: &[u8]) -> Vec<u8> {
    (0..a.len()).map(|s| relabeled(a, b, s)).min().unwrap()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Key of a sequenced count: genus, darts, faces, hyperedges, root vertex
/// degree and the ordered degrees of the distinguished vertices.
pub type SeqOracleKey = (u32, u32, u32, u32, u32, Vec<u32>);

/// Counts of hypermaps with exactly `t` darts. Vertices are the cycles of
/// the first permutation, hyperedges those of the second and faces those
/// of their product.
#[derive(Default)]
pub struct HypermapCensus {
    /// Rooted hypermaps by `(g, v, e, f)`.
    pub rooted: HashMap<(u32, u32, u32, u32), u64>,
    /// Sensed (unrooted) hypermaps by `(g, v, e, f)`.
    pub sensed: HashMap<(u32, u32, u32, u32), u64>,
    /// Sequenced hypermaps with up to `max_distinguished` distinguished
    /// vertices.
    pub sequenced: HashMap<SeqOracleKey, u64>,
    /// Multirooted hypermaps: like sequenced, with one dart chosen in every
    /// distinguished vertex.
    pub multirooted: HashMap<SeqOracleKey, u64>,
}

/// Ordered selections of up to `k` distinct entries of `items`.
fn ordered_selections(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    if k == 0 {
        return out;
    }
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in ordered_selections(&rest, k - 1) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Labeled counts to rooted ones: every rooted hypermap with `t` darts has
/// exactly `orbit = (t-1)!` labelings that keep the root at dart 0.
fn divide<K: std::hash::Hash + Eq>(labeled: HashMap<K, u64>, orbit: u64) -> HashMap<K, u64> {
    labeled
        .into_iter()
        .map(|(k, c)| {
            assert_eq!(c % orbit, 0, "labeled count not divisible by (t-1)!");
            (k, c / orbit)
        })
        .collect()
}

pub fn hypermap_census(t: usize, max_distinguished: usize) -> HypermapCensus {
    let perms = permutations(t);
    let mut labeled_rooted: HashMap<(u32, u32, u32, u32), u64> = HashMap::new();
    let mut labeled_seq: HashMap<SeqOracleKey, u64> = HashMap::new();
    let mut labeled_multi: HashMap<SeqOracleKey, u64> = HashMap::new();
    let mut classes: HashSet<Vec<u8>> = HashSet::new();
    let mut class_keys: HashMap<Vec<u8>, (u32, u32, u32, u32)> = HashMap::new();
    for a in &perms {
        let vertex_cycles = cycles(a);
        for b in &perms {
            if !transitive(a, b) {
                continue;
            }
            let v = vertex_cycles.len() as u32;
            let e = cycles(b).len() as u32;
            let f = cycles(&compose(a, b)).len() as u32;
            let twice = t as u32 + 2 - v - e - f;
            assert_eq!(twice % 2, 0);
            let g = twice / 2;
            *labeled_rooted.entry((g, v, e, f)).or_default() += 1;
            let root = vertex_cycles[0];
            for selection in ordered_selections(&vertex_cycles[1..], max_distinguished) {
                let key = (g, t as u32, f, e, root, selection.clone());
                *labeled_seq.entry(key.clone()).or_default() += 1;
                *labeled_multi.entry(key).or_default() += selection.iter().map(|&d| u64::from(d)).product::<u64>();
            }
            let form = canonical(a, b);
            if classes.insert(form.clone()) {
                class_keys.insert(form, (g, v, e, f));
            }
        }
    }
    let orbit = factorial(t as u64 - 1);
    let mut sensed = HashMap::new();
    for key in class_keys.into_values() {
        *sensed.entry(key).or_default() += 1;
    }
    HypermapCensus {
        rooted: divide(labeled_rooted, orbit),
        sensed,
        sequenced: divide(labeled_seq, orbit),
        multirooted: divide(labeled_multi, orbit),
    }
}

/// Sequenced rooted maps with `edges` edges, keyed by `(g, f, n, D)` with
/// `D` ordered.
pub fn map_census(edges: usize, max_distinguished: usize) -> HashMap<(u32, u32, u32, Vec<u32>), u64> {
    let n = 2 * edges;
    let involution: Vec<u8> = (0..n as u8).map(|x| x ^ 1).collect();
    let mut fixed: HashMap<(u32, u32, u32, Vec<u32>), u64> = HashMap::new();
    for sigma in permutations(n) {
        if !transitive(&sigma, &involution) {
            continue;
        }
        let vertex_cycles = cycles(&sigma);
        let v = vertex_cycles.len() as i64;
        let f = cycles(&compose(&sigma, &involution)).len() as i64;
        let twice = 2 - v + edges as i64 - f;
        assert!(twice >= 0 && twice % 2 == 0);
        let g = (twice / 2) as u32;
        for selection in ordered_selections(&vertex_cycles[1..], max_distinguished) {
            *fixed.entry((g, f as u32, vertex_cycles[0], selection)).or_default() += 1;
        }
    }
    // Every fixed-point-free involution is conjugate to the fixed one, so
    // labeled pairs number (n-1)!! times the count above; rooting divides
    // by (n-1)!.
    let double_factorial: u64 = (1..n as u64).step_by(2).product();
    let orbit = factorial(n as u64 - 1);
    fixed
        .into_iter()
        .map(|(k, c)| {
            let labeled = c * double_factorial;
            assert_eq!(labeled % orbit, 0);
            (k, labeled / orbit)
        })
        .collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn order_in(modulus: u32, x: u32) -> u32 {
    modulus / gcd(x, modulus)
}

/// Surjections onto `Z_period` from the orbifold group with `2g` free
/// generators and branch generators of the given orders, by enumerating
/// every generator tuple.
pub fn epi0_brute(period: u32, quotient_genus: u32, branch_orders: &[u32]) -> u64 {
    let free = 2 * quotient_genus as usize;
    let slots = free + branch_orders.len();
    let mut tuple = vec![0u32; slots];
    let mut count = 0;
    loop {
        let orders_ok = branch_orders
            .iter()
            .zip(&tuple[free..])
            .all(|(&m, &x)| order_in(period, x) == m);
        let sum_ok = tuple[free..].iter().sum::<u32>() % period == 0;
        let generates = tuple.iter().fold(period, |acc, &x| gcd(acc, x)) == 1;
        if orders_ok && sum_ok && generates {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == slots {
                return count;
            }
            tuple[i] += 1;
            if tuple[i] < period {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

/// Signatures `(g, orbit lengths ascending)` of period `period` that a
/// genus-`genus` surface admits, by the Riemann-Hurwitz count alone.
pub fn signatures_brute(genus: u32, period: u32) -> Vec<(u32, Vec<u32>)> {
    let proper: Vec<u32> = (1..period).filter(|i| period % i == 0).collect();
    let mut out = Vec::new();
    // 2G - 2 = L(2g - 2) + sum(L - i) with every L - i >= L/2.
    for g in 0..=genus {
        let budget = 2 * i64::from(genus) - 2 - i64::from(period) * (2 * i64::from(g) - 2);
        if budget < 0 {
            continue;
        }
        let mut stack: Vec<(Vec<u32>, i64)> = vec![(Vec::new(), budget)];
        while let Some((lengths, left)) = stack.pop() {
            if left == 0 {
                out.push((g, lengths.clone()));
            }
            for &i in &proper {
                if lengths.last().is_some_and(|&last| i < last) {
                    continue;
                }
                let cost = i64::from(period - i);
                if cost <= left {
                    let mut next = lengths.clone();
                    next.push(i);
                    stack.push((next, left - cost));
                }
            }
        }
    }
    out.sort();
    out
}
