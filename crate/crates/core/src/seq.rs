//! Sequenced and multirooted hypermap counts, and sequenced ordinary maps.
//!
//! This engine evaluates the bijective-decomposition recurrences directly,
//! memoized on canonical keys. It is much slower than [`crate::kz`] and
//! serves as its independent oracle.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::model::{faces_from_key, ArbNat, CountTable, EngineId, HypermapKey, TableMeta};

/// Degrees of the distinguished vertices, kept sorted ascending. The counts
/// only depend on `D` as a multiset, so sorting is the canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeList(Vec<u32>);

impl DegreeList {
    pub fn new(degrees: impl IntoIterator<Item = u32>) -> Self {
        let mut v: Vec<u32> = degrees.into_iter().collect();
        v.sort_unstable();
        DegreeList(v)
    }

    pub fn empty() -> Self {
        DegreeList(Vec::new())
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }

    pub fn product(&self) -> ArbNat {
        self.0.iter().map(|&d| ArbNat::from(d)).product()
    }

    /// `p.D`
    pub fn prepend(&self, p: u32) -> Self {
        let pos = self.0.partition_point(|&d| d < p);
        let mut v = self.0.clone();
        v.insert(pos, p);
        DegreeList(v)
    }

    /// `D - {d_j}`
    pub fn without(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(j);
        DegreeList(v)
    }

    /// Every split `D = D1 + (D - D1)` up to reordering, with the number of
    /// positional sublists that realize it: the product over distinct values
    /// of `C(multiplicity, taken)`.
    pub fn splits(&self) -> Vec<(DegreeList, DegreeList, u64)> {
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &d in &self.0 {
            match groups.last_mut() {
                Some((value, count)) if *value == d => *count += 1,
                _ => groups.push((d, 1)),
            }
        }
        let mut out = vec![(Vec::new(), Vec::new(), 1u64)];
        for (value, count) in groups {
            let mut next = Vec::with_capacity(out.len() * (count + 1));
            for (left, right, weight) in &out {
                for taken in 0..=count {
                    let mut l = left.clone();
                    let mut r = right.clone();
                    l.extend(std::iter::repeat(value).take(taken));
                    r.extend(std::iter::repeat(value).take(count - taken));
                    next.push((l, r, weight * binomial(count as u64, taken as u64)));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(l, r, w)| (DegreeList(l), DegreeList(r), w))
            .collect()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Key of a sequenced hypermap count `H(g, t, f, e, n, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqKey {
    pub genus: u32,
    pub darts: u32,
    pub faces: u32,
    pub hyperedges: u32,
    /// Degree of the root vertex.
    pub root_degree: u32,
    pub distinguished: DegreeList,
}

impl SeqKey {
    pub fn new(genus: u32, darts: u32, faces: u32, hyperedges: u32, root_degree: u32, distinguished: DegreeList) -> Self {
        SeqKey {
            genus,
            darts,
            faces,
            hyperedges,
            root_degree,
            distinguished,
        }
    }

    pub fn is_base(&self) -> bool {
        self.genus == 0
            && self.darts == 0
            && self.faces == 1
            && self.hyperedges == 0
            && self.root_degree == 0
            && self.distinguished.is_empty()
    }

    /// Cheap necessary conditions for a nonempty sequenced hypermap: every
    /// cell owns a dart, the root and distinguished vertices are distinct,
    /// and their degrees fit in the dart count.
    pub fn is_feasible(&self) -> bool {
        let t = self.darts;
        let vertices = faces_from_key(self.genus, t, self.hyperedges, self.faces);
        self.faces >= 1
            && self.hyperedges >= 1
            && self.faces <= t
            && self.hyperedges <= t
            && self.root_degree >= 1
            && vertices > self.distinguished.len() as i64
            && u64::from(self.root_degree) + self.distinguished.sum() <= u64::from(t)
    }
}

/// Largest dart count the command-line tools ask of this engine. The memo
/// grows quickly: genus <= 3 takes about a second at 10 darts and several
/// seconds at 12 with an optimized build.
pub const SEQ_MAX_DARTS: u32 = 12;

/// Memoized evaluator for the sequenced recurrences.
#[derive(Debug, Default)]
pub struct SeqEngine {
    hyper: HashMap<SeqKey, ArbNat>,
    multi: HashMap<SeqKey, ArbNat>,
    maps: HashMap<SeqKey, ArbNat>,
}

impl SeqEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized keys across all three recurrences.
    pub fn memo_len(&self) -> usize {
        self.hyper.len() + self.multi.len() + self.maps.len()
    }

    /// Number of rooted sequenced hypermaps `H(g, t, f, e, n, D)`.
    pub fn seq_hyper_count(&mut self, key: &SeqKey) -> ArbNat {
        if key.darts == 0 {
            return if key.is_base() { ArbNat::one() } else { ArbNat::zero() };
        }
        if !key.is_feasible() {
            return ArbNat::zero();
        }
        if let Some(hit) = self.hyper.get(key) {
            return hit.clone();
        }
        let value = self.eval_hyper(key);
        self.hyper.insert(key.clone(), value.clone());
        value
    }

    fn eval_hyper(&mut self, key: &SeqKey) -> ArbNat {
        let SeqKey {
            genus: g,
            darts: t,
            faces: f,
            hyperedges: e,
            root_degree: n,
            ref distinguished,
        } = *key;
        let mut total = ArbNat::zero();

        // Root dart splits the hypermap in two. Faces of one side become
        // hyperedges of the other: f1 + e2 = e, f2 + e1 = f.
        for (d1, d2, weight) in distinguished.splits() {
            for g1 in 0..=g {
                for t1 in 0..t {
                    for f1 in 0..=e {
                        for e1 in 0..=f {
                            for n1 in 0..n {
                                let left = self.seq_hyper_count(&SeqKey::new(g1, t1, f1, e1, n1, d1.clone()));
                                if left.is_zero() {
                                    continue;
                                }
                                let right = self.seq_hyper_count(&SeqKey::new(
                                    g - g1,
                                    t - 1 - t1,
                                    f - e1,
                                    e - f1,
                                    n - 1 - n1,
                                    d2.clone(),
                                ));
                                if !right.is_zero() {
                                    total += left * right * weight;
                                }
                            }
                        }
                    }
                }
            }
        }

        // The remaining terms pass (e, f) into the (f, e) slots.
        if n >= 3 && g >= 1 {
            for p in 1..=(n - 2) {
                let sub = SeqKey::new(g - 1, t - 1, e, f, n - 1 - p, distinguished.prepend(p));
                total += self.seq_hyper_count(&sub) * p;
            }
        }
        for p in n..t {
            total += self.seq_hyper_count(&SeqKey::new(g, t - 1, e, f, p, distinguished.clone()));
        }
        for (j, &dj) in distinguished.as_slice().iter().enumerate() {
            let sub = SeqKey::new(g, t - 1, e, f, dj + n - 1, distinguished.without(j));
            total += self.seq_hyper_count(&sub);
        }
        total
    }

    /// Rooted hypermaps of genus `g` with `t` darts, `f` faces and `e`
    /// hyperedges: `H(g, t, f, e, n, [])` summed over the root degree.
    pub fn rooted_from_sequenced(&mut self, genus: u32, darts: u32, faces: u32, hyperedges: u32) -> ArbNat {
        (1..=darts)
            .map(|n| self.seq_hyper_count(&SeqKey::new(genus, darts, faces, hyperedges, n, DegreeList::empty())))
            .sum()
    }

    /// Multirooted count `H_m(g, t, f, e, n.D) = H(g, t, f, e, n, D) * prod(D)`.
    pub fn multirooted_count(
        &mut self,
        genus: u32,
        darts: u32,
        faces: u32,
        hyperedges: u32,
        root_degree: u32,
        distinguished: &DegreeList,
    ) -> ArbNat {
        let key = SeqKey::new(genus, darts, faces, hyperedges, root_degree, distinguished.clone());
        self.seq_hyper_count(&key) * distinguished.product()
    }

    /// Multirooted count from its own recurrence, without going through the
    /// sequenced counts.
    pub fn multirooted_direct(&mut self, key: &SeqKey) -> ArbNat {
        if key.darts == 0 {
            return if key.is_base() { ArbNat::one() } else { ArbNat::zero() };
        }
        if !key.is_feasible() {
            return ArbNat::zero();
        }
        if let Some(hit) = self.multi.get(key) {
            return hit.clone();
        }
        let value = self.eval_multi(key);
        self.multi.insert(key.clone(), value.clone());
        value
    }

    fn eval_multi(&mut self, key: &SeqKey) -> ArbNat {
        let SeqKey {
            genus: g,
            darts: t,
            faces: f,
            hyperedges: e,
            root_degree: n,
            ref distinguished,
        } = *key;
        let mut total = ArbNat::zero();

        for (d1, d2, weight) in distinguished.splits() {
            for g1 in 0..=g {
                for t1 in 0..t {
                    for f1 in 0..=e {
                        for e1 in 0..=f {
                            for n1 in 0..n {
                                let left = self.multirooted_direct(&SeqKey::new(g1, t1, f1, e1, n1, d1.clone()));
                                if left.is_zero() {
                                    continue;
                                }
                                let right = self.multirooted_direct(&SeqKey::new(
                                    g - g1,
                                    t - 1 - t1,
                                    f - e1,
                                    e - f1,
                                    n - 1 - n1,
                                    d2.clone(),
                                ));
                                if !right.is_zero() {
                                    total += left * right * weight;
                                }
                            }
                        }
                    }
                }
            }
        }

        if n >= 3 && g >= 1 {
            for p in 1..=(n - 2) {
                let sub = SeqKey::new(g - 1, t - 1, e, f, n - 1 - p, distinguished.prepend(p));
                total += self.multirooted_direct(&sub);
            }
        }
        for p in n..t {
            total += self.multirooted_direct(&SeqKey::new(g, t - 1, e, f, p, distinguished.clone()));
        }
        for (j, &dj) in distinguished.as_slice().iter().enumerate() {
            let sub = SeqKey::new(g, t - 1, e, f, dj + n - 1, distinguished.without(j));
            total += self.multirooted_direct(&sub) * dj;
        }
        total
    }

    /// Number of sequenced ordinary maps `M(g, e, f, n, D)` with `e` edges,
    /// `f` faces, root vertex of degree `n` and distinguished degrees `D`.
    pub fn seq_map_count(&mut self, genus: u32, edges: u32, faces: u32, root_degree: u32, distinguished: &DegreeList) -> ArbNat {
        if edges == 0 {
            let base = genus == 0 && faces == 1 && root_degree == 0 && distinguished.is_empty();
            return if base { ArbNat::one() } else { ArbNat::zero() };
        }
        let vertices = 2 - 2 * i64::from(genus) + i64::from(edges) - i64::from(faces);
        let feasible = faces >= 1
            && faces <= 2 * edges
            && root_degree >= 1
            && vertices > distinguished.len() as i64
            && u64::from(root_degree) + distinguished.sum() <= 2 * u64::from(edges);
        if !feasible {
            return ArbNat::zero();
        }
        // Maps reuse SeqKey with `darts` holding the edge count and no
        // hyperedge field.
        let key = SeqKey::new(genus, edges, faces, 0, root_degree, distinguished.clone());
        if let Some(hit) = self.maps.get(&key) {
            return hit.clone();
        }
        let value = self.eval_map(genus, edges, faces, root_degree, distinguished);
        self.maps.insert(key, value.clone());
        value
    }

    fn eval_map(&mut self, g: u32, e: u32, f: u32, n: u32, distinguished: &DegreeList) -> ArbNat {
        let mut total = ArbNat::zero();

        // Root edge is a loop whose removal disconnects the map.
        if n >= 2 {
            for (d1, d2, weight) in distinguished.splits() {
                for g1 in 0..=g {
                    for e1 in 0..e {
                        for f1 in 0..=f {
                            for n1 in 0..=(n - 2) {
                                let left = self.seq_map_count(g1, e1, f1, n1, &d1);
                                if left.is_zero() {
                                    continue;
                                }
                                let right = self.seq_map_count(g - g1, e - 1 - e1, f - f1, n - 2 - n1, &d2);
                                if !right.is_zero() {
                                    total += left * right * weight;
                                }
                            }
                        }
                    }
                }
            }
        }

        // Loop whose removal lowers the genus; the split-off vertex becomes
        // distinguished with degree p and can be reattached in p ways.
        if g >= 1 && n >= 4 {
            for p in 1..=(n - 3) {
                total += self.seq_map_count(g - 1, e - 1, f, n - 2 - p, &distinguished.prepend(p)) * p;
            }
        }

        // Root edge is a link to an undistinguished vertex.
        for p in (n - 1)..=(2 * e - 2) {
            total += self.seq_map_count(g, e - 1, f, p, distinguished);
        }

        // Root edge is a link to a distinguished vertex.
        for (j, &dj) in distinguished.as_slice().iter().enumerate() {
            total += self.seq_map_count(g, e - 1, f, dj + n - 2, &distinguished.without(j));
        }
        total
    }

    /// Rooted counts of one genus up to `max_darts`, aggregated from the
    /// sequenced recurrence.
    pub fn to_table(&mut self, genus: u32, max_darts: u32) -> Result<CountTable> {
        let mut table = CountTable::new(TableMeta {
            engine: EngineId::Seq,
            max_genus: genus,
            max_darts,
        });
        for t in 1..=max_darts {
            for f in 1..=t {
                for e in 1..=t {
                    let v = faces_from_key(genus, t, f, e);
                    if v < 1 {
                        continue;
                    }
                    let count = self.rooted_from_sequenced(genus, t, f, e);
                    table.insert(HypermapKey::new(genus, t, v as u32, e, f)?, count)?;
                }
            }
        }
        Ok(table)
    }
}
