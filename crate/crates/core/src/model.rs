//! Exact arithmetic types, count keys and the table container shared by all
//! engines.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Arbitrary-precision natural number. Every count is one of these.
pub type ArbNat = BigUint;

/// Exact rational in lowest terms with positive denominator.
pub type ArbRat = BigRational;

/// Returns `t + 2(1 - g) - v - e`, the face count forced by the genus formula
/// for hypermaps. Nonpositive results mean no hypermap has these parameters.
pub fn faces_from_key(genus: u32, darts: u32, vertices: u32, hyperedges: u32) -> i64 {
    i64::from(darts) + 2 - 2 * i64::from(genus) - i64::from(vertices) - i64::from(hyperedges)
}

/// True iff `v + e + f = t + 2(1 - g)` with at least one vertex and one face,
/// and either at least one dart or the parameters of the empty hypermap.
pub fn validate_hypermap_key(genus: u32, darts: u32, vertices: u32, hyperedges: u32, faces: u32) -> bool {
    if vertices == 0 || faces == 0 {
        return false;
    }
    if faces_from_key(genus, darts, vertices, hyperedges) != i64::from(faces) {
        return false;
    }
    darts >= 1 || (genus, vertices, hyperedges, faces) == (0, 1, 0, 1)
}

/// Parameters of a hypermap class. The face count is derived from the genus
/// formula and never stored, so a key cannot violate it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HypermapKey {
    pub genus: u32,
    pub darts: u32,
    pub vertices: u32,
    pub hyperedges: u32,
}

impl HypermapKey {
    pub fn new(genus: u32, darts: u32, vertices: u32, hyperedges: u32, faces: u32) -> Result<Self> {
        if !validate_hypermap_key(genus, darts, vertices, hyperedges, faces) {
            return Err(Error::InvalidKey(format!(
                "g={genus} t={darts} v={vertices} e={hyperedges} f={faces} violates v + e + f = t + 2(1 - g)"
            )));
        }
        Ok(HypermapKey {
            genus,
            darts,
            vertices,
            hyperedges,
        })
    }

    /// Builds the key from `(g, t, v, e)`; fails when the derived face count
    /// is not positive.
    pub fn from_gtve(genus: u32, darts: u32, vertices: u32, hyperedges: u32) -> Result<Self> {
        let faces = faces_from_key(genus, darts, vertices, hyperedges);
        if faces < 1 {
            return Err(Error::InvalidKey(format!(
                "g={genus} t={darts} v={vertices} e={hyperedges} leaves {faces} faces"
            )));
        }
        Self::new(genus, darts, vertices, hyperedges, faces as u32)
    }

    pub fn faces(&self) -> u32 {
        faces_from_key(self.genus, self.darts, self.vertices, self.hyperedges) as u32
    }
}

impl fmt::Display for HypermapKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g={}, t={}, v={}, e={}, f={})",
            self.genus,
            self.darts,
            self.vertices,
            self.hyperedges,
            self.faces()
        )
    }
}

/// Parameters of an ordinary map; faces derived from `v - e + f = 2(1 - g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MapKey {
    pub genus: u32,
    pub edges: u32,
    pub vertices: u32,
}

impl MapKey {
    pub fn new(genus: u32, edges: u32, vertices: u32, faces: u32) -> Result<Self> {
        let key = MapKey { genus, edges, vertices };
        if vertices == 0 || faces == 0 || key.faces_signed() != i64::from(faces) {
            return Err(Error::InvalidKey(format!(
                "g={genus} edges={edges} v={vertices} f={faces} violates v - e + f = 2(1 - g)"
            )));
        }
        Ok(key)
    }

    fn faces_signed(&self) -> i64 {
        2 - 2 * i64::from(self.genus) + i64::from(self.edges) - i64::from(self.vertices)
    }

    pub fn faces(&self) -> u32 {
        self.faces_signed() as u32
    }
}

/// Which engine produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineId {
    /// Rooted counts from the homogeneous-polynomial recurrence.
    Kz,
    /// Rooted counts aggregated from sequenced hypermaps.
    Seq,
    /// Sensed counts from the orbifold summation.
    Orbifold,
    /// Rooted counts read off a trivariate generating function.
    Series,
}

impl EngineId {
    pub fn as_str(&self) -> &'static str {
        match self {
            EngineId::Kz => "kz",
            EngineId::Seq => "seq",
            EngineId::Orbifold => "orbifold",
            EngineId::Series => "series",
        }
    }
}

impl fmt::Display for EngineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EngineId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kz" => Ok(EngineId::Kz),
            "seq" => Ok(EngineId::Seq),
            "orbifold" => Ok(EngineId::Orbifold),
            "series" => Ok(EngineId::Series),
            other => Err(Error::Format(format!("unknown engine '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableMeta {
    pub engine: EngineId,
    pub max_genus: u32,
    pub max_darts: u32,
}

/// Sparse table of positive counts keyed by [`HypermapKey`]. Absent keys
/// count zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    meta: TableMeta,
    entries: BTreeMap<HypermapKey, ArbNat>,
}

impl CountTable {
    pub fn new(meta: TableMeta) -> Self {
        CountTable {
            meta,
            entries: BTreeMap::new(),
        }
    }

    pub fn meta(&self) -> TableMeta {
        self.meta
    }

    /// Stores `count` under `key`; zero counts are dropped.
    pub fn insert(&mut self, key: HypermapKey, count: ArbNat) -> Result<()> {
        if !validate_hypermap_key(key.genus, key.darts, key.vertices, key.hyperedges, key.faces()) {
            return Err(Error::InvalidKey(key.to_string()));
        }
        if count.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, count);
        }
        Ok(())
    }

    pub fn get(&self, key: &HypermapKey) -> ArbNat {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Count for `(g, t, v, e, f)`; zero for invalid or absent keys.
    pub fn count(&self, genus: u32, darts: u32, vertices: u32, hyperedges: u32, faces: u32) -> ArbNat {
        match HypermapKey::new(genus, darts, vertices, hyperedges, faces) {
            Ok(key) => self.get(&key),
            Err(_) => ArbNat::zero(),
        }
    }

    /// Sum over all `(v, e, f)` at fixed genus and dart count.
    pub fn total(&self, genus: u32, darts: u32) -> ArbNat {
        self.block(genus, darts).map(|(_, c)| c).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HypermapKey, &ArbNat)> {
        self.entries.iter()
    }

    fn block(&self, genus: u32, darts: u32) -> impl Iterator<Item = (&HypermapKey, &ArbNat)> {
        let lo = HypermapKey {
            genus,
            darts,
            vertices: 0,
            hyperedges: 0,
        };
        let hi = HypermapKey {
            genus,
            darts,
            vertices: u32::MAX,
            hyperedges: u32::MAX,
        };
        self.entries.range(lo..=hi)
    }

    /// Genus values present, ascending.
    pub fn genera(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.entries.keys().map(|k| k.genus).collect();
        out.dedup();
        out
    }

    /// Dart counts present for `genus`, ascending.
    pub fn darts_for(&self, genus: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .entries
            .keys()
            .filter(|k| k.genus == genus)
            .map(|k| k.darts)
            .collect();
        out.dedup();
        out
    }

    /// Copy keeping only rows with at most `max_darts` darts.
    pub fn restricted(&self, max_darts: u32) -> CountTable {
        CountTable {
            meta: TableMeta {
                max_darts: max_darts.min(self.meta.max_darts),
                ..self.meta
            },
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| k.darts <= max_darts)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Rows of one `(g, t)` block in the order the published tables use:
    /// faces descending, then vertices ascending.
    pub fn rows(&self, genus: u32, darts: u32) -> Vec<(HypermapKey, &ArbNat)> {
        let mut rows: Vec<(HypermapKey, &ArbNat)> = self.block(genus, darts).map(|(k, c)| (*k, c)).collect();
        rows.sort_by_key(|(k, _)| (std::cmp::Reverse(k.faces()), k.vertices));
        rows
    }
}
