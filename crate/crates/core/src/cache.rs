//! On-disk cache of per-genus count tables.
//!
//! Each file holds one table in a line-oriented text format:
//!
//! ```text
//! hypercount-cache 1
//! engine kz
//! genus 2
//! max-darts 14
//! g d v e count
//! 2 5 1 1 8
//! ```
//!
//! Faces are implied by the genus formula. Writes go to a temporary file in
//! the cache directory which is then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::model::{ArbNat, CountTable, EngineId, HypermapKey, TableMeta};

pub const FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "HYPERMAP_CACHE_DIR";

const MAGIC: &str = "hypercount-cache";
const COLUMNS: &str = "g d v e count";

/// `$HYPERMAP_CACHE_DIR` if set, else a `hypercount` directory under the
/// user cache directory, else under the system temporary directory.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(dir).join("hypercount");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(home).join(".cache").join("hypercount");
    }
    std::env::temp_dir().join("hypercount")
}

pub fn serialize(table: &CountTable) -> String {
    let meta = table.meta();
    let mut out = format!(
        "{MAGIC} {FORMAT_VERSION}\nengine {}\ngenus {}\nmax-darts {}\n{COLUMNS}\n",
        meta.engine, meta.max_genus, meta.max_darts
    );
    for (key, count) in table.iter() {
        out.push_str(&format!(
            "{} {} {} {} {}\n",
            key.genus, key.darts, key.vertices, key.hyperedges, count
        ));
    }
    out
}

pub fn deserialize(text: &str, path: &Path) -> Result<CountTable> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = |name: &str| -> Result<String> {
        let (n, line) = lines.next().ok_or_else(|| err(0, format!("missing '{name}' header")))?;
        line.strip_prefix(name)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| err(n, format!("expected '{name}' header")))
    };
    let version = header(MAGIC)?;
    if version != FORMAT_VERSION.to_string() {
        return Err(err(1, format!("unsupported cache format version {version}")));
    }
    let engine: EngineId = header("engine")?.parse()?;
    let genus: u32 = header("genus")?.parse().map_err(|_| err(3, "bad genus".into()))?;
    let max_darts: u32 = header("max-darts")?.parse().map_err(|_| err(4, "bad max-darts".into()))?;
    match lines.next() {
        Some((_, COLUMNS)) => {}
        Some((n, _)) => return Err(err(n, "expected column header".into())),
        None => return Err(err(5, "missing column header".into())),
    }
    let mut table = CountTable::new(TableMeta {
        engine,
        max_genus: genus,
        max_darts,
    });
    for (n, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [g, d, v, e, count] = fields.as_slice() else {
            return Err(err(n, format!("expected 5 fields, found {}", fields.len())));
        };
        let num = |s: &str| s.parse::<u32>().map_err(|_| err(n, format!("bad integer '{s}'")));
        let key = HypermapKey::from_gtve(num(g)?, num(d)?, num(v)?, num(e)?).map_err(|e| err(n, e.to_string()))?;
        let count: ArbNat = count.parse().map_err(|_| err(n, format!("bad count '{count}'")))?;
        table.insert(key, count)?;
    }
    Ok(table)
}

/// A cache file and the header it declares.
#[derive(Clone, Debug)]
pub struct CacheEntry {
    pub path: PathBuf,
    pub meta: TableMeta,
    pub rows: usize,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Self {
        Cache::new(default_cache_dir())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, engine: EngineId, genus: u32, max_darts: u32) -> PathBuf {
        self.dir.join(format!("{engine}-g{genus}-d{max_darts}.txt"))
    }

    pub fn store(&self, table: &CountTable) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let meta = table.meta();
        let target = self.path_for(meta.engine, meta.max_genus, meta.max_darts);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serialize(table).as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&target).map_err(|e| Error::Io(e.error))?;
        Ok(target)
    }

    /// A cached table for `engine` and `genus` covering at least `max_darts`
    /// darts, restricted to `max_darts`. Unreadable files are skipped.
    pub fn load(&self, engine: EngineId, genus: u32, max_darts: u32) -> Result<Option<CountTable>> {
        let best = self
            .entries()?
            .into_iter()
            .filter(|e| e.meta.engine == engine && e.meta.max_genus == genus && e.meta.max_darts >= max_darts)
            .min_by_key(|e| e.meta.max_darts);
        let Some(entry) = best else {
            return Ok(None);
        };
        let table = deserialize(&fs::read_to_string(&entry.path)?, &entry.path)?;
        Ok(Some(table.restricted(max_darts)))
    }

    /// Readable cache files, sorted by path. A missing directory has none.
    pub fn entries(&self) -> Result<Vec<CacheEntry>> {
        let read = match fs::read_dir(&self.dir) {
            Ok(read) => read,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for entry in read {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let Ok(text) = fs::read_to_string(&path) else {
                continue;
            };
            if let Ok(table) = deserialize(&text, &path) {
                out.push(CacheEntry {
                    path,
                    meta: table.meta(),
                    rows: table.len(),
                });
            }
        }
        out.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(max_darts: u32) -> CountTable {
        let mut t = CountTable::new(TableMeta {
            engine: EngineId::Orbifold,
            max_genus: 1,
            max_darts,
        });
        t.insert(HypermapKey::new(1, 3, 1, 1, 1).unwrap(), 1u32.into()).unwrap();
        t.insert(HypermapKey::new(1, 4, 1, 2, 1).unwrap(), 2u32.into()).unwrap();
        t.insert(
            HypermapKey::new(1, 5, 1, 1, 3).unwrap(),
            "123456789012345678901234567890".parse().unwrap(),
        )
        .unwrap();
        t
    }

    #[test]
    fn text_round_trip() {
        let table = sample(5);
        let text = serialize(&table);
        assert!(text.starts_with("hypercount-cache 1\nengine orbifold\ngenus 1\nmax-darts 5\n"));
        assert_eq!(deserialize(&text, Path::new("x")).unwrap(), table);
    }

    #[test]
    fn rejects_bad_headers() {
        let text = serialize(&sample(5)).replace("cache 1", "cache 9");
        assert!(deserialize(&text, Path::new("x")).is_err());
        let text = serialize(&sample(5)) + "1 2 3\n";
        let err = deserialize(&text, Path::new("x")).unwrap_err();
        assert!(err.to_string().starts_with("x:9:"), "{err}");
    }

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        assert!(cache.entries().unwrap().is_empty());
        assert!(cache.load(EngineId::Orbifold, 1, 4).unwrap().is_none());
        let path = cache.store(&sample(5)).unwrap();
        assert!(path.ends_with("orbifold-g1-d5.txt"));
        assert_eq!(cache.load(EngineId::Orbifold, 1, 5).unwrap().unwrap(), sample(5));
        let smaller = cache.load(EngineId::Orbifold, 1, 4).unwrap().unwrap();
        assert_eq!(smaller.len(), 2);
        assert_eq!(smaller.meta().max_darts, 4);
        assert!(cache.load(EngineId::Orbifold, 1, 6).unwrap().is_none());
        assert!(cache.load(EngineId::Kz, 1, 4).unwrap().is_none());
        let entries = cache.entries().unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].rows, 3);
    }
}
