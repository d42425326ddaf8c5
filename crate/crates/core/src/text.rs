//! Plain-text and JSON renderings of count tables, and the parser for
//! fixture files in the fixed-width reference layout.
//!
//! A table file starts with a header line naming the columns, then one
//! block per dart count: the rows, a blank line, a `sum` row, and a blank
//! line between consecutive blocks. Rows are ordered by faces descending,
//! then vertices ascending.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate_hypermap_key, ArbNat, CountTable, HypermapKey};

/// Which published table a fixture mirrors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Counting {
    /// Rooted hypermaps, header column `h`.
    Rooted,
    /// Sensed (unrooted, orientation-preserving) hypermaps, header column `H`.
    Unrooted,
}

impl Counting {
    fn column(self) -> &'static str {
        match self {
            Counting::Rooted => "h",
            Counting::Unrooted => "H",
        }
    }

    pub fn file_prefix(self) -> &'static str {
        match self {
            Counting::Rooted => "rooted",
            Counting::Unrooted => "unrooted",
        }
    }
}

fn header(counting: Counting) -> String {
    format!("   d   v   e   f   {}", counting.column())
}

fn entry_line(key: &HypermapKey, count: &ArbNat) -> String {
    format!(
        "{:>4}{:>4}{:>4}{:>4}   {}",
        key.darts,
        key.vertices,
        key.hyperedges,
        key.faces(),
        count
    )
}

fn sum_line(darts: u32, total: &ArbNat) -> String {
    format!("{darts:>4}         sum   {total}")
}

/// Renders the rows of `genus` with at most `max_darts` darts in the
/// fixed-width fixture layout. A table with no rows renders as the header alone.
pub fn render_table(table: &CountTable, genus: u32, max_darts: u32, counting: Counting) -> String {
    let mut out = header(counting);
    out.push('\n');
    let mut first = true;
    for darts in table.darts_for(genus).into_iter().filter(|&d| d <= max_darts) {
        if !first {
            out.push('\n');
        }
        first = false;
        for (key, count) in table.rows(genus, darts) {
            let _ = writeln!(out, "{}", entry_line(&key, count));
        }
        let _ = writeln!(out, "\n{}", sum_line(darts, &table.total(genus, darts)));
    }
    out
}

/// One JSON record. Counts are decimal strings since they outgrow 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub genus: u32,
    pub darts: u32,
    pub vertices: u32,
    pub hyperedges: u32,
    pub faces: u32,
    pub count: String,
}

pub fn json_rows(table: &CountTable, genus: u32, max_darts: u32) -> Vec<JsonRow> {
    table
        .darts_for(genus)
        .into_iter()
        .filter(|&d| d <= max_darts)
        .flat_map(|d| table.rows(genus, d))
        .map(|(key, count)| JsonRow {
            genus: key.genus,
            darts: key.darts,
            vertices: key.vertices,
            hyperedges: key.hyperedges,
            faces: key.faces(),
            count: count.to_string(),
        })
        .collect()
}

pub fn render_json(table: &CountTable, genus: u32, max_darts: u32) -> String {
    serde_json::to_string_pretty(&json_rows(table, genus, max_darts)).expect("rows serialize")
}

/// Renders nonzero univariate coefficients as `d h` rows.
pub fn render_series_table(coeffs: &[ArbNat]) -> String {
    let mut out = String::from("   d   h\n");
    for (d, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let _ = writeln!(out, "{d:>4}   {c}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJsonRow {
    pub genus: u32,
    pub darts: u32,
    pub count: String,
}

pub fn render_series_json(genus: u32, coeffs: &[ArbNat]) -> String {
    let rows: Vec<SeriesJsonRow> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(d, c)| SeriesJsonRow {
            genus,
            darts: d as u32,
            count: c.to_string(),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("rows serialize")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowKind {
    Entry {
        darts: u32,
        vertices: u32,
        hyperedges: u32,
        faces: u32,
        count: ArbNat,
    },
    Sum {
        darts: u32,
        total: ArbNat,
    },
}

/// A parsed fixture line together with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub line: usize,
    pub kind: RowKind,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub path: PathBuf,
    pub counting: Counting,
    pub genus: u32,
    pub rows: Vec<FixtureRow>,
}

impl Fixture {
    /// The entry rows as a table, for round-trip comparisons.
    pub fn to_table(&self, meta: crate::model::TableMeta) -> Result<CountTable> {
        let mut table = CountTable::new(meta);
        for row in &self.rows {
            if let RowKind::Entry {
                darts,
                vertices,
                hyperedges,
                faces,
                count,
            } = &row.kind
            {
                table.insert(HypermapKey::new(self.genus, *darts, *vertices, *hyperedges, *faces)?, count.clone())?;
            }
        }
        Ok(table)
    }
}

/// Reads `rooted_gN.txt` or `unrooted_gN.txt` names.
pub fn classify_fixture_name(name: &str) -> Option<(Counting, u32)> {
    let stem = name.strip_suffix(".txt")?;
    let (counting, genus) = if let Some(g) = stem.strip_prefix("rooted_g") {
        (Counting::Rooted, g)
    } else {
        (Counting::Unrooted, stem.strip_prefix("unrooted_g")?)
    };
    Some((counting, genus.parse().ok()?))
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn parse_u32(path: &Path, line: usize, field: &str, token: &str) -> Result<u32> {
    token
        .parse()
        .map_err(|_| parse_error(path, line, format!("bad {field} '{token}'")))
}

fn parse_count(path: &Path, line: usize, token: &str) -> Result<ArbNat> {
    token
        .parse()
        .map_err(|_| parse_error(path, line, format!("bad count '{token}'")))
}

/// Parses fixture text. `path` is only used in error messages. Blank lines
/// and a header line of column names are skipped.
pub fn parse_fixture_text(text: &str, genus: u32, path: &Path) -> Result<Vec<FixtureRow>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            ["d", "v", "e", "f", _] => continue,
            [d, "sum", total] => rows.push(FixtureRow {
                line,
                kind: RowKind::Sum {
                    darts: parse_u32(path, line, "dart count", d)?,
                    total: parse_count(path, line, total)?,
                },
            }),
            [d, v, e, f, h] => {
                let darts = parse_u32(path, line, "dart count", d)?;
                let vertices = parse_u32(path, line, "vertex count", v)?;
                let hyperedges = parse_u32(path, line, "hyperedge count", e)?;
                let faces = parse_u32(path, line, "face count", f)?;
                if !validate_hypermap_key(genus, darts, vertices, hyperedges, faces) {
                    return Err(parse_error(
                        path,
                        line,
                        format!("({darts}, {vertices}, {hyperedges}, {faces}) is not a genus-{genus} hypermap key"),
                    ));
                }
                rows.push(FixtureRow {
                    line,
                    kind: RowKind::Entry {
                        darts,
                        vertices,
                        hyperedges,
                        faces,
                        count: parse_count(path, line, h)?,
                    },
                });
            }
            _ => return Err(parse_error(path, line, format!("unrecognized line '{}'", raw.trim()))),
        }
    }
    Ok(rows)
}

pub fn parse_fixture_file(path: &Path) -> Result<Fixture> {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    let (counting, genus) = classify_fixture_name(name)
        .ok_or_else(|| parse_error(path, 0, "expected a name like rooted_g0.txt or unrooted_g0.txt"))?;
    let text = fs::read_to_string(path)?;
    let rows = parse_fixture_text(&text, genus, path)?;
    Ok(Fixture {
        path: path.to_path_buf(),
        counting,
        genus,
        rows,
    })
}

/// All fixture files in `dir`, sorted by name. Files with other names are
/// ignored; a directory without any fixture is an error.
pub fn load_fixture_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| classify_fixture_name(n).is_some())
        })
        .collect();
    if paths.is_empty() {
        return Err(Error::Format(format!("no fixture files in {}", dir.display())));
    }
    paths.sort();
    paths.iter().map(|p| parse_fixture_file(p)).collect()
}

/// Sum rows whose total disagrees with the entry rows of the same block.
pub fn inconsistent_sums(rows: &[FixtureRow]) -> Vec<usize> {
    let mut bad = Vec::new();
    let mut running: std::collections::BTreeMap<u32, ArbNat> = Default::default();
    for row in rows {
        match &row.kind {
            RowKind::Entry { darts, count, .. } => {
                *running.entry(*darts).or_insert_with(ArbNat::zero) += count;
            }
            RowKind::Sum { darts, total } => {
                if running.get(darts).cloned().unwrap_or_default() != *total {
                    bad.push(row.line);
                }
            }
        }
    }
    bad
}
