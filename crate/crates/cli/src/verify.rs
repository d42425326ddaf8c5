use std::collections::BTreeSet;
use std::path::Path;

use hypercount::text::{self, Counting, Fixture, RowKind};
use hypercount::{sensed_table, ArbNat, CountTable, HypermapKey, KzTable};

use crate::{CmdResult, Failure};

fn max_darts(fixture: &Fixture) -> u32 {
    fixture
        .rows
        .iter()
        .map(|row| match row.kind {
            RowKind::Entry { darts, .. } | RowKind::Sum { darts, .. } => darts,
        })
        .max()
        .unwrap_or(0)
}

fn computed(kz: &KzTable, fixture: &Fixture) -> hypercount::Result<CountTable> {
    let darts = max_darts(fixture);
    match fixture.counting {
        Counting::Rooted => Ok(kz.to_table(fixture.genus)?.restricted(darts)),
        Counting::Unrooted => sensed_table(kz, fixture.genus, darts),
    }
}

/// Compares one fixture with the engine output: every printed row and sum,
/// plus any nonzero computed row the fixture leaves out within the dart
/// counts it covers. Returns the number of rows checked and the failures.
fn check_fixture(fixture: &Fixture, table: &CountTable, verbose: bool) -> (usize, Vec<String>) {
    let path = fixture.path.display();
    let genus = fixture.genus;
    let mut failures = Vec::new();
    let mut printed = BTreeSet::new();
    let mut covered = BTreeSet::new();
    let mut report = |ok: bool, line: String| {
        if !ok {
            failures.push(line.clone());
            println!("FAIL {line}");
        } else if verbose {
            println!("ok   {line}");
        }
    };
    for row in &fixture.rows {
        match &row.kind {
            RowKind::Entry {
                darts,
                vertices,
                hyperedges,
                faces,
                count,
            } => {
                printed.insert((*darts, *vertices, *hyperedges));
                covered.insert(*darts);
                let got = table.count(genus, *darts, *vertices, *hyperedges, *faces);
                report(
                    &got == count,
                    format!("{path}:{}: {darts} {vertices} {hyperedges} {faces}: expected {count}, computed {got}", row.line),
                );
            }
            RowKind::Sum { darts, total } => {
                covered.insert(*darts);
                let got = table.total(genus, *darts);
                report(
                    &got == total,
                    format!("{path}:{}: {darts} sum: expected {total}, computed {got}", row.line),
                );
            }
        }
    }
    let mut checked = fixture.rows.len();
    let missing: Vec<(HypermapKey, ArbNat)> = table
        .iter()
        .filter(|(k, _)| covered.contains(&k.darts) && !printed.contains(&(k.darts, k.vertices, k.hyperedges)))
        .map(|(k, c)| (*k, c.clone()))
        .collect();
    for (key, count) in missing {
        checked += 1;
        report(
            false,
            format!(
                "{path}: missing row {} {} {} {} with computed count {count}",
                key.darts,
                key.vertices,
                key.hyperedges,
                key.faces()
            ),
        );
    }
    (checked, failures)
}

pub fn run(dir: &Path, verbose: bool) -> CmdResult {
    let fixtures = text::load_fixture_dir(dir)?;
    let genus = fixtures.iter().map(|f| f.genus).max().unwrap_or(0);
    let darts = fixtures.iter().map(max_darts).max().unwrap_or(0);
    let kz = KzTable::fill(genus, darts)?;
    let mut total_rows = 0;
    let mut total_failures = 0;
    for fixture in &fixtures {
        let table = computed(&kz, fixture)?;
        let (rows, failures) = check_fixture(fixture, &table, verbose);
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{status} {}: {rows} rows, {} failures",
            fixture.path.display(),
            failures.len()
        );
        total_rows += rows;
        total_failures += failures.len();
    }
    println!(
        "{} files, {total_rows} rows checked, {total_failures} failures",
        fixtures.len()
    );
    if total_failures > 0 {
        return Err(Failure::Verification);
    }
    Ok(())
}
