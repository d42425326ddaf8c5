use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hypercount::cache::Cache;
use hypercount::checks::Crosscheck;
use hypercount::seq::SEQ_MAX_DARTS;
use hypercount::series::{self, MAX_TRIVARIATE_GENUS, MAX_UNIVARIATE_GENUS};
use hypercount::text::{self, Counting};
use hypercount::{sensed_table, CountTable, EngineId, Error, KzTable, SeqEngine};

mod verify;

/// Exact counts of rooted and unrooted orientable hypermaps.
#[derive(Parser, Debug)]
#[command(name = "hypercount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rooted hypermaps of one genus, by darts, vertices, hyperedges, faces.
    Rooted {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        max_darts: u32,
        #[arg(long, value_enum, default_value_t = Engine::Kz)]
        engine: Engine,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Neither read nor write the table cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Unrooted (sensed) hypermaps of one genus.
    Unrooted {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        max_darts: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Neither read nor write the table cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Coefficients of the closed-form generating functions.
    Series {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        max_darts: u32,
        /// Parameter used to expand the univariate form.
        #[arg(long, value_enum, default_value_t = Param::Tau)]
        param: Param,
        /// Expand the form in vertices, hyperedges and faces instead.
        #[arg(long)]
        trivariate: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Recompute every row of the fixture tables in a directory.
    Verify {
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        /// Print a line for every row, not only failures.
        #[arg(long)]
        verbose: bool,
    },
    /// Compare the engines against each other and check invariants.
    Crosscheck {
        /// Largest genus [default: 2, or 10 with --deep]
        #[arg(long)]
        genus: Option<u32>,
        /// Largest dart count [default: 10, or 30 with --deep]
        #[arg(long)]
        max_darts: Option<u32>,
        /// Raise the default bounds to genus 10 and 30 darts.
        #[arg(long)]
        deep: bool,
        /// Only compare the generating functions with the recurrence.
        #[arg(long)]
        series_only: bool,
    },
    /// Show the cache directory and the tables stored there.
    CacheInfo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Kz,
    Seq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Param {
    Tau,
    T,
}

/// Crosscheck bounds for the sequenced oracle, which is slow by design.
const SEQ_CHECK_GENUS: u32 = 2;
const SEQ_CHECK_DARTS: u32 = 10;
const TRIVARIATE_CHECK_DEGREE: u32 = 12;

enum Failure {
    Verification,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rooted {
            genus,
            max_darts,
            engine,
            format,
            no_cache,
        } => cmd_rooted(genus, max_darts, engine, format, cache(no_cache)),
        Command::Unrooted {
            genus,
            max_darts,
            format,
            no_cache,
        } => cmd_unrooted(genus, max_darts, format, cache(no_cache)),
        Command::Series {
            genus,
            max_darts,
            param,
            trivariate,
            format,
        } => cmd_series(genus, max_darts, param, trivariate, format),
        Command::Verify { fixtures, verbose } => verify::run(&fixtures, verbose),
        Command::Crosscheck {
            genus,
            max_darts,
            deep,
            series_only,
        } => cmd_crosscheck(genus, max_darts, deep, series_only),
        Command::CacheInfo => cmd_cache_info(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn cache(disabled: bool) -> Option<Cache> {
    (!disabled).then(Cache::from_env)
}

/// Looks the table up in the cache, computing and storing it on a miss.
/// A cache that cannot be read or written only produces a warning.
fn cached(
    cache: Option<&Cache>,
    engine: EngineId,
    genus: u32,
    max_darts: u32,
    compute: impl FnOnce() -> hypercount::Result<CountTable>,
) -> hypercount::Result<CountTable> {
    if let Some(cache) = cache {
        match cache.load(engine, genus, max_darts) {
            Ok(Some(table)) => return Ok(table),
            Ok(None) => {}
            Err(e) => eprintln!("warning: ignoring cache: {e}"),
        }
    }
    let table = compute()?;
    if let Some(cache) = cache {
        if let Err(e) = cache.store(&table) {
            eprintln!("warning: could not write cache in {}: {e}", cache.dir().display());
        }
    }
    Ok(table)
}

fn emit(table: &CountTable, genus: u32, max_darts: u32, counting: Counting, format: Format) {
    match format {
        Format::Table => print!("{}", text::render_table(table, genus, max_darts, counting)),
        Format::Json => println!("{}", text::render_json(table, genus, max_darts)),
    }
}

fn cmd_rooted(genus: u32, max_darts: u32, engine: Engine, format: Format, cache: Option<Cache>) -> CmdResult {
    let table = match engine {
        Engine::Kz => cached(cache.as_ref(), EngineId::Kz, genus, max_darts, || {
            KzTable::fill(genus, max_darts)?.to_table(genus)
        })?,
        Engine::Seq => {
            if max_darts > SEQ_MAX_DARTS {
                return Err(Failure::Usage(format!(
                    "the seq engine is capped at {SEQ_MAX_DARTS} darts; use --engine kz for --max-darts {max_darts}"
                )));
            }
            cached(cache.as_ref(), EngineId::Seq, genus, max_darts, || {
                SeqEngine::new().to_table(genus, max_darts)
            })?
        }
    };
    emit(&table, genus, max_darts, Counting::Rooted, format);
    Ok(())
}

fn cmd_unrooted(genus: u32, max_darts: u32, format: Format, cache: Option<Cache>) -> CmdResult {
    let table = cached(cache.as_ref(), EngineId::Orbifold, genus, max_darts, || {
        sensed_table(&KzTable::fill(genus, max_darts)?, genus, max_darts)
    })?;
    emit(&table, genus, max_darts, Counting::Unrooted, format);
    Ok(())
}

fn cmd_series(genus: u32, max_darts: u32, param: Param, trivariate: bool, format: Format) -> CmdResult {
    if trivariate {
        if param != Param::Tau {
            return Err(Failure::Usage("--param only applies to the univariate form".into()));
        }
        // Darts t correspond to total degree t + 2 - 2g.
        let degree = (max_darts + 2).saturating_sub(2 * genus);
        let table = series::trivariate_table(genus, &series::hg_trivariate(genus, degree)?)?;
        emit(&table, genus, max_darts, Counting::Rooted, format);
        return Ok(());
    }
    let expansion = match param {
        Param::Tau => series::hg_univariate(genus, max_darts as usize)?,
        Param::T => series::hg_via_t(genus, max_darts as usize)?,
    };
    let coeffs = expansion.to_naturals("series output")?;
    match format {
        Format::Table => print!("{}", text::render_series_table(&coeffs)),
        Format::Json => println!("{}", text::render_series_json(genus, &coeffs)),
    }
    Ok(())
}

fn cmd_crosscheck(genus: Option<u32>, max_darts: Option<u32>, deep: bool, series_only: bool) -> CmdResult {
    let max_genus = genus.unwrap_or(if deep { 10 } else { SEQ_CHECK_GENUS });
    let max_darts = max_darts.unwrap_or(if deep { 30 } else { SEQ_CHECK_DARTS });
    if max_darts == 0 {
        return Err(Failure::Usage("--max-darts must be at least 1".into()));
    }
    let seq_bounds = if series_only {
        None
    } else {
        let bounds = (max_genus.min(SEQ_CHECK_GENUS), max_darts.min(SEQ_CHECK_DARTS));
        if bounds != (max_genus, max_darts) {
            eprintln!(
                "warning: seq checks capped at genus {} and {} darts",
                bounds.0, bounds.1
            );
        }
        Some(bounds)
    };
    if max_genus > MAX_UNIVARIATE_GENUS {
        eprintln!("warning: series checks capped at genus {MAX_UNIVARIATE_GENUS}");
    }
    let plan = Crosscheck {
        max_genus,
        max_darts,
        seq_bounds,
        max_distinguished: 2,
        trivariate_degree: Some(TRIVARIATE_CHECK_DEGREE.min(max_darts + 2 * max_genus.min(MAX_TRIVARIATE_GENUS))),
        tau_t_order: (max_darts as usize).max(20),
        invariants: !series_only,
    };
    let reports = plan.run(|report| println!("{report}"))?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        println!("{failed} of {} checks failed", reports.len());
        return Err(Failure::Verification);
    }
    println!("all {} checks passed", reports.len());
    Ok(())
}

fn cmd_cache_info() -> CmdResult {
    let cache = Cache::from_env();
    println!("cache directory: {}", cache.dir().display());
    println!("format version: {}", hypercount::cache::FORMAT_VERSION);
    let entries = cache.entries()?;
    if entries.is_empty() {
        println!("no cached tables");
    }
    for entry in entries {
        println!(
            "{}  engine {} genus {} max-darts {} rows {}",
            entry.path.display(),
            entry.meta.engine,
            entry.meta.max_genus,
            entry.meta.max_darts,
            entry.rows
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
