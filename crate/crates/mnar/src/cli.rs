use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use crate::closed::{count_frequent, mine_closed, resolve_minsup, MinsupSpec};
use crate::corpus::{TransactionDatabase, VerticalIndex};
use crate::error::{Error, Result};
use crate::format::{self, OutputFormat};
use crate::itemset::Itemset;
use crate::lattice::{build_lattice, Lattice};
use crate::mingen::minimal_generators;
use crate::oracle;
use crate::rulegen::{mine_mnar, MinconfSpec, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Mine rules and print them in the selected format.
    Mine,
    /// Print the closed-pattern lattice as a table.
    Lattice,
    /// Print frequent and closed itemset counts.
    Stats,
    /// Run the pipeline repeatedly and print stage timings.
    Bench,
}

/// Everything one invocation needs, independent of flag spelling.
pub struct RunConfig {
    pub mode: Mode,
    pub input: PathBuf,
    pub minsup: MinsupSpec,
    /// Required by `Mine` and `Bench`, ignored by the other modes.
    pub minconf: Option<MinconfSpec>,
    pub format: OutputFormat,
    /// Target for the primary output; `None` means the `out` writer
    /// passed to `run` (stdout in the binary).
    pub output: Option<PathBuf>,
    /// Cross-check mined rules against the brute-force reference.
    pub verify: bool,
    /// Pipeline repetitions in `Bench` mode.
    pub repeat: u32,
}

/// Executes one invocation. Primary output goes to `config.output` if
/// set, otherwise to `out`; progress and summaries go to `diag`.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    match &config.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            dispatch(config, &mut file, diag)?;
            file.flush()?;
            Ok(())
        }
        None => dispatch(config, out, diag),
    }
}

fn dispatch(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    match config.mode {
        Mode::Mine => cmd_mine(config, out, diag),
        Mode::Lattice => cmd_lattice(config, out, diag),
        Mode::Stats => cmd_stats(config, out, diag),
        Mode::Bench => cmd_bench(config, out, diag),
    }
}

/// Pipeline stages shared by mine and bench: patterns with their
/// generators, then the lattice, then the rules.
struct Stages {
    lattice: Lattice,
    rules: Vec<Rule>,
    mine_time: Duration,
    lattice_time: Duration,
    rules_time: Duration,
}

fn run_stages(db: &TransactionDatabase, minsup: u32, minconf: &MinconfSpec) -> Stages {
    let t0 = Instant::now();
    let patterns = mine_closed(db, minsup);
    let index = VerticalIndex::build(db);
    let mgs = minimal_generators(&patterns, &index);
    let mine_time = t0.elapsed();

    let t1 = Instant::now();
    let lattice = build_lattice(patterns, mgs, db.tid_count());
    let lattice_time = t1.elapsed();

    let t2 = Instant::now();
    let rules = mine_mnar(&lattice, minconf);
    let rules_time = t2.elapsed();

    Stages { lattice, rules, mine_time, lattice_time, rules_time }
}

fn require_minconf(config: &RunConfig) -> Result<&MinconfSpec> {
    config
        .minconf
        .as_ref()
        .ok_or_else(|| Error::Config("minconf is required for this mode".into()))
}

/// Absolute threshold for this database, floored at 1 so degenerate
/// fractions of tiny databases still mean "at least one transaction".
fn absolute_minsup(config: &RunConfig, db: &TransactionDatabase) -> Result<u32> {
    Ok(resolve_minsup(&config.minsup, db.tid_count())?.max(1))
}

fn cmd_mine(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    let minconf = require_minconf(config)?;
    let db = TransactionDatabase::from_path(&config.input)?;
    let minsup = absolute_minsup(config, &db)?;
    let stages = run_stages(&db, minsup, minconf);
    if config.verify {
        verify_against_reference(&db, minsup, minconf, &stages.lattice, &stages.rules, diag)?;
    }
    match config.format {
        OutputFormat::Text => format::write_text(out, &stages.rules, &db)?,
        OutputFormat::Csv => format::write_csv(out, &stages.rules, &db)?,
        OutputFormat::Json => format::write_json(out, &stages.rules, &db)?,
    }
    let generators: usize = stages.lattice.nodes().iter().map(|n| n.mgs.len()).sum();
    writeln!(diag, "mine_fci: {:.3}s", stages.mine_time.as_secs_f64())?;
    writeln!(diag, "build_lattice: {:.3}s", stages.lattice_time.as_secs_f64())?;
    writeln!(diag, "generate_rules: {:.3}s", stages.rules_time.as_secs_f64())?;
    writeln!(
        diag,
        "FCI={} mGs={} MNAR={}",
        stages.lattice.pattern_count(),
        generators,
        stages.rules.len()
    )?;
    Ok(())
}

/// Compares the pipeline output against the exhaustive reference, or
/// notes the skip when the item universe is past the enumeration cap.
fn verify_against_reference(
    db: &TransactionDatabase,
    minsup: u32,
    minconf: &MinconfSpec,
    lattice: &Lattice,
    rules: &[Rule],
    diag: &mut dyn Write,
) -> Result<()> {
    if db.item_count() > oracle::MAX_ITEMS {
        writeln!(
            diag,
            "verify: skipped ({} items exceed the {}-item reference cap)",
            db.item_count(),
            oracle::MAX_ITEMS
        )?;
        return Ok(());
    }
    let want_closed: Vec<(Itemset, u32)> = oracle::brute_force_closed(db, minsup)?
        .into_iter()
        .map(|p| (p.itemset, p.support))
        .collect();
    let got_closed: Vec<(Itemset, u32)> = lattice
        .nodes()
        .iter()
        .skip(1)
        .map(|n| (n.itemset.clone(), n.support))
        .collect();
    if got_closed != want_closed {
        return Err(Error::VerifyMismatch(format!(
            "closed patterns differ: mined {} vs reference {}",
            got_closed.len(),
            want_closed.len()
        )));
    }
    let want_rules = oracle::brute_force_mnar(db, minsup, minconf.ratio())?;
    if rules != want_rules {
        return Err(Error::VerifyMismatch(format!(
            "rules differ: mined {} vs reference {}",
            rules.len(),
            want_rules.len()
        )));
    }
    writeln!(
        diag,
        "verify: ok ({} patterns, {} rules match the reference)",
        want_closed.len(),
        want_rules.len()
    )?;
    Ok(())
}

/// One row per node: itemset, support, generators, child ids. The root
/// renders as `{}` with no generators.
fn cmd_lattice(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    let db = TransactionDatabase::from_path(&config.input)?;
    let minsup = absolute_minsup(config, &db)?;
    let t0 = Instant::now();
    let patterns = mine_closed(&db, minsup);
    let index = VerticalIndex::build(&db);
    let mgs = minimal_generators(&patterns, &index);
    let lattice = build_lattice(patterns, mgs, db.tid_count());
    let elapsed = t0.elapsed();

    for node in lattice.nodes() {
        let itemset = if node.itemset.is_empty() {
            "{}".to_string()
        } else {
            db.labels_of(&node.itemset).join(" ")
        };
        let gens = if node.mgs.is_empty() {
            "-".to_string()
        } else {
            node.mgs
                .iter()
                .map(|g| db.labels_of(g).join(" "))
                .collect::<Vec<_>>()
                .join(";")
        };
        let children = if node.children.is_empty() {
            "-".to_string()
        } else {
            node.children
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(out, "{itemset}\t{}\t{gens}\t{children}", node.support)?;
    }
    writeln!(diag, "build: {:.3}s", elapsed.as_secs_f64())?;
    writeln!(diag, "FCI={}", lattice.pattern_count())?;
    Ok(())
}

fn cmd_stats(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    let db = TransactionDatabase::from_path(&config.input)?;
    let minsup = absolute_minsup(config, &db)?;
    let t0 = Instant::now();
    let fi = count_frequent(&db, minsup);
    let fci = mine_closed(&db, minsup).len();
    let elapsed = t0.elapsed();
    let ratio = if fci == 0 { 0.0 } else { fi as f64 / fci as f64 };
    writeln!(out, "FI={fi} FCI={fci} ratio={ratio:.2}")?;
    writeln!(diag, "count: {:.3}s", elapsed.as_secs_f64())?;
    Ok(())
}

/// Repeats the pipeline and reports per-stage medians as a TSV table,
/// plus the (repetition-invariant) rule count.
fn cmd_bench(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    let minconf = require_minconf(config)?;
    if config.repeat < 1 {
        return Err(Error::Config("repeat must be at least 1".into()));
    }
    let db = TransactionDatabase::from_path(&config.input)?;
    let minsup = absolute_minsup(config, &db)?;
    let mut mine_times = Vec::new();
    let mut lattice_times = Vec::new();
    let mut rule_times = Vec::new();
    let mut rule_count: Option<usize> = None;
    for _ in 0..config.repeat {
        let stages = run_stages(&db, minsup, minconf);
        mine_times.push(stages.mine_time);
        lattice_times.push(stages.lattice_time);
        rule_times.push(stages.rules_time);
        match rule_count {
            None => rule_count = Some(stages.rules.len()),
            Some(n) => debug_assert_eq!(n, stages.rules.len(), "rule count drifted"),
        }
    }
    writeln!(out, "stage\tmedian_s")?;
    writeln!(out, "mine_fci\t{:.6}", median_secs(&mut mine_times))?;
    writeln!(out, "build_lattice\t{:.6}", median_secs(&mut lattice_times))?;
    writeln!(out, "generate_rules\t{:.6}", median_secs(&mut rule_times))?;
    writeln!(out, "rules\t{}", rule_count.unwrap_or(0))?;
    writeln!(diag, "bench: {} repetitions", config.repeat)?;
    Ok(())
}

fn median_secs(times: &mut [Duration]) -> f64 {
    times.sort_unstable();
    let n = times.len();
    if n % 2 == 1 {
        times[n / 2].as_secs_f64()
    } else {
        (times[n / 2 - 1].as_secs_f64() + times[n / 2].as_secs_f64()) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_sample() -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(crate::testutil::SAMPLE.as_bytes()).unwrap();
        f
    }

    fn config(mode: Mode, input: PathBuf) -> RunConfig {
        RunConfig {
            mode,
            input,
            minsup: MinsupSpec::parse("3t").unwrap(),
            minconf: Some(MinconfSpec::parse("0.8").unwrap()),
            format: OutputFormat::Text,
            output: None,
            verify: false,
            repeat: 2,
        }
    }

    fn run_to_strings(config: &RunConfig) -> Result<(String, String)> {
        let mut out = Vec::new();
        let mut diag = Vec::new();
        run(config, &mut out, &mut diag)?;
        Ok((
            String::from_utf8(out).unwrap(),
            String::from_utf8(diag).unwrap(),
        ))
    }

    #[test]
    fn mine_prints_rules_and_summary() {
        let f = write_sample();
        let cfg = config(Mode::Mine, f.path().to_path_buf());
        let (out, diag) = run_to_strings(&cfg).unwrap();
        assert_eq!(out.lines().count(), 9);
        assert!(out.starts_with("W => C #SUP: 5 #CONF: 5/5 (1.0000)\n"));
        assert!(diag.contains("FCI=7 mGs=8 MNAR=9"));
    }

    #[test]
    fn mine_with_verification_passes_on_sample() {
        let f = write_sample();
        let mut cfg = config(Mode::Mine, f.path().to_path_buf());
        cfg.verify = true;
        let (_, diag) = run_to_strings(&cfg).unwrap();
        assert!(diag.contains("verify: ok"), "diag was: {diag}");
    }

    #[test]
    fn mine_to_output_file() {
        let f = write_sample();
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("rules.csv");
        let mut cfg = config(Mode::Mine, f.path().to_path_buf());
        cfg.format = OutputFormat::Csv;
        cfg.output = Some(target.clone());
        let (out, _) = run_to_strings(&cfg).unwrap();
        assert!(out.is_empty());
        let records = format::read_csv(File::open(target).unwrap()).unwrap();
        assert_eq!(records.len(), 9);
    }

    #[test]
    fn lattice_table_shape() {
        let f = write_sample();
        let mut cfg = config(Mode::Lattice, f.path().to_path_buf());
        cfg.minconf = None;
        let (out, diag) = run_to_strings(&cfg).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 8);
        assert_eq!(lines[0], "{}\t6\t-\t1");
        assert_eq!(lines[1], "C\t6\tC\t2,4,5");
        assert_eq!(lines[6], "A C T W\t3\tA T;T W\t-");
        assert!(diag.contains("FCI=7"));
    }

    #[test]
    fn stats_line() {
        let f = write_sample();
        let mut cfg = config(Mode::Stats, f.path().to_path_buf());
        cfg.minconf = None;
        let (out, _) = run_to_strings(&cfg).unwrap();
        assert_eq!(out, "FI=19 FCI=7 ratio=2.71\n");
    }

    #[test]
    fn bench_table_is_parseable() {
        let f = write_sample();
        let cfg = config(Mode::Bench, f.path().to_path_buf());
        let (out, _) = run_to_strings(&cfg).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "stage\tmedian_s");
        for line in &lines[1..4] {
            let (stage, value) = line.split_once('\t').unwrap();
            assert!(["mine_fci", "build_lattice", "generate_rules"].contains(&stage));
            assert!(value.parse::<f64>().unwrap() >= 0.0);
        }
        assert_eq!(lines[4], "rules\t9");
    }

    #[test]
    fn missing_minconf_is_a_config_error() {
        let f = write_sample();
        let mut cfg = config(Mode::Mine, f.path().to_path_buf());
        cfg.minconf = None;
        assert!(matches!(run_to_strings(&cfg), Err(Error::Config(_))));
    }

    #[test]
    fn missing_input_is_an_io_error() {
        let cfg = config(Mode::Mine, PathBuf::from("/no/such/file.dat"));
        let err = run_to_strings(&cfg).unwrap_err();
        assert!(matches!(err, Error::Io(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn empty_input_mines_zero_rules() {
        let f = tempfile::NamedTempFile::new().unwrap();
        let mut cfg = config(Mode::Mine, f.path().to_path_buf());
        cfg.minsup = MinsupSpec::parse("0.5").unwrap();
        let (out, diag) = run_to_strings(&cfg).unwrap();
        assert!(out.is_empty());
        assert!(diag.contains("FCI=0 mGs=0 MNAR=0"));
    }

    #[test]
    fn verify_skips_past_the_reference_cap() {
        // 13 distinct items is one over the enumeration limit.
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "a b c d e f g h i j k l m").unwrap();
        let mut cfg = config(Mode::Mine, f.path().to_path_buf());
        cfg.minsup = MinsupSpec::parse("1t").unwrap();
        cfg.verify = true;
        let (_, diag) = run_to_strings(&cfg).unwrap();
        assert!(diag.contains("verify: skipped"), "diag was: {diag}");
    }
}
