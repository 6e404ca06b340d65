//! The acceptance suite: one line per criterion, each with a runtime limit.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use common::criteria::{self, Outcome};
use shpoisson_cli::dsl;

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "shp"))
        .collect();
    files.sort();
    files
}

fn corpus_file(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name).display().to_string()
}

fn invoke(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_shpoisson"))
        .args(args)
        .env_remove("SHPOISSON_WINDOW")
        .output()
        .map_err(|e| format!("cannot run the binary: {e}"))?;
    let code = out.status.code().ok_or("terminated by a signal")?;
    Ok((code, out.stdout))
}

fn cli_contract() -> Outcome {
    let files = corpus();
    if files.len() < 5 {
        return Err(format!("corpus has only {} files", files.len()));
    }
    for f in &files {
        let src = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let first = dsl::parse(&src).map_err(|e| format!("{}: {e}", f.display()))?;
        let text = dsl::serialize(&first);
        let second = dsl::parse(&text).map_err(|e| format!("{} reprinted: {e}", f.display()))?;
        if first != second {
            return Err(format!("{}: parse(serialize(m)) differs from m", f.display()));
        }
        if dsl::serialize(&second) != text {
            return Err(format!("{}: printing is not stable", f.display()));
        }
    }

    let pass = corpus_file("plane_poisson.shp");
    let fail = corpus_file("failing_mc.shp");
    let open = corpus_file("beyond_bound.shp");
    let cases: [(&[&str], i32); 3] =
        [(&["--json", "check-poisson", &pass], 0), (&["--json", "mc", &fail], 1), (&["--json", "mc", &open], 3)];
    for (args, expected) in cases {
        let (code, first) = invoke(args)?;
        if code != expected {
            return Err(format!("{args:?} exited {code}, expected {expected}"));
        }
        let (_, again) = invoke(args)?;
        if first != again {
            return Err(format!("{args:?} printed different JSON on a second run"));
        }
        let doc: serde_json::Value = serde_json::from_slice(&first).map_err(|e| format!("{args:?}: {e}"))?;
        if doc["exit_code"] != expected || doc["schema_version"] != 1 {
            return Err(format!("{args:?}: document disagrees with the exit status"));
        }
    }
    Ok(format!("{} corpus files round trip; exit codes 0, 1, 3 with byte-identical JSON", files.len()))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { number: 1, title: "structural identities", limit: Some(Duration::from_secs(10)), run: criteria::structural_identities },
    Criterion { number: 2, title: "realization oracle", limit: Some(Duration::from_secs(5)), run: criteria::realization_matches_cell_model },
    Criterion { number: 3, title: "Lie round trip", limit: Some(Duration::from_secs(5)), run: criteria::lie_round_trip },
    Criterion { number: 4, title: "invariant dimensions", limit: Some(Duration::from_secs(2)), run: criteria::invariant_dimensions },
    Criterion { number: 5, title: "Poisson-symplectic round trip", limit: Some(Duration::from_secs(5)), run: criteria::poisson_symplectic_round_trip },
    Criterion { number: 6, title: "Darboux core", limit: Some(Duration::from_secs(5)), run: criteria::darboux_core },
    Criterion { number: 7, title: "Koszul towers", limit: Some(Duration::from_secs(2)), run: criteria::koszul_claims },
    Criterion { number: 8, title: "operad layer", limit: Some(Duration::from_secs(10)), run: criteria::operad_layer },
    Criterion { number: 9, title: "Tate realization", limit: Some(Duration::from_secs(2)), run: criteria::tate_comparison },
    Criterion { number: 10, title: "command line", limit: None, run: cli_contract },
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let limit = c.limit;
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match (&result, limit) {
            (Err(e), _) => Err(e.clone()),
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (Ok(summary), _) => Ok(summary.clone()),
        };
        let budget = limit.map_or("no limit".to_string(), |l| format!("limit {l:?}"));
        match verdict {
            Ok(summary) => println!("PASS {:>2} {} ({elapsed:.2?}, {budget}): {summary}", c.number, c.title),
            Err(why) => {
                println!("FAIL {:>2} {} ({elapsed:.2?}, {budget}): {why}", c.number, c.title);
                failures.push(c.number);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
