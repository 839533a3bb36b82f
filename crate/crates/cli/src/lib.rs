//! Batch driver for the rickard verification engines.

pub mod config;
pub mod emit;
pub mod report;
pub mod suites;

use std::time::Instant;

use rayon::prelude::*;
use rickard::CheckReport;

use config::{SuiteConfig, SuiteId};
use report::{Record, Report};

/// Minimum number of nontrivial connected marked-word pairs per run.
pub const MIN_MARKED_PAIRS: usize = 50;

/// Runs the selected suites on a pool of `cfg.jobs` threads (0 = all
/// cores) and assembles the report in task order.
pub fn run(cfg: &SuiteConfig) -> Result<Report, String> {
    cfg.validate()?;
    let tasks = suites::tasks(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| e.to_string())?;
    let timings = cfg.timings;
    let results: Vec<(SuiteId, String, Vec<CheckReport>, u128)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let start = Instant::now();
                let reps = (t.run)();
                (t.suite, t.label.clone(), reps, start.elapsed().as_millis())
            })
            .collect()
    });
    let mut records = Vec::new();
    for (suite, label, reps, ms) in results {
        for r in reps {
            records.push(Record::from_check(suite, &label, r, timings.then_some(ms)));
        }
    }
    finalize(cfg, &mut records);
    Ok(Report::new(cfg.clone(), records))
}

/// Checks that span several tasks: one ε for every module and the
/// marked-word pair count.
fn finalize(cfg: &SuiteConfig, records: &mut Vec<Record>) {
    if cfg.suites.contains(&SuiteId::W0Chevalley) {
        let mut rep = CheckReport::new("w0-chevalley-global", "all modules");
        let mut seen = std::collections::BTreeSet::new();
        for r in records.iter().filter(|r| r.check == "w0-chevalley") {
            let e = r.data.get("epsilon").cloned().unwrap_or_else(|| "unresolved".into());
            rep.record(e != "unresolved", true, || format!("{}: epsilon unresolved", r.params));
            seen.insert(e);
        }
        seen.remove("unresolved");
        if seen.len() > 1 {
            rep.fail(format!("modules disagree on epsilon: {seen:?}"));
        }
        rep.note("epsilon", seen.iter().cloned().collect::<Vec<_>>().join(","));
        rep.note("reference_epsilon", -1);
        records.push(Record::from_check(SuiteId::W0Chevalley, "global", rep, None));
    }
    if cfg.suites.contains(&SuiteId::MarkedWords) && cfg.k.is_none() && cfg.n.is_none() {
        let mut rep = CheckReport::new("marked-words-coverage", format!(">= {MIN_MARKED_PAIRS} nontrivial pairs"));
        let total: usize = records
            .iter()
            .filter_map(|r| r.data.get("connected_pairs_nonzero"))
            .filter_map(|v| v.parse::<usize>().ok())
            .sum();
        rep.record(total >= MIN_MARKED_PAIRS, true, || format!("only {total} nontrivial pairs"));
        rep.note("connected_pairs_nonzero", total);
        records.push(Record::from_check(SuiteId::MarkedWords, "global", rep, None));
    }
}
