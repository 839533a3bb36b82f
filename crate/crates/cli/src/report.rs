//! Report assembly and rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rickard::CheckReport;
use serde::Serialize;

use crate::config::{Format, SuiteConfig, SuiteId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub suite: SuiteId,
    pub task: String,
    pub check: String,
    pub params: String,
    pub status: Status,
    pub checked: usize,
    pub nontrivial: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl Record {
    pub fn from_check(suite: SuiteId, task: &str, r: CheckReport, millis: Option<u128>) -> Self {
        Self {
            suite,
            task: task.to_string(),
            check: r.identity,
            params: r.params,
            status: if r.failed == 0 { Status::Pass } else { Status::Fail },
            checked: r.checked,
            nontrivial: r.nontrivial,
            failed: r.failed,
            witnesses: r.failures,
            data: r.data,
            millis,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub checked: usize,
    pub nontrivial: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub records: Vec<Record>,
    /// Conventions and tables resolved during the run, keyed by record.
    pub conventions: BTreeMap<String, String>,
    pub summary: Summary,
}

const CONVENTION_KEYS: [&str; 11] = [
    "epsilon",
    "reference_epsilon",
    "signs",
    "direction",
    "shift",
    "closed_form_matching",
    "exponents",
    "mark_table",
    "order",
    "f_unshifted_failures",
    "cn_power_n_is_diagonal_sign",
];

impl Report {
    pub fn new(config: SuiteConfig, records: Vec<Record>) -> Self {
        let mut conventions = BTreeMap::new();
        let mut summary = Summary::default();
        for r in &records {
            summary.records += 1;
            summary.checked += r.checked;
            summary.nontrivial += r.nontrivial;
            if r.passed() {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
            for (k, v) in &r.data {
                let leaf = k.rsplit('.').next().unwrap_or(k);
                if CONVENTION_KEYS.contains(&leaf) {
                    conventions.insert(format!("{} {} [{}] {k}", r.suite, r.check, r.params), v.clone());
                }
            }
        }
        Self { config, records, conventions, summary }
    }

    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Tsv => self.to_tsv(),
            Format::Text | Format::Dot => self.to_text(),
        }
    }

    fn to_tsv(&self) -> String {
        let mut s = String::from("suite\tcheck\tparams\tstatus\tchecked\tnontrivial\tfailed\tfirst_witness\n");
        for r in &self.records {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.suite,
                r.check,
                r.params,
                if r.passed() { "pass" } else { "fail" },
                r.checked,
                r.nontrivial,
                r.failed,
                r.witnesses.first().map_or("", |w| w.as_str()).replace(['\t', '\n'], " ")
            );
        }
        s
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let _ = write!(
                s,
                "[{}] {} {} ({}): {} checked, {} nontrivial, {} failed",
                if r.passed() { "PASS" } else { "FAIL" },
                r.suite,
                r.check,
                r.params,
                r.checked,
                r.nontrivial,
                r.failed
            );
            if let Some(ms) = r.millis {
                let _ = write!(s, ", {ms} ms");
            }
            s.push('\n');
            for w in &r.witnesses {
                let _ = writeln!(s, "    ! {w}");
            }
        }
        if !self.conventions.is_empty() {
            s.push_str("conventions:\n");
            for (k, v) in &self.conventions {
                let _ = writeln!(s, "  {k} = {v}");
            }
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "summary: {} records, {} passed, {} failed; {} instances, {} nontrivial",
            m.records, m.passed, m.failed, m.checked, m.nontrivial
        );
        s
    }
}
