//! Acceptance gate: one line per criterion. Tolerances are exact
//! throughout; time limits are wall-clock on the current machine.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rickard_cli::config::{Bounds, Format, SuiteConfig, SuiteId};
use rickard_cli::report::{Record, Report};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn cfg(suites: &[SuiteId]) -> SuiteConfig {
    SuiteConfig { suites: suites.to_vec(), format: Format::Json, ..SuiteConfig::default() }
}

fn run(suites: &[SuiteId]) -> (Report, Duration) {
    let start = Instant::now();
    let r = rickard_cli::run(&cfg(suites)).expect("valid config");
    (r, start.elapsed())
}

fn failed(r: &Report) -> Vec<&Record> {
    r.records.iter().filter(|x| !x.passed()).collect()
}

fn by_check<'a>(r: &'a Report, check: &str) -> Vec<&'a Record> {
    r.records.iter().filter(|x| x.check == check).collect()
}

fn base(r: &Report, t: Duration, limit: u64) -> (bool, String) {
    let bad = failed(r);
    let mut ok = bad.is_empty() && t.as_secs() < limit;
    let mut d = format!("{} records, {} failed, {:.1}s (limit {limit}s)", r.records.len(), bad.len(), t.as_secs_f64());
    if let Some(b) = bad.first() {
        d += &format!("; first failure {} {}: {:?}", b.check, b.params, b.witnesses.first());
    }
    if r.records.is_empty() {
        ok = false;
    }
    (ok, d)
}

fn c1() -> Outcome {
    let (r, t) = run(&[SuiteId::Cartan]);
    let (mut ok, mut detail) = base(&r, t, 60);
    let mods = by_check(&r, "quantum-group-relations").len();
    ok &= mods == 10;
    detail += &format!("; {mods} modules with relations checked");
    Outcome { ok, detail }
}

fn c2() -> Outcome {
    let (r, t) = run(&[SuiteId::Braid]);
    let (mut ok, mut detail) = base(&r, t, 120);
    let pairs: usize = r.records.iter().filter_map(|x| x.data.get("pairs")?.parse::<usize>().ok()).sum();
    ok &= pairs > 0;
    detail += &format!("; {pairs} word pairs");
    Outcome { ok, detail }
}

fn c3() -> Outcome {
    let (r, t) = run(&[SuiteId::W0Chevalley]);
    let (mut ok, mut detail) = base(&r, t, 60);
    let g = by_check(&r, "w0-chevalley-global");
    let eps = g.first().and_then(|x| x.data.get("epsilon")).cloned().unwrap_or_default();
    ok &= eps == "1" || eps == "-1";
    detail += &format!("; global epsilon {eps}");
    Outcome { ok, detail }
}

fn c4() -> Outcome {
    let (r, t) = run(&[SuiteId::MarkedWords]);
    let (mut ok, mut detail) = base(&r, t, 120);
    let pairs = by_check(&r, "marked-words-coverage")
        .first()
        .and_then(|x| x.data.get("connected_pairs_nonzero")?.parse::<usize>().ok())
        .unwrap_or(0);
    let moves: usize = by_check(&r, "mark-move-shifts").iter().map(|x| x.checked).sum();
    ok &= pairs >= 50 && moves > 0;
    detail += &format!("; {pairs} nontrivial pairs, {moves} move shifts in {{0,±1}}");
    Outcome { ok, detail }
}

fn c5() -> Outcome {
    let (r, t) = run(&[SuiteId::FullTwist]);
    let (mut ok, mut detail) = base(&r, t, 120);
    let n = by_check(&r, "full-twist").len();
    ok &= n == 10;
    detail += &format!("; {n} modules");
    Outcome { ok, detail }
}

fn c6() -> Outcome {
    let (r, t) = run(&[SuiteId::CrystalAxioms]);
    let (mut ok, mut detail) = base(&r, t, 120);
    let n = by_check(&r, "crystal").len();
    ok &= n > 0;
    detail += &format!("; {n} crystals match the Weyl dimension");
    Outcome { ok, detail }
}

fn c7() -> Outcome {
    let (r, t) = run(&[SuiteId::Cactus]);
    let (ok, detail) = base(&r, t, 300);
    Outcome { ok, detail }
}

fn c8() -> Outcome {
    let (r, t) = run(&[SuiteId::SchutzenbergerAgree]);
    let (ok, detail) = base(&r, t, 60);
    Outcome { ok, detail }
}

fn c9() -> Outcome {
    let (r, t) = run(&[SuiteId::Kl, SuiteId::EvacuationTheorem, SuiteId::PromotionTheorem]);
    let (mut ok, mut detail) = base(&r, t, 120);
    let rects = by_check(&r, "promotion-theorem").len();
    let controls = by_check(&r, "promotion-negative-control").len();
    ok &= rects == 3 && controls >= 1 && Bounds::default().max_sn == 5;
    detail += &format!("; {rects} rectangles, {controls} negative controls");
    Outcome { ok, detail }
}

fn c10() -> Outcome {
    let (r, t) = run(&[SuiteId::Zigzag]);
    let (mut ok, mut detail) = base(&r, t, 300);
    let data = by_check(&r, "zigzag-texactness").len();
    let a1 = by_check(&r, "zigzag-rank-one").len();
    ok &= data == 4 && a1 == 1;
    detail += &format!("; {data} data, A1 example checked");
    Outcome { ok, detail }
}

fn c11() -> Outcome {
    let a = rickard_cli::run(&SuiteConfig::default()).expect("valid").render(Format::Json);
    let b = rickard_cli::run(&SuiteConfig::default()).expect("valid").render(Format::Json);
    Outcome { ok: a == b && !a.is_empty(), detail: format!("{} bytes, identical: {}", a.len(), a == b) }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("quantum group relations on all modules, exact", c1),
        ("braid relations for reduced words of w0, exact", c2),
        ("w0 Chevalley commutation with one global epsilon, exact", c3),
        ("marked-word ratios (-1)^k q^k, >= 50 pairs, exact", c4),
        ("full twist scalars, signs, recursion and E identity, exact", c5),
        ("crystal sizes vs Weyl dimension and axioms", c6),
        ("cactus relations on every crystal", c7),
        ("crystal and tableau Schutzenberger actions agree", c8),
        ("KL cells: evacuation and promotion, negative control", c9),
        ("zigzag t-exactness and psi twist, exact", c10),
        ("byte-identical reports across two runs", c11),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        all &= o.ok;
        println!("criterion {:>2} {}: {name}: {}", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
