//! Suite definitions. Each suite expands into independent tasks returning
//! check reports; results are reassembled in task order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rickard::cartan::verify_datum;
use rickard::crystal::{crystal_from_highest, dominant_weights_within, verify_cactus_relations};
use rickard::hecke::{
    cell_module, cycle_type, kl_polynomials, long_cycle_is_signed_permutation, specht_character,
    verify_evacuation_theorem, verify_left_cells, verify_promotion_theorem, KLTable,
};
use rickard::markedword::{self, MarkedWord};
use rickard::qrep::{
    derive_mark_table, extremal_transport_check, marked_ratio_check, verify_braid,
    verify_cautis_relations, verify_full_twist, verify_rickard_normalization, verify_w0_chevalley,
    weight_vanishing_check,
};
use rickard::qrep::{build_tensor_module, Chevalley, Convention, WeightModule};
use rickard::tableaux::{
    evacuation, promotion, promotion_order, rsk, rsk_inverse, syt_enumerate, verify_evacuation_bridge,
    verify_promotion_factorization, Partition,
};
use rickard::zigzag::{
    apply_and_cohomology, build_zigzag, theta_word, verify_minimization, verify_texactness, Module,
};
use rickard::{build_cartan, CartanDatum, CartanType, CheckReport, Weight};

use crate::config::{SuiteConfig, SuiteId};

/// The convention all suites evaluate in; `w0-chevalley` re-derives it.
pub const RESOLVED: Convention = Convention { epsilon: 1 };

pub type TaskFn = Box<dyn Fn() -> Vec<CheckReport> + Send + Sync>;

pub struct Task {
    pub suite: SuiteId,
    pub label: String,
    pub run: TaskFn,
}

fn task(suite: SuiteId, label: impl Into<String>, f: impl Fn() -> rickard::Result<Vec<CheckReport>> + Send + Sync + 'static) -> Task {
    let label = label.into();
    let l2 = label.clone();
    Task {
        suite,
        label,
        run: Box::new(move || match f() {
            Ok(r) => r,
            Err(e) => {
                let mut rep = CheckReport::new(suite.name(), l2.clone());
                rep.fail(format!("error: {e}"));
                vec![rep]
            }
        }),
    }
}

fn default_data() -> Vec<(CartanType, usize)> {
    vec![(CartanType::A, 1), (CartanType::A, 2), (CartanType::A, 3), (CartanType::A, 4), (CartanType::D, 4)]
}

fn data(cfg: &SuiteConfig) -> Vec<(CartanType, usize)> {
    cfg.datum.map_or_else(default_data, |d| vec![d])
}

fn default_modules() -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = [2, 3, 4].iter().flat_map(|&k| (1..=3).map(move |n| (k, n))).collect();
    v.push((2, 4));
    v
}

fn modules(cfg: &SuiteConfig, default: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    match (cfg.k, cfg.n) {
        (Some(k), Some(n)) => vec![(k, n)],
        (Some(k), None) => default.into_iter().filter(|m| m.0 == k).collect(),
        (None, Some(n)) => default.into_iter().filter(|m| m.1 == n).collect(),
        (None, None) => default,
    }
}

fn build_module(k: usize, n: usize, max_basis: usize) -> rickard::Result<WeightModule> {
    build_tensor_module(k, n, max_basis)
}

fn weights(cfg: &SuiteConfig, d: &CartanDatum, max_dim: usize) -> Vec<Weight> {
    match &cfg.weight {
        Some(w) => vec![w.clone()],
        None => dominant_weights_within(d, max_dim),
    }
}

/// Expands the selected suites into tasks, in canonical order.
pub fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let mut out = Vec::new();
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    for s in suites {
        match s {
            SuiteId::Cartan => cartan_tasks(cfg, &mut out),
            SuiteId::Braid => braid_tasks(cfg, &mut out),
            SuiteId::W0Chevalley => w0_tasks(cfg, &mut out),
            SuiteId::Cautis => cautis_tasks(cfg, &mut out),
            SuiteId::MarkedWords => marked_tasks(cfg, &mut out),
            SuiteId::FullTwist => twist_tasks(cfg, &mut out),
            SuiteId::CrystalAxioms => crystal_tasks(cfg, &mut out, false),
            SuiteId::Cactus => crystal_tasks(cfg, &mut out, true),
            SuiteId::SchutzenbergerAgree => agree_tasks(cfg, &mut out),
            SuiteId::Tableaux => tableaux_tasks(cfg, &mut out),
            SuiteId::Kl => kl_tasks(cfg, &mut out),
            SuiteId::EvacuationTheorem => evac_tasks(cfg, &mut out),
            SuiteId::PromotionTheorem => promo_tasks(cfg, &mut out),
            SuiteId::Zigzag => zigzag_tasks(cfg, &mut out),
        }
    }
    out
}

fn cartan_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    for (ty, r) in data(cfg) {
        let nodes = cfg.bounds.max_nodes.min(100);
        out.push(task(SuiteId::Cartan, format!("{ty}{r}"), move || {
            let d = build_cartan(ty, r)?;
            let mut rep = verify_datum(&d, 20)?;
            // weights of L(λ) lie above w0 λ
            for lam in dominant_weights_within(&d, nodes) {
                let c = crystal_from_highest(&d, &lam, nodes)?;
                let low = d.act(d.w0().letters(), &lam);
                for b in 0..c.len() {
                    let diff = c.weight(b).sub(&low);
                    let ok = d.root_coords(&diff).is_some_and(|v| v.iter().all(|&x| x >= 0));
                    rep.record(ok, false, || format!("{} - w0({lam}) not in Q+", c.weight(b)));
                }
            }
            Ok(vec![rep])
        }));
    }
    if cfg.datum.is_some() && cfg.k.is_none() && cfg.n.is_none() {
        return;
    }
    for (k, n) in modules(cfg, default_modules()) {
        let mb = cfg.bounds.max_basis;
        out.push(task(SuiteId::Cartan, format!("sl{k} V^{n}"), move || {
            let m = build_module(k, n, mb)?;
            Ok(vec![m.verify_relations(), m.verify_t_operators()?])
        }));
    }
}

fn braid_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let seed = cfg.seed;
    for (k, n) in modules(cfg, default_modules()) {
        let mb = cfg.bounds.max_basis;
        out.push(task(SuiteId::Braid, format!("sl{k} V^{n}"), move || {
            let m = build_module(k, n, mb)?;
            let d = m.datum();
            let mut all: Vec<Vec<usize>> = d.reduced_words(d.w0(), 2000).iter().map(|w| w.letters().to_vec()).collect();
            let first = all.remove(0);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 8 | n as u64));
            all.shuffle(&mut rng);
            all.truncate(20);
            all.sort();
            let mut words = vec![first];
            words.extend(all);
            let mut rep = verify_braid(&m, &words)?;
            rep.note("pairs", words.len() - 1);
            Ok(vec![rep])
        }));
    }
}

fn w0_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    for (k, n) in modules(cfg, default_modules()) {
        let mb = cfg.bounds.max_basis;
        out.push(task(SuiteId::W0Chevalley, format!("sl{k} V^{n}"), move || {
            let m = build_module(k, n, mb)?;
            let (rep, _) = verify_w0_chevalley(&m)?;
            Ok(vec![rep])
        }));
    }
}

fn cautis_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    for (k, n) in modules(cfg, default_modules()) {
        let mb = cfg.bounds.max_basis;
        out.push(task(SuiteId::Cautis, format!("sl{k} V^{n}"), move || {
            let m = build_module(k, n, mb)?;
            Ok(vec![verify_cautis_relations(&m, RESOLVED)?, verify_rickard_normalization(&m, RESOLVED)?])
        }));
    }
}

fn marked_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let seed = cfg.seed;
    for (k, n) in modules(cfg, vec![(3, 2), (3, 3), (4, 2), (4, 3)]) {
        let mb = cfg.bounds.max_basis;
        out.push(task(SuiteId::MarkedWords, format!("sl{k} V^{n}"), move || {
            let m = build_module(k, n, mb)?;
            let d = m.datum().clone();
            let ops = m.rickard_classes(RESOLVED)?;
            let mut rep = CheckReport::new("marked-words", format!("sl{k} V^{n}"));
            let mut moves = CheckReport::new("mark-move-shifts", format!("sl{k} V^{n}"));
            let mut table = CheckReport::new("mark-table", format!("sl{k} V^{n}"));
            let mut indep = CheckReport::new("mark-path-independence", format!("sl{k} V^{n}"));
            let mut pairs = 0usize;
            let mut entries = Vec::new();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 8 | n as u64) ^ 0x6d61726b);
            let words: Vec<Vec<usize>> = d.reduced_words(d.w0(), 2).iter().map(|w| w.letters().to_vec()).collect();
            for flavor in [Chevalley::E, Chevalley::F] {
                for (l, j, lam, kk) in derive_mark_table(&m, &ops, flavor, RESOLVED)? {
                    let pred = match flavor {
                        Chevalley::E => markedword::e_mark_shift(&d, l, j, &lam),
                        Chevalley::F => markedword::f_mark_shift(&d, l, j, &lam),
                    };
                    entries.push(format!("{flavor:?}({},{})@{lam}={kk}", l + 1, j + 1));
                    table.record(pred == kk, true, || format!("{flavor:?} ({},{}) at {lam}: measured {kk}, table {pred}", l + 1, j + 1));
                }
                for w in &words {
                    for mark in 0..w.len() {
                        let a = MarkedWord::new(w.clone(), mark, flavor)?;
                        let mut targets: Vec<MarkedWord> = markedword::orbit(&d, &a).into_iter().filter(|b| *b != a && b.is_reduced(&d)).collect();
                        targets.shuffle(&mut rng);
                        targets.truncate(3);
                        for lam in m.weights().cloned().collect::<Vec<_>>() {
                            let (reach, conflict) = markedword::path_independence(&d, &a, &lam)?;
                            indep.record(conflict.is_none(), reach > 1, || conflict.unwrap_or_default());
                            for b in &targets {
                                let (ok, nontrivial, trace, ratio) = marked_ratio_check(&m, &ops, &a, b, &lam, RESOLVED)?;
                                rep.record(ok, nontrivial, || format!("{a} -> {b} at {lam}: k={} ratio {ratio:?}", trace.total));
                                if nontrivial {
                                    pairs += 1;
                                }
                                for st in &trace.steps {
                                    moves.record((-1..=1).contains(&st.shift), st.shift != 0, || format!("move shift {} in {a} -> {b}", st.shift));
                                }
                            }
                        }
                    }
                }
            }
            rep.note("connected_pairs_nonzero", pairs);
            table.note("mark_table", entries.join(" "));
            Ok(vec![rep, moves, table, indep])
        }));
    }
}

fn twist_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    for (k, n) in modules(cfg, default_modules()) {
        let mb = cfg.bounds.max_basis;
        out.push(task(SuiteId::FullTwist, format!("sl{k} V^{n}"), move || {
            let m = build_module(k, n, mb)?;
            Ok(vec![verify_full_twist(&m, RESOLVED)?, extremal_transport_check(&m)?])
        }));
    }
    if cfg.k.is_some() || cfg.n.is_some() {
        return;
    }
    for (ty, r) in data(cfg) {
        let w = cfg.weight.clone();
        out.push(task(SuiteId::FullTwist, format!("{ty}{r} weight-vanishing"), move || {
            let d = build_cartan(ty, r)?;
            let lams = match &w {
                Some(w) => vec![w.clone()],
                None => dominant_weights_within(&d, 60),
            };
            let words = d.reduced_words(d.w0(), 3);
            let mut rep = CheckReport::new("weight-vanishing", d.name());
            for lam in lams {
                let c = crystal_from_highest(&d, &lam, 1000)?;
                for w in &words {
                    rep.absorb(&weight_vanishing_check(&d, &lam, w.letters(), |mu| c.weight_multiplicity(mu))?);
                }
            }
            Ok(vec![rep])
        }));
    }
}

fn crystal_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>, cactus: bool) {
    let suite = if cactus { SuiteId::Cactus } else { SuiteId::CrystalAxioms };
    for (ty, r) in data(cfg) {
        let Ok(d) = build_cartan(ty, r) else {
            out.push(task(suite, format!("{ty}{r}"), move || build_cartan(ty, r).map(|_| Vec::new())));
            continue;
        };
        let max = cfg.bounds.max_nodes;
        for lam in weights(cfg, &d, max) {
            let d = d.clone();
            out.push(task(suite, format!("{} {lam}", d.name()), move || {
                let c = crystal_from_highest(&d, &lam, max)?;
                if cactus {
                    return Ok(vec![verify_cactus_relations(&c)]);
                }
                let mut rep = c.validate();
                let dim = d.weyl_dimension(&lam);
                rep.record(dim == c.len().into(), true, || format!("{} nodes vs Weyl dimension {dim}", c.len()));
                rep.note("nodes", c.len());
                rep.note("edges", c.edge_count());
                Ok(vec![rep])
            }));
        }
    }
}

fn shapes_for_agreement(max_n: usize) -> Vec<Partition> {
    (2..=max_n.min(5))
        .flat_map(Partition::all)
        .filter(|l| syt_enumerate(l).len() <= 10)
        .collect()
}

fn agree_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let max = cfg.bounds.max_nodes;
    let shapes = match cfg.n {
        Some(n) => Partition::all(n.max(2)).into_iter().filter(|l| syt_enumerate(l).len() <= 10).collect(),
        None => shapes_for_agreement(5),
    };
    for shape in shapes {
        out.push(task(SuiteId::SchutzenbergerAgree, shape.to_string(), move || {
            Ok(vec![verify_evacuation_bridge(&shape, max)?, verify_promotion_factorization(&shape, max)?])
        }));
    }
}

fn tableaux_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let top = cfg.n.unwrap_or(6).min(8);
    out.push(task(SuiteId::Tableaux, format!("n<={top}"), move || {
        let mut reps = Vec::new();
        for n in 1..=top {
            let mut rep = CheckReport::new("tableaux", format!("n={n}"));
            let mut total = 0usize;
            for shape in Partition::all(n) {
                let ts = syt_enumerate(&shape);
                let hooks = shape.hook_count();
                rep.record(hooks == ts.len().into(), true, || format!("hook formula {shape}: {hooks} vs {}", ts.len()));
                total += ts.len() * ts.len();
                let mut seen = std::collections::BTreeSet::new();
                for t in &ts {
                    let e = evacuation(t);
                    rep.record(evacuation(&e) == *t, true, || format!("evacuation not involutive on {t}"));
                    rep.record(e.shape() == shape, false, || format!("evacuation changes shape of {t}"));
                    seen.insert(promotion(t));
                }
                rep.record(seen.len() == ts.len(), true, || format!("promotion not bijective on {shape}"));
                if shape.is_rectangle() {
                    let o = promotion_order(&shape);
                    rep.record(n % o == 0, true, || format!("promotion order {o} does not divide {n} on {shape}"));
                }
            }
            let fact: usize = (1..=n).product();
            rep.record(total == fact, true, || format!("Σ f_λ^2 = {total} != {n}!"));
            if n <= 6 {
                let mut w: Vec<usize> = (1..=n).collect();
                let mut count = 0;
                loop {
                    let pair = rsk(&w)?;
                    rep.record(rsk_inverse(&pair)? == w, true, || format!("RSK not inverted at {w:?}"));
                    count += 1;
                    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) else { break };
                    let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
                    w.swap(i, j);
                    w[i + 1..].reverse();
                }
                rep.note("rsk_checked", count);
            }
            reps.push(rep);
        }
        Ok(reps)
    }));
}

fn sn_range(cfg: &SuiteConfig) -> Vec<usize> {
    match cfg.n {
        Some(n) => vec![n],
        None => (1..=cfg.bounds.max_sn).collect(),
    }
}

fn kl_table(n: usize, max: usize) -> rickard::Result<KLTable> {
    kl_polynomials(n, max)
}

fn kl_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let max = cfg.bounds.max_sn;
    for n in sn_range(cfg) {
        out.push(task(SuiteId::Kl, format!("S{n}"), move || {
            let kl = kl_table(n, max)?;
            let mut reps = vec![kl.validate(), verify_left_cells(&kl)?];
            let mut chars = CheckReport::new("cell-characters", format!("S{n}"));
            for shape in Partition::all(n) {
                let cm = cell_module(&kl, &shape)?;
                reps.push(cm.verify_relations());
                for w in &kl.poset.elements {
                    let got = cm.character(w);
                    let want = specht_character(&shape, &cycle_type(w));
                    chars.record(got == want, true, || format!("χ^{shape}({w:?}) = {got}, expected {want}"));
                }
            }
            reps.push(chars);
            Ok(reps)
        }));
    }
}

fn evac_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let max = cfg.bounds.max_sn;
    for n in sn_range(cfg) {
        out.push(task(SuiteId::EvacuationTheorem, format!("S{n}"), move || {
            let kl = kl_table(n, max)?;
            Partition::all(n).iter().map(|l| verify_evacuation_theorem(&kl, l)).collect()
        }));
    }
}

fn promo_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let max = cfg.bounds.max_sn.max(6);
    let cases: Vec<(Vec<usize>, bool)> = vec![
        (vec![2, 2], true),
        (vec![3, 3], true),
        (vec![2, 2, 2], true),
        (vec![2, 1], false),
        (vec![3, 2], false),
    ];
    for (parts, rect) in cases {
        let shape = Partition::new(parts).expect("partition");
        let label = if rect { shape.to_string() } else { format!("{shape} control") };
        out.push(task(SuiteId::PromotionTheorem, label, move || {
            let kl = kl_table(shape.size(), max)?;
            if rect {
                return Ok(vec![verify_promotion_theorem(&kl, &shape)?]);
            }
            let mut rep = CheckReport::new("promotion-negative-control", shape.to_string());
            let signed = long_cycle_is_signed_permutation(&kl, &shape)?;
            rep.record(!signed, true, || format!("long cycle is a signed permutation on non-rectangular {shape}"));
            Ok(vec![rep])
        }));
    }
}

fn zigzag_tasks(cfg: &SuiteConfig, out: &mut Vec<Task>) {
    let list = cfg.datum.map_or_else(
        || vec![(CartanType::A, 1), (CartanType::A, 2), (CartanType::A, 3), (CartanType::D, 4)],
        |d| vec![d],
    );
    for (ty, r) in list {
        out.push(task(SuiteId::Zigzag, format!("{ty}{r}"), move || {
            let d = build_cartan(ty, r)?;
            let alg = build_zigzag(&d)?;
            let mut reps = vec![alg.validate(), verify_texactness(&d)?];
            if r <= 2 {
                reps.push(verify_minimization(&alg, d.w0().letters()));
            }
            if r == 1 {
                let mut rep = CheckReport::new("zigzag-rank-one", "A1");
                let theta = theta_word(&alg, &[0], true);
                let k = Module::simple(&alg, 0);
                let rr = Module::projective(&alg, 0);
                let hk = apply_and_cohomology(&alg, &theta, &k);
                rep.record(hk.len() == 1 && hk[0].0 == -1 && hk[0].1.is_isomorphic(&k, &alg), true, || "Θ(k) != k[1]".into());
                let hr = apply_and_cohomology(&alg, &theta, &rr);
                rep.record(hr.len() == 1 && hr[0].0 == -1 && hr[0].1.is_isomorphic(&rr.twist(&alg), &alg), true, || "Θ(R) != R'[1]".into());
                let tt = theta_word(&alg, &[0, 0], true);
                let h2 = apply_and_cohomology(&alg, &tt, &rr);
                rep.record(h2.len() == 1 && h2[0].0 == -2, true, || "ΘΘ(R) not concentrated in degree -2".into());
                reps.push(rep);
            }
            Ok(reps)
        }));
    }
}
