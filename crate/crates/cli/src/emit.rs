//! Artifact emission: graphs, tables and trace logs.

use std::fmt::Write as _;

use rickard::crystal::crystal_from_highest;
use rickard::hecke::{cell_module, kl_polynomials, poly_string, wgraph_dot, KLTable};
use rickard::markedword::{self, MarkedWord};
use rickard::qrep::Chevalley;
use rickard::tableaux::{demotion, evacuation, promotion, promotion_order, Partition, StandardTableau};
use rickard::zigzag::{build_zigzag, summarize, theta_word};
use rickard::{build_cartan, CartanType, Weight};

use crate::config::Format;

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rickard::Error),
}

type Res = Result<String, EmitError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, EmitError> {
    Err(EmitError::Usage(msg.into()))
}

pub fn crystal(ty: CartanType, rank: usize, weight: &Weight, max_nodes: usize, format: Format) -> Res {
    let d = build_cartan(ty, rank)?;
    if weight.rank() != rank {
        return usage(format!("weight {weight} has rank {}, datum rank is {rank}", weight.rank()));
    }
    let c = crystal_from_highest(&d, weight, max_nodes)?;
    if c.is_empty() {
        return usage("crystal is empty");
    }
    match format {
        Format::Dot => Ok(c.to_dot()),
        Format::Tsv | Format::Text => Ok(c.to_adjacency()),
        Format::Json => Ok(json(&c.summary())),
    }
}

fn word(p: &[u8]) -> String {
    p.iter().map(|d| d.to_string()).collect()
}

fn table(n: usize, max_sn: usize) -> Result<KLTable, EmitError> {
    if n == 0 {
        return usage("S_0 has no KL table");
    }
    Ok(kl_polynomials(n, max_sn)?)
}

/// Full matrix of `P_{x,w}` with rows `x`, columns `w` in Bruhat-compatible
/// order; `.` marks `x` not below `w`.
pub fn kl_table(n: usize, max_sn: usize, format: Format) -> Res {
    let kl = table(n, max_sn)?;
    let ps = &kl.poset;
    match format {
        Format::Tsv | Format::Text => {
            let mut s = String::from("x\\w");
            for w in &ps.elements {
                let _ = write!(s, "\t{}", word(w));
            }
            s.push('\n');
            for x in 0..ps.len() {
                s.push_str(&word(&ps.elements[x]));
                for w in 0..ps.len() {
                    let cell = if ps.le(x, w) { poly_string(kl.poly(x, w)) } else { ".".into() };
                    let _ = write!(s, "\t{cell}");
                }
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => Ok(kl.export()),
        Format::Dot => usage("KL tables are emitted as tsv, text or json"),
    }
}

pub fn wgraph(n: usize, shape: Option<&Partition>, max_sn: usize) -> Res {
    let kl = table(n, max_sn)?;
    let elements: Vec<usize> = match shape {
        Some(l) => {
            if l.size() != n {
                return usage(format!("shape {l} is not a partition of {n}"));
            }
            let cm = cell_module(&kl, l)?;
            cm.elements.iter().filter_map(|w| kl.poset.index_of(w)).collect()
        }
        None => (0..kl.poset.len()).collect(),
    };
    if elements.is_empty() {
        return usage("W-graph selection is empty");
    }
    Ok(wgraph_dot(&kl, &elements))
}

pub fn trace(ty: CartanType, rank: usize, source: &str, target: &str, weight: &Weight, flavor: Chevalley) -> Res {
    let d = build_cartan(ty, rank)?;
    if weight.rank() != rank {
        return usage(format!("weight {weight} has rank {}, datum rank is {rank}", weight.rank()));
    }
    let a = MarkedWord::parse(source, flavor)?;
    let b = MarkedWord::parse(target, flavor)?;
    if a.letters.is_empty() {
        return usage("empty marked word");
    }
    let t = markedword::connect(&d, &a, &b, weight)?;
    Ok(t.to_tsv())
}

pub fn zigzag(ty: CartanType, rank: usize, letters: Option<&[usize]>, format: Format) -> Res {
    let d = build_cartan(ty, rank)?;
    let alg = build_zigzag(&d)?;
    let w: Vec<usize> = letters.map_or_else(|| d.w0().letters().to_vec(), <[usize]>::to_vec);
    if w.is_empty() {
        return usage("empty word: the complex is the identity bimodule");
    }
    if let Some(&bad) = w.iter().find(|&&i| i >= rank) {
        return usage(format!("node {} outside {}", bad + 1, d.name()));
    }
    let c = theta_word(&alg, &w, true);
    let sum = summarize(&alg, &c);
    match format {
        Format::Json => Ok(json(&sum)),
        Format::Dot => usage("complex summaries are emitted as json, text or tsv"),
        Format::Text | Format::Tsv => {
            let mut s = format!("# {} word {:?}\ndegree\tterms\tdim\n", sum.datum, sum.word);
            for ((p, ts), (_, dim)) in sum.terms.iter().zip(&sum.term_dims) {
                let t: Vec<String> = ts.iter().map(|(x, m)| if *m == 1 { x.clone() } else { format!("{m}{x}") }).collect();
                let _ = writeln!(s, "{p}\t{}\t{dim}", t.join(" + "));
            }
            Ok(s)
        }
    }
}

pub fn tableau(text: &str) -> Res {
    let t = StandardTableau::parse(text)?;
    if t.size() == 0 {
        return usage("empty tableau");
    }
    let shape: Partition = t.shape();
    let mut s = String::new();
    let _ = writeln!(s, "tableau\t{t}");
    let _ = writeln!(s, "shape\t{shape}");
    let _ = writeln!(s, "promotion\t{}", promotion(&t));
    let _ = writeln!(s, "demotion\t{}", demotion(&t));
    let _ = writeln!(s, "evacuation\t{}", evacuation(&t));
    let _ = writeln!(s, "promotion_order\t{}", promotion_order(&shape));
    Ok(s)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
