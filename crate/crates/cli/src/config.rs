use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use rickard::{CartanType, Weight};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    Cartan,
    MarkedWords,
    Braid,
    W0Chevalley,
    Cautis,
    FullTwist,
    CrystalAxioms,
    Cactus,
    SchutzenbergerAgree,
    Tableaux,
    Kl,
    EvacuationTheorem,
    PromotionTheorem,
    Zigzag,
}

impl SuiteId {
    pub const ALL: [SuiteId; 14] = [
        SuiteId::Cartan,
        SuiteId::MarkedWords,
        SuiteId::Braid,
        SuiteId::W0Chevalley,
        SuiteId::Cautis,
        SuiteId::FullTwist,
        SuiteId::CrystalAxioms,
        SuiteId::Cactus,
        SuiteId::SchutzenbergerAgree,
        SuiteId::Tableaux,
        SuiteId::Kl,
        SuiteId::EvacuationTheorem,
        SuiteId::PromotionTheorem,
        SuiteId::Zigzag,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Cartan => "cartan",
            SuiteId::MarkedWords => "marked-words",
            SuiteId::Braid => "braid",
            SuiteId::W0Chevalley => "w0-chevalley",
            SuiteId::Cautis => "cautis",
            SuiteId::FullTwist => "full-twist",
            SuiteId::CrystalAxioms => "crystal-axioms",
            SuiteId::Cactus => "cactus",
            SuiteId::SchutzenbergerAgree => "schutzenberger-agree",
            SuiteId::Tableaux => "tableaux",
            SuiteId::Kl => "kl",
            SuiteId::EvacuationTheorem => "evacuation-theorem",
            SuiteId::PromotionTheorem => "promotion-theorem",
            SuiteId::Zigzag => "zigzag",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SuiteId::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite id {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Tsv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_basis: usize,
    pub max_nodes: usize,
    pub max_sn: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_basis: rickard::qrep::DEFAULT_MAX_BASIS,
            max_nodes: rickard::crystal::DEFAULT_MAX_NODES,
            max_sn: 5,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub suites: Vec<SuiteId>,
    pub datum: Option<(CartanType, usize)>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub weight: Option<Weight>,
    pub bounds: Bounds,
    pub format: Format,
    pub jobs: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: SuiteId::ALL.to_vec(),
            datum: None,
            k: None,
            n: None,
            weight: None,
            bounds: Bounds::default(),
            format: Format::Json,
            jobs: 0,
            seed: 0,
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), String> {
        let b = &self.bounds;
        if b.max_basis == 0 || b.max_nodes == 0 || b.max_sn == 0 {
            return Err("bounds must be positive".into());
        }
        if self.format == Format::Dot {
            return Err("reports support json, text and tsv; dot is for `emit`".into());
        }
        if self.suites.is_empty() {
            return Err("no suites selected".into());
        }
        if let (Some(w), Some((_, r))) = (&self.weight, self.datum) {
            if w.rank() != r {
                return Err(format!("weight {w} has rank {}, datum rank is {r}", w.rank()));
            }
        }
        if self.weight.is_some() && self.datum.is_none() {
            return Err("--weight needs --type and --rank".into());
        }
        if let Some(k) = self.k {
            if k < 2 {
                return Err("--k must be at least 2".into());
            }
        }
        if self.n == Some(0) {
            return Err("--n must be positive".into());
        }
        Ok(())
    }
}

pub fn parse_type(s: &str) -> Result<CartanType, String> {
    match s.to_ascii_uppercase().as_str() {
        "A" => Ok(CartanType::A),
        "D" => Ok(CartanType::D),
        "E" => Ok(CartanType::E),
        _ => Err(format!("unknown Cartan type {s:?}")),
    }
}
