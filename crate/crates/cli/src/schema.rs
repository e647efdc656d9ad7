//! JSON file formats. Rationals are written as `"p/q"` strings and group
//! elements in their text encoding.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use matchlab_core::bipartite::MatchingWitness;
use matchlab_core::cover::{Covering, GroundSet};
use matchlab_core::folner::{FolnerCertificate, Mode, PairResult};
use matchlab_core::groups::{GroupElem, GroupKind, GroupModel, TableGroup};
use matchlab_core::means::ConvexCombination;
use matchlab_core::ramsey::FinMetric;
use matchlab_core::rational::{self, Rational};

use crate::error::CliError;
use crate::manifest::RunManifest;

pub const CERTIFICATE_FORMAT: &str = "matchlab-certificate";
pub const RAMSEY_FORMAT: &str = "matchlab-ramsey";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Lattice {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    Free {
        rank: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
    Table {
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
    },
}

impl GroupSpec {
    /// `zd<d>`, `free<k>`, `cyclic<n>` or `sym<n>`.
    pub fn shorthand(s: &str) -> Option<Self> {
        let num = |prefix: &str| s.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
        if let Some(dim) = num("zd") {
            return Some(GroupSpec::Lattice { dim, generators: None });
        }
        if let Some(rank) = num("free") {
            return Some(GroupSpec::Free { rank, generators: None });
        }
        let table = |t: TableGroup| GroupSpec::Table { names: t.names().to_vec(), table: t.table().to_vec(), generators: None };
        if let Some(n) = num("cyclic").filter(|&n| n >= 1) {
            return Some(table(TableGroup::cyclic(n)));
        }
        if let Some(n) = num("sym").filter(|&n| (1..=6).contains(&n)) {
            return Some(table(TableGroup::symmetric(n)));
        }
        None
    }

    pub fn build(&self) -> Result<GroupModel, CliError> {
        let (model, generators) = match self {
            GroupSpec::Lattice { dim, generators } => (GroupModel::lattice(*dim)?, generators),
            GroupSpec::Free { rank, generators } => (GroupModel::free(*rank)?, generators),
            GroupSpec::Table { names, table, generators } => {
                (GroupModel::table(TableGroup::new(names.clone(), table.clone())?), generators)
            }
        };
        match generators {
            None => Ok(model),
            Some(gens) => {
                let parsed = gens.iter().map(|g| model.parse_elem(g)).collect::<Result<Vec<_>, _>>()?;
                Ok(model.clone().with_generators(parsed)?)
            }
        }
    }

    pub fn from_model(model: &GroupModel) -> Self {
        let default_gens = match model.kind() {
            GroupKind::Lattice { dim } => GroupModel::lattice(*dim).ok(),
            GroupKind::Free { rank } => GroupModel::free(*rank).ok(),
            GroupKind::Table(t) => Some(GroupModel::table(t.clone())),
        };
        let generators = (default_gens.as_ref() != Some(model))
            .then(|| model.generators().iter().map(|g| model.format_elem(g)).collect());
        match model.kind() {
            GroupKind::Lattice { dim } => GroupSpec::Lattice { dim: *dim, generators },
            GroupKind::Free { rank } => GroupSpec::Free { rank: *rank, generators },
            GroupKind::Table(t) => GroupSpec::Table { names: t.names().to_vec(), table: t.table().to_vec(), generators },
        }
    }
}

pub fn format_elems(group: &GroupModel, elems: &[GroupElem]) -> Vec<String> {
    elems.iter().map(|g| group.format_elem(g)).collect()
}

pub fn parse_elems(group: &GroupModel, text: &[String]) -> Result<Vec<GroupElem>, CliError> {
    Ok(text.iter().map(|s| group.parse_elem(s)).collect::<Result<_, _>>()?)
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    rational::parse(s).map_err(|e| CliError::Invalid(e.to_string()))
}

/// A covering of a finite set of named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringJson {
    pub ground: Vec<String>,
    pub blocks: Vec<Vec<String>>,
}

impl CoveringJson {
    pub fn from_cover(group: &GroupModel, cover: &Covering<GroupElem>) -> Self {
        Self {
            ground: format_elems(group, cover.ground().atoms()),
            blocks: cover.block_atoms().iter().map(|b| format_elems(group, b)).collect(),
        }
    }

    pub fn from_strings(cover: &Covering<String>) -> Self {
        Self { ground: cover.ground().atoms().to_vec(), blocks: cover.block_atoms() }
    }

    pub fn to_group_cover(&self, group: &GroupModel) -> Result<Covering<GroupElem>, CliError> {
        let ground = GroundSet::new(parse_elems(group, &self.ground)?)?;
        let blocks = self.blocks.iter().map(|b| parse_elems(group, b)).collect::<Result<Vec<_>, _>>()?;
        Ok(Covering::new(ground, blocks)?)
    }

    pub fn to_string_cover(&self) -> Result<Covering<String>, CliError> {
        let ground = GroundSet::new(self.ground.clone())?;
        Ok(Covering::new(ground, self.blocks.clone())?)
    }
}

/// A total coloring `atom → 0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub ground: Vec<String>,
    pub colors: Vec<usize>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub g: String,
    pub h: String,
    pub mu: usize,
    pub witness: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub format: String,
    pub version: u32,
    pub group: GroupSpec,
    pub f: Vec<String>,
    pub e: Vec<String>,
    pub cover: CoveringJson,
    pub theta: String,
    pub mode: String,
    pub threshold: usize,
    pub min_ratio: String,
    pub pairs: Vec<PairJson>,
    pub pass: bool,
    pub manifest: RunManifest,
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Asymmetric => "asym",
        Mode::Symmetric => "sym",
    }
}

pub fn parse_mode(s: &str) -> Result<Mode, CliError> {
    match s {
        "asym" | "asymmetric" => Ok(Mode::Asymmetric),
        "sym" | "symmetric" => Ok(Mode::Symmetric),
        other => Err(CliError::Invalid(format!("unknown mode {other:?}"))),
    }
}

impl CertificateJson {
    pub fn from_certificate(cert: &FolnerCertificate, manifest: RunManifest) -> Self {
        let g = &cert.group;
        Self {
            format: CERTIFICATE_FORMAT.into(),
            version: FORMAT_VERSION,
            group: GroupSpec::from_model(g),
            f: format_elems(g, &cert.f),
            e: format_elems(g, &cert.e),
            cover: CoveringJson::from_cover(g, &cert.cover),
            theta: rational::format(&cert.theta),
            mode: mode_name(cert.mode).into(),
            threshold: cert.threshold(),
            min_ratio: rational::format(&cert.min_ratio()),
            pairs: cert
                .pairs
                .iter()
                .map(|p| PairJson {
                    g: g.format_elem(&p.g),
                    h: g.format_elem(&p.h),
                    mu: p.mu,
                    witness: p.witness.pairs.clone(),
                })
                .collect(),
            pass: cert.pass,
            manifest,
        }
    }

    /// The certificate as stored, without recomputing anything.
    pub fn to_certificate(&self) -> Result<FolnerCertificate, CliError> {
        if self.format != CERTIFICATE_FORMAT {
            return Err(CliError::Invalid(format!("not a certificate: format {:?}", self.format)));
        }
        let group = self.group.build()?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| {
                Ok(PairResult {
                    g: group.parse_elem(&p.g)?,
                    h: group.parse_elem(&p.h)?,
                    mu: p.mu,
                    witness: MatchingWitness::new(p.witness.clone()),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(FolnerCertificate {
            f: parse_elems(&group, &self.f)?,
            e: parse_elems(&group, &self.e)?,
            cover: self.cover.to_group_cover(&group)?,
            theta: parse_rational(&self.theta)?,
            mode: parse_mode(&self.mode)?,
            pairs,
            pass: self.pass,
            group,
        })
    }
}

/// A finite metric space file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricJson {
    pub points: Vec<String>,
    pub dist: Vec<Vec<String>>,
}

impl MetricJson {
    pub fn build(&self) -> Result<FinMetric, CliError> {
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|d| parse_rational(d)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinMetric::new(self.points.clone(), dist)?)
    }

    pub fn from_metric(m: &FinMetric) -> Self {
        Self {
            points: m.points().to_vec(),
            dist: m.matrix().iter().map(|row| row.iter().map(rational::format).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyWitnessJson {
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyBundle {
    pub format: String,
    pub version: u32,
    pub a: MetricJson,
    pub b: MetricJson,
    pub c: MetricJson,
    pub colors: usize,
    pub eps: String,
    pub budget: usize,
    /// Exhaustive enumeration cap; ignored when `samples` is set.
    pub cap: u128,
    /// Number of sampled colorings, seeded by `manifest.seed`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// `"holds"` or `"fails"`.
    pub verdict: String,
    pub witnesses: Vec<RamseyWitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<RamseyWitnessJson>,
    pub manifest: RunManifest,
}

/// `{"weights": {"elem": "p/q", ...}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationJson {
    pub weights: BTreeMap<String, String>,
}

impl CombinationJson {
    pub fn build(&self, group: &GroupModel) -> Result<ConvexCombination, CliError> {
        let mut weights = BTreeMap::new();
        for (g, w) in &self.weights {
            weights.insert(group.parse_elem(g)?, parse_rational(w)?);
        }
        Ok(ConvexCombination::new(weights)?)
    }

    pub fn from_combination(group: &GroupModel, c: &ConvexCombination) -> Self {
        Self { weights: c.weights().iter().map(|(g, w)| (group.format_elem(g), rational::format(w))).collect() }
    }
}
