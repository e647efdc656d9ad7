use alloc::vec::Vec;

use thiserror::Error;

use super::{locate, FolnerError, Mode};
use crate::bipartite::{covering_graph_indices, max_matching, MatchingWitness, WitnessError};
use crate::cover::Covering;
use crate::groups::{GroupElem, GroupModel};
use crate::rational::{self, Rational};

/// Matching number and witness for one required pair `(gF, hF)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub g: GroupElem,
    pub h: GroupElem,
    pub mu: usize,
    /// Indices into sorted `gF` (left) and sorted `hF` (right).
    pub witness: MatchingWitness,
}

/// Self-contained evidence that `F` satisfies a matching condition for
/// `(E, U, θ)`: all inputs plus one witness per required pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolnerCertificate {
    pub group: GroupModel,
    pub f: Vec<GroupElem>,
    pub e: Vec<GroupElem>,
    pub cover: Covering<GroupElem>,
    pub theta: Rational,
    pub mode: Mode,
    pub pairs: Vec<PairResult>,
    pub pass: bool,
}

impl FolnerCertificate {
    /// Computes every required matching and the verdict.
    pub fn build(
        group: &GroupModel,
        f: &[GroupElem],
        e: &[GroupElem],
        cover: &Covering<GroupElem>,
        theta: &Rational,
        mode: Mode,
    ) -> Result<Self, FolnerError> {
        let mut f = f.to_vec();
        f.sort();
        f.dedup();
        if f.is_empty() {
            return Err(FolnerError::EmptySet);
        }
        let mut e = e.to_vec();
        e.sort();
        e.dedup();
        let pairs = evaluate_pairs(group, cover, &f, &e, mode)?;
        let needed = rational::threshold(theta, f.len());
        let pass = pairs.iter().all(|p| p.mu >= needed);
        Ok(Self { group: group.clone(), f, e, cover: cover.clone(), theta: theta.clone(), mode, pairs, pass })
    }

    pub fn threshold(&self) -> usize {
        rational::threshold(&self.theta, self.f.len())
    }

    /// `min μ / |F|` over the required pairs (1 when there are none).
    pub fn min_ratio(&self) -> Rational {
        min_ratio(&self.pairs, self.f.len())
    }
}

pub(crate) fn min_ratio(pairs: &[PairResult], size: usize) -> Rational {
    let least = pairs.iter().map(|p| p.mu).min().unwrap_or(size);
    rational::fraction(least, size)
}

/// Matching numbers for every required pair, with witnesses.
pub(crate) fn evaluate_pairs(
    group: &GroupModel,
    cover: &Covering<GroupElem>,
    f: &[GroupElem],
    e: &[GroupElem],
    mode: Mode,
) -> Result<Vec<PairResult>, FolnerError> {
    let window = cover.ground();
    let mut out = Vec::new();
    for (g, h) in mode.required_pairs(group, e) {
        let gf = locate(window, &group.translate(&g, f)?)?;
        let hf = locate(window, &group.translate(&h, f)?)?;
        let graph = covering_graph_indices(cover, &gf, &hf)?;
        let witness = max_matching(&graph);
        out.push(PairResult { g, h, mu: witness.len(), witness });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("translate escapes the window at {0:?}")]
    WindowEscape(GroupElem),
    #[error("witness for pair {pair} is invalid: {source}")]
    WitnessInvalid { pair: usize, source: WitnessError },
    #[error("certificate is malformed: {0}")]
    Malformed(FolnerError),
}

/// A discrepancy found while re-checking a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Issue {
    BelowThreshold { pair: usize, mu: usize, needed: usize },
    ValueMismatch { pair: usize, stored: usize, recomputed: usize },
    WitnessSize { pair: usize, stored: usize, witness: usize },
    PairsMismatch { expected: usize, stored: usize },
    WrongPair { pair: usize },
    VerdictMismatch { claimed: bool, actual: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Vec<Issue>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Recomputes every matching number from scratch, validates each stored
/// witness against its covering graph, and compares against `⌈θ|F|⌉`.
pub fn check_certificate(cert: &FolnerCertificate) -> Result<Verdict, CheckError> {
    let group = &cert.group;
    let window = cert.cover.ground();
    if cert.f.is_empty() {
        return Err(CheckError::Malformed(FolnerError::EmptySet));
    }
    for x in cert.f.iter().chain(&cert.e) {
        group.check(x).map_err(|e| CheckError::Malformed(e.into()))?;
    }
    let required = cert.mode.required_pairs(group, &cert.e);
    let needed = cert.threshold();
    let mut issues = Vec::new();
    if required.len() != cert.pairs.len() {
        issues.push(Issue::PairsMismatch { expected: required.len(), stored: cert.pairs.len() });
    }
    let mut all_clear = issues.is_empty();
    for (i, (g, h)) in required.iter().enumerate() {
        let side = |t: &GroupElem| -> Result<Vec<usize>, CheckError> {
            let translate = group.translate(t, &cert.f).map_err(|e| CheckError::Malformed(e.into()))?;
            locate(window, &translate).map_err(|e| match e {
                FolnerError::WindowEscape(x) => CheckError::WindowEscape(x),
                other => CheckError::Malformed(other),
            })
        };
        let (gf, hf) = (side(g)?, side(h)?);
        let graph = covering_graph_indices(&cert.cover, &gf, &hf).map_err(|e| CheckError::Malformed(e.into()))?;
        let recomputed = max_matching(&graph).len();
        if recomputed < needed {
            issues.push(Issue::BelowThreshold { pair: i, mu: recomputed, needed });
            all_clear = false;
        }
        let Some(stored) = cert.pairs.get(i) else { continue };
        if (&stored.g, &stored.h) != (g, h) {
            issues.push(Issue::WrongPair { pair: i });
            continue;
        }
        stored
            .witness
            .validate(&graph)
            .map_err(|source| CheckError::WitnessInvalid { pair: i, source })?;
        if stored.mu != recomputed {
            issues.push(Issue::ValueMismatch { pair: i, stored: stored.mu, recomputed });
        }
        if stored.witness.len() != stored.mu {
            issues.push(Issue::WitnessSize { pair: i, stored: stored.mu, witness: stored.witness.len() });
        }
    }
    if cert.pass != all_clear {
        issues.push(Issue::VerdictMismatch { claimed: cert.pass, actual: all_clear });
    }
    if issues.is_empty() {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail(issues))
    }
}
