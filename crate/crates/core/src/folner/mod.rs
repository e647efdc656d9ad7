//! Matching-Følner certificates and the searches that produce them.
//!
//! Every matching number is computed inside an explicit finite window `W`:
//! a covering of `W` stands in for a uniform covering of a discrete group,
//! and any set that leaves `W` is reported as an error instead of being
//! truncated.

mod adversary;
mod certificate;
mod checks;
mod net;
mod search;

pub use adversary::{adversary_coloring, AdversaryResult, AdversaryStrategy, DEFAULT_COLORING_CAP};
pub use certificate::{check_certificate, CheckError, FolnerCertificate, Issue, PairResult, Verdict};
pub use checks::{
    cantor_check, classical_ratio, moore_gap, monochromatic_translate, theta_boost_check, CantorReport,
    MonoResult, ThetaBoostReport,
};
pub use net::{perfect_net, PerfectNet, DEFAULT_NET_CAP};
pub use search::{folner_search, window_for, SearchOutcome, Strategy};

use alloc::vec::Vec;

use thiserror::Error;

use crate::bipartite::BipartiteError;
use crate::cover::{CoverError, Covering, GroundSet};
use crate::groups::{GroupElem, GroupError, GroupModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FolnerError {
    #[error("element {0:?} lies outside the window")]
    WindowEscape(GroupElem),
    #[error("window would need more than {cap} elements")]
    WindowCap { cap: usize },
    #[error("theta must lie in [0, 1]")]
    BadTheta,
    #[error("search budget must be positive")]
    BadBudget,
    #[error("candidate set is empty")]
    EmptySet,
    #[error("{colors} colorings of {atoms} atoms exceed the cap {cap}")]
    ColoringCap { atoms: usize, colors: usize, cap: u128 },
    #[error("need at least two colors (k >= 1)")]
    TooFewColors,
    #[error("covering is not a partition")]
    NotPartition,
    #[error("the identity must belong to U")]
    MissingIdentity,
    #[error("covering ground differs from the expected point set")]
    GroundMismatch,
    #[error("no perfect matching between F and gF for g = {0:?}")]
    NoPerfectMatching(GroupElem),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Bipartite(#[from] BipartiteError),
}

/// Which translate pairs a certificate has to match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// `μ(F, gF, U)` for each `g ∈ E`.
    Asymmetric,
    /// `μ(gF, hF, U)` for all `g < h` in `E`.
    Symmetric,
}

impl Mode {
    /// Ordered pairs `(g, h)` whose translates must be matched.
    pub fn required_pairs(self, group: &GroupModel, e: &[GroupElem]) -> Vec<(GroupElem, GroupElem)> {
        match self {
            Mode::Asymmetric => e.iter().map(|g| (group.identity(), g.clone())).collect(),
            Mode::Symmetric => {
                let mut out = Vec::new();
                for (i, g) in e.iter().enumerate() {
                    for h in &e[i + 1..] {
                        out.push((g.clone(), h.clone()));
                    }
                }
                out
            }
        }
    }
}

/// A total coloring `atom → {0..=k}` of a finite ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring<A> {
    ground: GroundSet<A>,
    colors: Vec<usize>,
    k: usize,
}

impl<A: Ord + Clone> Coloring<A> {
    /// `colors[i]` is the color of the `i`-th ground atom in sorted order.
    pub fn new(ground: GroundSet<A>, colors: Vec<usize>, k: usize) -> Result<Self, FolnerError> {
        if k < 1 {
            return Err(FolnerError::TooFewColors);
        }
        if colors.len() != ground.len() || colors.iter().any(|&c| c > k) {
            return Err(FolnerError::GroundMismatch);
        }
        Ok(Self { ground, colors, k })
    }

    pub fn from_fn(ground: GroundSet<A>, k: usize, mut color: impl FnMut(&A) -> usize) -> Result<Self, FolnerError> {
        let colors = ground.atoms().iter().map(&mut color).collect();
        Self::new(ground, colors, k)
    }

    pub fn ground(&self) -> &GroundSet<A> {
        &self.ground
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color_of(&self, atom: &A) -> Option<usize> {
        self.ground.index_of(atom).map(|i| self.colors[i])
    }

    /// Color classes as a partition of the ground set.
    pub fn partition(&self) -> Covering<A> {
        Covering::from_coloring(self.ground.clone(), &self.colors).expect("a total coloring partitions its ground")
    }
}

/// Ground indices of `set` in `window`, or the first element outside it.
pub(crate) fn locate(window: &GroundSet<GroupElem>, set: &[GroupElem]) -> Result<Vec<usize>, FolnerError> {
    let mut out = set
        .iter()
        .map(|x| window.index_of(x).ok_or_else(|| FolnerError::WindowEscape(x.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
