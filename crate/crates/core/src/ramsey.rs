//! Desk-scale checker for the Ramsey matching condition on finite metric
//! spaces with rational distances.
//!
//! `ρ(α, β)` is the largest distance `d(α(p), β(p))` over the points `p` of
//! the common source space.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bipartite::{max_matching, BipartiteGraph, MatchingWitness};
use crate::rational::{self, Rational};

/// Largest source space accepted by [`embeddings`].
pub const MAX_SOURCE: usize = 6;
/// Largest target space accepted by [`embeddings`].
pub const MAX_TARGET: usize = 12;
pub const DEFAULT_RAMSEY_COLORING_CAP: u128 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("distance matrix must be {0}x{0}")]
    BadMatrix(usize),
    #[error("duplicate point name {0:?}")]
    DuplicatePoint(String),
    #[error("d({0},{0}) must be 0")]
    NonzeroDiagonal(usize),
    #[error("d({0},{1}) must be positive")]
    NonPositive(usize, usize),
    #[error("d({0},{1}) differs from d({1},{0})")]
    NotSymmetric(usize, usize),
    #[error("triangle inequality fails for points {0}, {1}, {2}")]
    Triangle(usize, usize, usize),
    #[error("source space has {size} points; the cap is {cap}")]
    SourceTooLarge { size: usize, cap: usize },
    #[error("target space has {size} points; the cap is {cap}")]
    TargetTooLarge { size: usize, cap: usize },
    #[error("embeddings do not share a source and target")]
    Mismatch,
    #[error("map is not an isometric embedding")]
    NotAnEmbedding,
    #[error("{colors}^{embeddings} colorings exceed the cap {cap}")]
    ColoringCap { embeddings: usize, colors: usize, cap: u128 },
    #[error("need at least two colors (k >= 1)")]
    TooFewColors,
    #[error("eps must lie in (0, 1]")]
    BadEps,
    #[error("family budget must be positive")]
    BadBudget,
    #[error("coloring must assign a color in 0..={k} to each of {len} embeddings")]
    BadColoring { len: usize, k: usize },
    #[error("index set F must be non-empty")]
    EmptyFamily,
}

/// A finite metric space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinMetric {
    points: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

impl FinMetric {
    /// Validates symmetry, identity of indiscernibles and the triangle inequality.
    pub fn new(points: Vec<String>, dist: Vec<Vec<Rational>>) -> Result<Self, RamseyError> {
        let n = points.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(RamseyError::BadMatrix(n));
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(RamseyError::DuplicatePoint(p.clone()));
            }
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(RamseyError::NonzeroDiagonal(i));
            }
            for j in 0..n {
                if i != j && !dist[i][j].is_positive() {
                    return Err(RamseyError::NonPositive(i, j));
                }
                if dist[i][j] != dist[j][i] {
                    return Err(RamseyError::NotSymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > &dist[i][j] + &dist[j][k] {
                        return Err(RamseyError::Triangle(i, j, k));
                    }
                }
            }
        }
        Ok(Self { points, dist })
    }

    /// Points `0..n` on a line with `d(i, j) = |i − j|`.
    pub fn path(n: usize) -> Self {
        let points = (0..n).map(|i| alloc::format!("{i}")).collect();
        let dist = (0..n)
            .map(|i| (0..n).map(|j| rational::int(i.abs_diff(j) as i64)).collect())
            .collect();
        Self { points, dist }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.dist
    }
}

/// An isometric map given by the images of the source points in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Checks the map against both spaces.
    pub fn new(source: &FinMetric, target: &FinMetric, map: Vec<usize>) -> Result<Self, RamseyError> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(RamseyError::Mismatch);
        }
        for i in 0..map.len() {
            for j in 0..map.len() {
                if target.dist(map[i], map[j]) != source.dist(i, j) {
                    return Err(RamseyError::NotAnEmbedding);
                }
            }
        }
        Ok(Self { map })
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &Embedding) -> Embedding {
        Embedding { map: inner.map.iter().map(|&x| self.map[x]).collect() }
    }
}

/// All isometric embeddings of `a` into `c`, in lexicographic order.
pub fn embeddings(a: &FinMetric, c: &FinMetric) -> Result<Vec<Embedding>, RamseyError> {
    if a.len() > MAX_SOURCE {
        return Err(RamseyError::SourceTooLarge { size: a.len(), cap: MAX_SOURCE });
    }
    if c.len() > MAX_TARGET {
        return Err(RamseyError::TargetTooLarge { size: c.len(), cap: MAX_TARGET });
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(a.len());
    extend(a, c, &mut map, &mut out);
    Ok(out)
}

fn extend(a: &FinMetric, c: &FinMetric, map: &mut Vec<usize>, out: &mut Vec<Embedding>) {
    let i = map.len();
    if i == a.len() {
        out.push(Embedding { map: map.clone() });
        return;
    }
    for y in 0..c.len() {
        if (0..i).all(|j| c.dist(map[j], y) == a.dist(j, i)) {
            map.push(y);
            extend(a, c, map, out);
            map.pop();
        }
    }
}

/// `ρ(α, β) = max_p d(α(p), β(p))`, distances taken in `target`.
pub fn rho(target: &FinMetric, alpha: &Embedding, beta: &Embedding) -> Result<Rational, RamseyError> {
    if alpha.map.len() != beta.map.len() || alpha.map.iter().chain(&beta.map).any(|&y| y >= target.len()) {
        return Err(RamseyError::Mismatch);
    }
    Ok(alpha
        .map
        .iter()
        .zip(&beta.map)
        .map(|(&x, &y)| target.dist(x, y).clone())
        .max()
        .unwrap_or_else(Rational::zero))
}

/// The spaces `A ⊆ B ⊆ C` with their embedding sets enumerated once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyInstance {
    pub a: FinMetric,
    pub b: FinMetric,
    pub c: FinMetric,
    pub emb_ab: Vec<Embedding>,
    pub emb_bc: Vec<Embedding>,
    /// Colorings are indexed by this list.
    pub emb_ac: Vec<Embedding>,
}

impl RamseyInstance {
    pub fn new(a: FinMetric, b: FinMetric, c: FinMetric) -> Result<Self, RamseyError> {
        let emb_ab = embeddings(&a, &b)?;
        let emb_bc = embeddings(&b, &c)?;
        let emb_ac = embeddings(&a, &c)?;
        Ok(Self { a, b, c, emb_ab, emb_bc, emb_ac })
    }

    fn ac_index(&self, e: &Embedding) -> usize {
        self.emb_ac
            .binary_search(e)
            .expect("a composite of embeddings is an embedding")
    }

    /// Colors `i` whose class comes within `ρ < eps` of the embedding `x`.
    fn near_colors(&self, x: usize, phi: &[usize], colors: usize, eps: &Rational) -> Vec<bool> {
        let mut near = alloc::vec![false; colors];
        let ex = &self.emb_ac[x];
        for (y, ey) in self.emb_ac.iter().enumerate() {
            if !near[phi[y]] && rho(&self.c, ex, ey).expect("same spaces") < *eps {
                near[phi[y]] = true;
            }
        }
        near
    }

    /// The graph on `F × F` joining `γ, γ'` when `ψ(γ)∘α` and `ψ(γ')∘β`
    /// both lie in the `eps`-ball around one color class.
    pub fn graph(
        &self,
        psi: &[usize],
        alpha: usize,
        beta: usize,
        phi: &[usize],
        k: usize,
        eps: &Rational,
    ) -> Result<BipartiteGraph, RamseyError> {
        if psi.is_empty() {
            return Err(RamseyError::EmptyFamily);
        }
        if phi.len() != self.emb_ac.len() || phi.iter().any(|&c| c > k) {
            return Err(RamseyError::BadColoring { len: self.emb_ac.len(), k });
        }
        if alpha >= self.emb_ab.len() || beta >= self.emb_ab.len() || psi.iter().any(|&p| p >= self.emb_bc.len()) {
            return Err(RamseyError::Mismatch);
        }
        let side = |s: usize| -> Vec<Vec<bool>> {
            psi.iter()
                .map(|&p| {
                    let comp = self.emb_bc[p].after(&self.emb_ab[s]);
                    self.near_colors(self.ac_index(&comp), phi, k + 1, eps)
                })
                .collect()
        };
        let (left, right) = (side(alpha), side(beta));
        Ok(BipartiteGraph::from_fn(psi.len(), psi.len(), |x, y| {
            left[x].iter().zip(&right[y]).any(|(&l, &r)| l && r)
        }))
    }

    /// `μ(ψ, α, β, φ, eps)`, with `ψ`, `α`, `β` as indices into
    /// `emb_bc` and `emb_ab`.
    pub fn ramsey_mu(
        &self,
        psi: &[usize],
        alpha: usize,
        beta: usize,
        phi: &[usize],
        k: usize,
        eps: &Rational,
    ) -> Result<usize, RamseyError> {
        Ok(max_matching(&self.graph(psi, alpha, beta, phi, k, eps)?).len())
    }

    /// The smallest `μ` over all `α, β`, or `|F|` when there are none.
    pub fn worst_mu(&self, psi: &[usize], phi: &[usize], k: usize, eps: &Rational) -> Result<usize, RamseyError> {
        let mut least = psi.len();
        for alpha in 0..self.emb_ab.len() {
            for beta in 0..self.emb_ab.len() {
                least = least.min(self.ramsey_mu(psi, alpha, beta, phi, k, eps)?);
            }
        }
        Ok(least)
    }

    /// Whether `ψ` meets `μ ≥ (1 − eps)|F|` for every `α, β`.
    pub fn validates(&self, psi: &[usize], phi: &[usize], k: usize, eps: &Rational) -> Result<bool, RamseyError> {
        if self.emb_ab.is_empty() {
            return Ok(true);
        }
        let needed = rational::threshold(&(Rational::one() - eps), psi.len());
        Ok(self.worst_mu(psi, phi, k, eps)? >= needed)
    }

    /// A perfect matching certificate for one `(α, β)`, when useful for reports.
    pub fn witness(
        &self,
        psi: &[usize],
        alpha: usize,
        beta: usize,
        phi: &[usize],
        k: usize,
        eps: &Rational,
    ) -> Result<MatchingWitness, RamseyError> {
        Ok(max_matching(&self.graph(psi, alpha, beta, phi, k, eps)?))
    }
}

/// How colorings of `emb(A, C)` are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringSource {
    Exhaustive { cap: u128 },
    Sampled { seed: u64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringWitness {
    /// Color of each element of `emb(A, C)`.
    pub phi: Vec<usize>,
    /// Indices into `emb(B, C)`; empty when `emb(A, B)` is empty.
    pub psi: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RamseyVerdict {
    Holds { witnesses: Vec<ColoringWitness> },
    /// The first coloring for which no family within budget worked.
    Fails { phi: Vec<usize>, tried: usize },
}

/// For each coloring, searches multisets `ψ` of `emb(B, C)` by increasing
/// size, up to `budget` families per coloring.
pub fn ramsey_condition_check(
    inst: &RamseyInstance,
    k: usize,
    eps: &Rational,
    budget: usize,
    source: ColoringSource,
) -> Result<RamseyVerdict, RamseyError> {
    if k < 1 {
        return Err(RamseyError::TooFewColors);
    }
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(RamseyError::BadEps);
    }
    if budget == 0 {
        return Err(RamseyError::BadBudget);
    }
    let n = inst.emb_ac.len();
    let colors = k + 1;
    let phis: Vec<Vec<usize>> = match source {
        ColoringSource::Exhaustive { cap } => {
            let total = (colors as u128).checked_pow(n as u32).filter(|&t| t <= cap);
            let total = total.ok_or(RamseyError::ColoringCap { embeddings: n, colors, cap })?;
            (0..total)
                .map(|mut code| {
                    let mut phi = alloc::vec![0; n];
                    for slot in phi.iter_mut().rev() {
                        *slot = (code % colors as u128) as usize;
                        code /= colors as u128;
                    }
                    phi
                })
                .collect()
        }
        ColoringSource::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (0..n).map(|_| rng.gen_range(0..colors)).collect()).collect()
        }
    };
    let mut witnesses = Vec::with_capacity(phis.len());
    for phi in phis {
        if inst.emb_ab.is_empty() {
            witnesses.push(ColoringWitness { phi, psi: Vec::new() });
            continue;
        }
        match search_family(inst, &phi, k, eps, budget)? {
            Ok(psi) => witnesses.push(ColoringWitness { phi, psi }),
            Err(tried) => return Ok(RamseyVerdict::Fails { phi, tried }),
        }
    }
    Ok(RamseyVerdict::Holds { witnesses })
}

/// Multisets in size-then-lexicographic order; `Err(tried)` when the budget runs out.
fn search_family(
    inst: &RamseyInstance,
    phi: &[usize],
    k: usize,
    eps: &Rational,
    budget: usize,
) -> Result<Result<Vec<usize>, usize>, RamseyError> {
    let m = inst.emb_bc.len();
    if m == 0 {
        return Ok(Err(0));
    }
    let mut tried = 0;
    for size in 1.. {
        let mut psi = alloc::vec![0usize; size];
        loop {
            if tried == budget {
                return Ok(Err(tried));
            }
            tried += 1;
            if inst.validates(&psi, phi, k, eps)? {
                return Ok(Ok(psi));
            }
            // next non-decreasing sequence
            let Some(pos) = psi.iter().rposition(|&x| x + 1 < m) else { break };
            let v = psi[pos] + 1;
            psi[pos..].iter_mut().for_each(|x| *x = v);
        }
    }
    unreachable!("the size loop only ends through the budget")
}
