//! Maximum bipartite matching with certificates.
//!
//! Matchings come from Hopcroft–Karp. The Hall deficiency is either
//! enumerated over all left subsets (the default for small graphs) or read
//! off the alternating-path structure of a maximum matching, which yields a
//! König vertex cover together with a deficiency-attaining subset.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use thiserror::Error;

use crate::cover::{CoverError, Covering};

/// Largest left side for which [`hall_deficiency`] enumerates subsets.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BipartiteError {
    #[error("edge ({0}, {1}) is out of range")]
    EdgeOutOfRange(usize, usize),
    #[error("edge ({0}, {1}) is listed twice")]
    DuplicateEdge(usize, usize),
    #[error("exhaustive Hall check over {size} left vertices exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("covering is not a partition (blocks {0} and {1} overlap)")]
    NotPartition(usize, usize),
    #[error("matching chain needs one more set than witnesses ({sets} sets, {witnesses} witnesses)")]
    ChainShape { sets: usize, witnesses: usize },
    #[error("witness {step} of the chain is invalid: {source}")]
    ChainWitness { step: usize, source: WitnessError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("pair {pair} ({left}, {right}) is not an edge")]
    NotAnEdge { pair: usize, left: usize, right: usize },
    #[error("pair {pair} reuses left vertex {left}")]
    RepeatedLeft { pair: usize, left: usize },
    #[error("pair {pair} reuses right vertex {right}")]
    RepeatedRight { pair: usize, right: usize },
}

/// A bipartite graph on index sets `0..left` and `0..right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: &[(usize, usize)]) -> Result<Self, BipartiteError> {
        let mut adj = alloc::vec![Vec::new(); left];
        for &(x, y) in edges {
            if x >= left || y >= right {
                return Err(BipartiteError::EdgeOutOfRange(x, y));
            }
            adj[x].push(y);
        }
        for (x, ys) in adj.iter_mut().enumerate() {
            ys.sort_unstable();
            if let Some(w) = ys.windows(2).find(|w| w[0] == w[1]) {
                return Err(BipartiteError::DuplicateEdge(x, w[0]));
            }
        }
        Ok(Self { left, right, adj })
    }

    /// Builds a graph from an edge predicate.
    pub fn from_fn(left: usize, right: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let adj = (0..left).map(|x| (0..right).filter(|&y| edge(x, y)).collect()).collect();
        Self { left, right, adj }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        Self::from_fn(left, right, |_, _| true)
    }

    pub fn left_len(&self) -> usize {
        self.left
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.left && self.adj[x].binary_search(&y).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// The graph with sides exchanged.
    pub fn transpose(&self) -> Self {
        let mut adj = alloc::vec![Vec::new(); self.right];
        for (x, ys) in self.adj.iter().enumerate() {
            for &y in ys {
                adj[y].push(x);
            }
        }
        Self { left: self.right, right: self.left, adj }
    }

    /// Neighborhood of a set of left vertices, sorted.
    pub fn neighborhood(&self, subset: &[usize]) -> Vec<usize> {
        let mut hit = alloc::vec![false; self.right];
        for &x in subset {
            for &y in &self.adj[x] {
                hit[y] = true;
            }
        }
        (0..self.right).filter(|&y| hit[y]).collect()
    }
}

/// An injective partial map from left to right along edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MatchingWitness {
    pub pairs: Vec<(usize, usize)>,
}

impl MatchingWitness {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self, graph: &BipartiteGraph) -> Result<(), WitnessError> {
        let mut left_used = alloc::vec![false; graph.left];
        let mut right_used = alloc::vec![false; graph.right];
        for (pair, &(x, y)) in self.pairs.iter().enumerate() {
            if !graph.has_edge(x, y) {
                return Err(WitnessError::NotAnEdge { pair, left: x, right: y });
            }
            if core::mem::replace(&mut left_used[x], true) {
                return Err(WitnessError::RepeatedLeft { pair, left: x });
            }
            if core::mem::replace(&mut right_used[y], true) {
                return Err(WitnessError::RepeatedRight { pair, right: y });
            }
        }
        Ok(())
    }

    /// Image of a left vertex, if matched.
    pub fn image(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |&(l, _)| l)
            .ok()
            .map(|i| self.pairs[i].1)
    }
}

/// Maximum matching by Hopcroft–Karp.
///
/// Adjacency lists are scanned in increasing order and free left vertices
/// are processed by index, so the witness is a function of the graph alone.
pub fn max_matching(graph: &BipartiteGraph) -> MatchingWitness {
    let (mate_left, _) = hopcroft_karp(graph);
    MatchingWitness::new(
        mate_left
            .iter()
            .enumerate()
            .filter_map(|(x, &y)| y.map(|y| (x, y)))
            .collect(),
    )
}

pub fn matching_number(graph: &BipartiteGraph) -> usize {
    hopcroft_karp(graph).0.iter().filter(|m| m.is_some()).count()
}

pub fn has_perfect_matching(graph: &BipartiteGraph) -> bool {
    graph.left <= graph.right && matching_number(graph) == graph.left
}

fn hopcroft_karp(graph: &BipartiteGraph) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    const INF: usize = usize::MAX;
    let n = graph.left;
    let mut mate_left: Vec<Option<usize>> = alloc::vec![None; n];
    let mut mate_right: Vec<Option<usize>> = alloc::vec![None; graph.right];
    let mut dist = alloc::vec![INF; n];
    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for x in 0..n {
            if mate_left[x].is_none() {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = INF;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &graph.adj[x] {
                match mate_right[y] {
                    None => found = true,
                    Some(x2) if dist[x2] == INF => {
                        dist[x2] = dist[x] + 1;
                        queue.push_back(x2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next_edge = alloc::vec![0usize; n];
        for x in 0..n {
            if mate_left[x].is_none() {
                augment(graph, x, &mut mate_left, &mut mate_right, &mut dist, &mut next_edge);
            }
        }
    }
    (mate_left, mate_right)
}

/// Iterative DFS along the BFS layers; returns whether `root` was matched.
fn augment(
    graph: &BipartiteGraph,
    root: usize,
    mate_left: &mut [Option<usize>],
    mate_right: &mut [Option<usize>],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    let mut stack = alloc::vec![root];
    while let Some(&x) = stack.last() {
        let mut advanced = false;
        while next_edge[x] < graph.adj[x].len() {
            let y = graph.adj[x][next_edge[x]];
            match mate_right[y] {
                None => {
                    // flip the path recorded on the stack
                    let mut y = y;
                    while let Some(x) = stack.pop() {
                        let prev = mate_left[x];
                        mate_left[x] = Some(y);
                        mate_right[y] = Some(x);
                        match prev {
                            Some(p) => y = p,
                            None => break,
                        }
                    }
                    return true;
                }
                Some(x2) if dist[x2] != usize::MAX && dist[x2] == dist[x] + 1 => {
                    stack.push(x2);
                    advanced = true;
                    break;
                }
                Some(_) => next_edge[x] += 1,
            }
        }
        if !advanced {
            dist[x] = usize::MAX;
            stack.pop();
            if let Some(&parent) = stack.last() {
                next_edge[parent] += 1;
            }
        }
    }
    false
}

/// How a Hall deficiency was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HallWitness {
    /// Found by enumerating every left subset; `subset` is the attaining set
    /// with the smallest bitmask.
    Exhaustive { subset: Vec<usize> },
    /// Derived from a maximum matching. `subset` is the set of left vertices
    /// reachable from unmatched ones by alternating paths, and the cover is
    /// the matching König vertex cover.
    Konig {
        subset: Vec<usize>,
        left_cover: Vec<usize>,
        right_cover: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallDeficiency {
    pub deficiency: usize,
    pub witness: HallWitness,
}

impl HallDeficiency {
    pub fn subset(&self) -> &[usize] {
        match &self.witness {
            HallWitness::Exhaustive { subset } | HallWitness::Konig { subset, .. } => subset,
        }
    }
}

/// Hall deficiency `max_S |S| − |N(S)|`, exhaustive up to the default limit
/// and König-certified beyond it.
pub fn hall_deficiency(graph: &BipartiteGraph) -> HallDeficiency {
    if graph.left <= DEFAULT_EXHAUSTIVE_LIMIT {
        hall_deficiency_exhaustive(graph, DEFAULT_EXHAUSTIVE_LIMIT).expect("size checked")
    } else {
        hall_deficiency_konig(graph)
    }
}

/// Enumerates all `2^|left|` subsets in Gray-code order, tracking neighbor
/// multiplicities incrementally.
pub fn hall_deficiency_exhaustive(graph: &BipartiteGraph, limit: usize) -> Result<HallDeficiency, BipartiteError> {
    let n = graph.left;
    if n > limit || n >= usize::BITS as usize {
        return Err(BipartiteError::TooLarge { size: n, limit });
    }
    let mut hits = alloc::vec![0u32; graph.right];
    let mut covered = 0usize;
    let mut mask = 0usize;
    let (mut best_def, mut best_mask) = (0usize, 0usize);
    for step in 1usize..(1usize << n) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        let adding = mask & (1 << bit) != 0;
        for &y in &graph.adj[bit] {
            if adding {
                hits[y] += 1;
                if hits[y] == 1 {
                    covered += 1;
                }
            } else {
                hits[y] -= 1;
                if hits[y] == 0 {
                    covered -= 1;
                }
            }
        }
        let size = mask.count_ones() as usize;
        let def = size.saturating_sub(covered);
        if def > best_def || (def == best_def && def > 0 && mask < best_mask) {
            best_def = def;
            best_mask = mask;
        }
    }
    let subset = (0..n).filter(|&i| best_mask & (1 << i) != 0).collect();
    Ok(HallDeficiency { deficiency: best_def, witness: HallWitness::Exhaustive { subset } })
}

/// Deficiency from a maximum matching via alternating reachability.
pub fn hall_deficiency_konig(graph: &BipartiteGraph) -> HallDeficiency {
    let (mate_left, mate_right) = hopcroft_karp(graph);
    let mut seen_left = alloc::vec![false; graph.left];
    let mut seen_right = alloc::vec![false; graph.right];
    let mut queue: VecDeque<usize> = (0..graph.left).filter(|&x| mate_left[x].is_none()).collect();
    for &x in &queue {
        seen_left[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for &y in &graph.adj[x] {
            if !seen_right[y] {
                seen_right[y] = true;
                if let Some(x2) = mate_right[y] {
                    if !seen_left[x2] {
                        seen_left[x2] = true;
                        queue.push_back(x2);
                    }
                }
            }
        }
    }
    let subset: Vec<usize> = (0..graph.left).filter(|&x| seen_left[x]).collect();
    let left_cover = (0..graph.left).filter(|&x| !seen_left[x]).collect();
    let right_cover = (0..graph.right).filter(|&y| seen_right[y]).collect();
    let deficiency = mate_left.iter().filter(|m| m.is_none()).count();
    HallDeficiency { deficiency, witness: HallWitness::Konig { subset, left_cover, right_cover } }
}

/// `B(E, F, U)`: left = `e`, right = `f` (sorted ground indices), with an
/// edge when some block contains both endpoints.
pub fn covering_graph_indices<A: Ord + Clone>(cover: &Covering<A>, e: &[usize], f: &[usize]) -> Result<BipartiteGraph, BipartiteError> {
    let n = cover.ground().len();
    if let Some(pos) = e.iter().chain(f).position(|&i| i >= n) {
        return Err(CoverError::OutsideGround(pos).into());
    }
    let member = cover.memberships();
    Ok(BipartiteGraph::from_fn(e.len(), f.len(), |x, y| {
        crate::cover::meets(&member[e[x]], &member[f[y]])
    }))
}

/// The covering graph on atom sets; sides are listed in sorted atom order.
pub fn covering_graph<A: Ord + Clone>(cover: &Covering<A>, e: &[A], f: &[A]) -> Result<BipartiteGraph, BipartiteError> {
    let e = cover.ground().indices(e)?;
    let f = cover.ground().indices(f)?;
    covering_graph_indices(cover, &e, &f)
}

/// `μ(E, F, U)`.
pub fn mu<A: Ord + Clone>(cover: &Covering<A>, e: &[A], f: &[A]) -> Result<usize, BipartiteError> {
    Ok(matching_number(&covering_graph(cover, e, f)?))
}

pub fn mu_indices<A: Ord + Clone>(cover: &Covering<A>, e: &[usize], f: &[usize]) -> Result<usize, BipartiteError> {
    Ok(matching_number(&covering_graph_indices(cover, e, f)?))
}

/// Closed form of `μ` for partitions: `Σ_B min(|E∩B|, |F∩B|)`.
pub fn mu_partition<A: Ord + Clone>(partition: &Covering<A>, e: &[A], f: &[A]) -> Result<usize, BipartiteError> {
    let e = partition.ground().indices(e)?;
    let f = partition.ground().indices(f)?;
    mu_partition_indices(partition, &e, &f)
}

pub fn mu_partition_indices<A: Ord + Clone>(partition: &Covering<A>, e: &[usize], f: &[usize]) -> Result<usize, BipartiteError> {
    if let Some((a, b)) = partition.partition_overlap() {
        return Err(BipartiteError::NotPartition(a, b));
    }
    let n = partition.ground().len();
    if let Some(pos) = e.iter().chain(f).position(|&i| i >= n) {
        return Err(CoverError::OutsideGround(pos).into());
    }
    let mut owner = alloc::vec![0usize; n];
    for (b, block) in partition.blocks().iter().enumerate() {
        for &i in block {
            owner[i] = b;
        }
    }
    let blocks = partition.blocks().len();
    let mut left = alloc::vec![0usize; blocks];
    let mut right = alloc::vec![0usize; blocks];
    for &i in e {
        left[owner[i]] += 1;
    }
    for &i in f {
        right[owner[i]] += 1;
    }
    Ok(left.iter().zip(&right).map(|(a, b)| *a.min(b)).sum())
}

/// A composed matching and the guaranteed lower bound on its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedMatching {
    /// Matching in `B(F_0, F_n, U^{*,n-1})`, indices into sorted `F_0` and `F_n`.
    pub witness: MatchingWitness,
    /// `Σ |φ_i| − Σ_{0<i<n} |F_i|`; may be negative, in which case it is vacuous.
    pub bound: i64,
}

/// Relational composition of a chain of matchings `F_0 → F_1 → … → F_n`.
///
/// `sets` holds `F_0..=F_n` as sorted ground indices and `witnesses[i]`
/// matches `F_i` into `F_{i+1}` inside `B(F_i, F_{i+1}, U)`. Every witness is
/// validated against its covering graph before composing.
pub fn compose_matchings<A: Ord + Clone>(
    cover: &Covering<A>,
    sets: &[Vec<usize>],
    witnesses: &[MatchingWitness],
) -> Result<ComposedMatching, BipartiteError> {
    if sets.len() != witnesses.len() + 1 || witnesses.is_empty() {
        return Err(BipartiteError::ChainShape { sets: sets.len(), witnesses: witnesses.len() });
    }
    for (step, w) in witnesses.iter().enumerate() {
        let graph = covering_graph_indices(cover, &sets[step], &sets[step + 1])?;
        w.validate(&graph)
            .map_err(|source| BipartiteError::ChainWitness { step, source })?;
    }
    let mut pairs = Vec::new();
    'start: for x in 0..sets[0].len() {
        let mut at = x;
        for w in witnesses {
            match w.image(at) {
                Some(next) => at = next,
                None => continue 'start,
            }
        }
        pairs.push((x, at));
    }
    let total: i64 = witnesses.iter().map(|w| w.len() as i64).sum();
    let middle: i64 = sets[1..sets.len() - 1].iter().map(|s| s.len() as i64).sum();
    Ok(ComposedMatching { witness: MatchingWitness::new(pairs), bound: total - middle })
}
