//! Finite coverings of finite ground sets.
//!
//! A [`Covering`] stores its blocks as sorted index lists into a sorted
//! [`GroundSet`], and the family of blocks itself is sorted and deduplicated.
//! Two coverings of the same ground set are therefore equal exactly when they
//! have the same blocks.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

/// Default bound for [`Covering::star_iterate`].
pub const DEFAULT_STAR_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("ground set is empty")]
    EmptyGround,
    #[error("atom at position {0} is listed twice in the ground set")]
    DuplicateAtom(usize),
    #[error("block {block} contains an atom outside the ground set")]
    UnknownAtom { block: usize },
    #[error("subset element at position {0} is outside the ground set")]
    OutsideGround(usize),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("ground atom {0} is not covered by any block")]
    Uncovered(usize),
    #[error("coverings live on different ground sets")]
    GroundMismatch,
    #[error("star iterate {requested} exceeds the limit {limit}")]
    IterationLimit { requested: usize, limit: usize },
    #[error("blocks {0} and {1} overlap, so the covering is not a partition")]
    NotPartition(usize, usize),
}

/// A non-empty finite set of distinct atoms, kept in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet<A> {
    atoms: Vec<A>,
}

impl<A: Ord + Clone> GroundSet<A> {
    pub fn new(atoms: Vec<A>) -> Result<Self, CoverError> {
        if atoms.is_empty() {
            return Err(CoverError::EmptyGround);
        }
        let mut indexed: Vec<(usize, A)> = atoms.into_iter().enumerate().collect();
        indexed.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        for pair in indexed.windows(2) {
            if pair[0].1 == pair[1].1 {
                return Err(CoverError::DuplicateAtom(pair[0].0.max(pair[1].0)));
            }
        }
        Ok(Self { atoms: indexed.into_iter().map(|(_, a)| a).collect() })
    }

    /// Builds a ground set from atoms that may repeat.
    pub fn from_iter_dedup<I: IntoIterator<Item = A>>(atoms: I) -> Result<Self, CoverError> {
        let set: BTreeSet<A> = atoms.into_iter().collect();
        if set.is_empty() {
            return Err(CoverError::EmptyGround);
        }
        Ok(Self { atoms: set.into_iter().collect() })
    }

    pub fn atoms(&self) -> &[A] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &A) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn atom(&self, index: usize) -> &A {
        &self.atoms[index]
    }

    /// Maps atoms to sorted, deduplicated ground indices.
    pub fn indices(&self, subset: &[A]) -> Result<Vec<usize>, CoverError> {
        let mut out = subset
            .iter()
            .enumerate()
            .map(|(pos, a)| self.index_of(a).ok_or(CoverError::OutsideGround(pos)))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn resolve(&self, indices: &[usize]) -> Vec<A> {
        indices.iter().map(|&i| self.atoms[i].clone()).collect()
    }
}

/// A finite family of subsets whose union is the ground set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Covering<A> {
    ground: GroundSet<A>,
    blocks: Vec<Vec<usize>>,
}

impl<A: Ord + Clone> Covering<A> {
    /// Validates and canonicalizes a covering. Empty blocks are rejected.
    pub fn new(ground: GroundSet<A>, blocks: Vec<Vec<A>>) -> Result<Self, CoverError> {
        Self::build(ground, blocks, false)
    }

    /// Like [`Covering::new`] but keeps a single empty block if one is given.
    pub fn new_permissive(ground: GroundSet<A>, blocks: Vec<Vec<A>>) -> Result<Self, CoverError> {
        Self::build(ground, blocks, true)
    }

    fn build(ground: GroundSet<A>, blocks: Vec<Vec<A>>, allow_empty: bool) -> Result<Self, CoverError> {
        let mut index_blocks = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() && !allow_empty {
                return Err(CoverError::EmptyBlock(b));
            }
            let idx = ground
                .indices(block)
                .map_err(|_| CoverError::UnknownAtom { block: b })?;
            index_blocks.push(idx);
        }
        Self::from_index_blocks(ground, index_blocks)
    }

    /// Canonicalizes index blocks; empty blocks are kept only if present.
    pub fn from_index_blocks(ground: GroundSet<A>, mut blocks: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        let n = ground.len();
        let mut covered = alloc::vec![false; n];
        for (b, block) in blocks.iter_mut().enumerate() {
            block.sort_unstable();
            block.dedup();
            for &i in block.iter() {
                if i >= n {
                    return Err(CoverError::UnknownAtom { block: b });
                }
                covered[i] = true;
            }
        }
        if let Some(missing) = covered.iter().position(|c| !c) {
            return Err(CoverError::Uncovered(missing));
        }
        blocks.sort();
        blocks.dedup();
        Ok(Self { ground, blocks })
    }

    /// The partition into color classes of a total coloring of the ground set.
    pub fn from_coloring(ground: GroundSet<A>, colors: &[usize]) -> Result<Self, CoverError> {
        assert_eq!(colors.len(), ground.len(), "coloring must be total on the ground set");
        let max = colors.iter().copied().max().unwrap_or(0);
        let mut classes = alloc::vec![Vec::new(); max + 1];
        for (i, &c) in colors.iter().enumerate() {
            classes[c].push(i);
        }
        classes.retain(|c| !c.is_empty());
        Self::from_index_blocks(ground, classes)
    }

    /// The one-block covering `{X}`.
    pub fn trivial(ground: GroundSet<A>) -> Self {
        let all = (0..ground.len()).collect();
        Self { ground, blocks: alloc::vec![all] }
    }

    /// The covering by singletons.
    pub fn discrete(ground: GroundSet<A>) -> Self {
        let blocks = (0..ground.len()).map(|i| alloc::vec![i]).collect();
        Self { ground, blocks }
    }

    pub fn ground(&self) -> &GroundSet<A> {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_atoms(&self) -> Vec<Vec<A>> {
        self.blocks.iter().map(|b| self.ground.resolve(b)).collect()
    }

    fn check_same_ground(&self, other: &Self) -> Result<(), CoverError> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(CoverError::GroundMismatch)
        }
    }

    /// `self ≼ fine`: every block of `fine` lies inside some block of `self`.
    pub fn refined_by(&self, fine: &Self) -> Result<bool, CoverError> {
        self.check_same_ground(fine)?;
        Ok(fine
            .blocks
            .iter()
            .all(|v| self.blocks.iter().any(|u| is_subset(v, u))))
    }

    /// Pairwise intersections, with empty ones dropped.
    pub fn join(&self, other: &Self) -> Result<Self, CoverError> {
        self.check_same_ground(other)?;
        let mut blocks = Vec::new();
        for u in &self.blocks {
            for v in &other.blocks {
                let w = intersect(u, v);
                if !w.is_empty() {
                    blocks.push(w);
                }
            }
        }
        Self::from_index_blocks(self.ground.clone(), blocks)
    }

    /// Union of all blocks meeting `subset` (sorted ground indices).
    pub fn star_set(&self, subset: &[usize]) -> Vec<usize> {
        let mut hit = alloc::vec![false; self.ground.len()];
        for block in &self.blocks {
            if meets(block, subset) {
                for &i in block {
                    hit[i] = true;
                }
            }
        }
        hit.iter().enumerate().filter(|(_, &h)| h).map(|(i, _)| i).collect()
    }

    pub fn star_of_atom(&self, index: usize) -> Vec<usize> {
        self.star_set(&[index])
    }

    /// The covering by block stars.
    pub fn star(&self) -> Self {
        let blocks = self.blocks.iter().map(|b| self.star_set(b)).collect();
        Self::from_index_blocks(self.ground.clone(), blocks).expect("stars of a covering cover the ground set")
    }

    pub fn star_iterate(&self, n: usize) -> Result<Self, CoverError> {
        self.star_iterate_bounded(n, DEFAULT_STAR_LIMIT)
    }

    pub fn star_iterate_bounded(&self, n: usize, limit: usize) -> Result<Self, CoverError> {
        if n > limit {
            return Err(CoverError::IterationLimit { requested: n, limit });
        }
        let mut current = self.clone();
        for _ in 0..n {
            let next = current.star();
            if next == current {
                break;
            }
            current = next;
        }
        Ok(current)
    }

    /// `self ≼* fine`, i.e. `self ≼ fine*`.
    pub fn star_refined_by(&self, fine: &Self) -> Result<bool, CoverError> {
        self.check_same_ground(fine)?;
        self.refined_by(&fine.star())
    }

    pub fn is_partition(&self) -> bool {
        self.partition_overlap().is_none()
    }

    pub(crate) fn partition_overlap(&self) -> Option<(usize, usize)> {
        let mut owner = alloc::vec![usize::MAX; self.ground.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                if owner[i] != usize::MAX {
                    return Some((owner[i], b));
                }
                owner[i] = b;
            }
        }
        None
    }

    /// For each ground atom, the sorted ids of the blocks containing it.
    pub fn memberships(&self) -> Vec<Vec<usize>> {
        let mut out = alloc::vec![Vec::new(); self.ground.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                out[i].push(b);
            }
        }
        out
    }
}

/// Both slices sorted ascending.
pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
    }
    true
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn meets(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return true,
        }
    }
    false
}
