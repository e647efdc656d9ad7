use alloc::vec::Vec;

use super::FolnerError;
use crate::bipartite::{covering_graph_indices, max_matching, MatchingWitness};
use crate::cover::{Covering, GroundSet};
use crate::groups::{GroupElem, GroupModel};

/// Largest group for which the minimum net is found exactly.
pub const DEFAULT_NET_CAP: usize = 60;

// masks are u128, so exact search never goes beyond this
const MASK_BITS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectNet {
    /// `V = ∩_g g⁻¹Ug`, sorted.
    pub v: Vec<GroupElem>,
    /// A set with `VF = G`, sorted.
    pub f: Vec<GroupElem>,
    /// `{U⁻¹Ux : x ∈ G}` over the whole group.
    pub cover: Covering<GroupElem>,
    /// For each `g`, a perfect matching of `B(F, gF, cover)` as indices into
    /// sorted `F` and sorted `gF`.
    pub witnesses: Vec<(GroupElem, MatchingWitness)>,
    /// False when the group exceeded the cap and a greedy cover was used.
    pub minimal: bool,
}

/// Builds `V`, a smallest `F` with `VF = G`, and perfect matchings between
/// `F` and each translate `gF`.
pub fn perfect_net(group: &GroupModel, u: &[GroupElem], cap: usize) -> Result<PerfectNet, FolnerError> {
    let elements = group.elements()?;
    let mut u = u.to_vec();
    for x in &u {
        group.check(x)?;
    }
    u.sort();
    u.dedup();
    if u.binary_search(&group.identity()).is_err() {
        return Err(FolnerError::MissingIdentity);
    }

    let mut v = elements.clone();
    for g in &elements {
        let conj: Vec<GroupElem> = u
            .iter()
            .map(|x| group.multiply(&group.multiply(&group.inverse(g)?, x)?, g))
            .collect::<Result<_, _>>()?;
        v.retain(|y| conj.contains(y));
    }

    let index = |x: &GroupElem| match x {
        GroupElem::Index(i) => *i,
        _ => unreachable!("finite groups use indexed elements"),
    };
    let n = elements.len();
    // sets[x] = Vx as a list of element indices
    let sets: Vec<Vec<usize>> = elements
        .iter()
        .map(|x| Ok(group.translate_right(&v, x)?.iter().map(index).collect()))
        .collect::<Result<_, FolnerError>>()?;
    let exact = n <= cap.min(MASK_BITS);
    let chosen = if exact { exact_cover(n, &sets, v.len()) } else { greedy_cover(n, &sets) };
    let f: Vec<GroupElem> = chosen.into_iter().map(GroupElem::Index).collect();

    let mut u_inv: Vec<GroupElem> = u.iter().map(|x| group.inverse(x)).collect::<Result<_, _>>()?;
    u_inv.sort();
    let uu = group.product_set(&u_inv, &u)?;
    let blocks = elements
        .iter()
        .map(|x| group.translate_right(&uu, x))
        .collect::<Result<Vec<_>, _>>()?;
    let ground = GroundSet::new(elements.clone())?;
    let cover = Covering::new(ground, blocks)?;

    let fi: Vec<usize> = f.iter().map(index).collect();
    let mut witnesses = Vec::with_capacity(n);
    for g in &elements {
        let gf: Vec<usize> = group.translate(g, &f)?.iter().map(index).collect();
        let graph = covering_graph_indices(&cover, &fi, &gf)?;
        let witness = max_matching(&graph);
        if witness.len() != f.len() {
            return Err(FolnerError::NoPerfectMatching(g.clone()));
        }
        witnesses.push((g.clone(), witness));
    }
    Ok(PerfectNet { v, f, cover, witnesses, minimal: exact })
}

/// Repeatedly takes the set covering the most new points, lowest index first.
fn greedy_cover(n: usize, sets: &[Vec<usize>]) -> Vec<usize> {
    let mut covered = alloc::vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    while left > 0 {
        let (best, _) = sets
            .iter()
            .enumerate()
            .map(|(x, s)| (x, s.iter().filter(|&&p| !covered[p]).count()))
            .fold((0, 0), |acc, cand| if cand.1 > acc.1 { cand } else { acc });
        for &p in &sets[best] {
            if !covered[p] {
                covered[p] = true;
                left -= 1;
            }
        }
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen
}

/// Minimum set cover by branch and bound. The greedy cover seeds the bound
/// and is kept unless a strictly smaller cover exists.
fn exact_cover(n: usize, sets: &[Vec<usize>], set_size: usize) -> Vec<usize> {
    let masks: Vec<u128> = sets.iter().map(|s| s.iter().fold(0u128, |m, &p| m | 1 << p)).collect();
    let full: u128 = if n == MASK_BITS { u128::MAX } else { (1u128 << n) - 1 };
    // hitting[p] = sets containing p
    let mut hitting = alloc::vec![Vec::new(); n];
    for (x, s) in sets.iter().enumerate() {
        for &p in s {
            hitting[p].push(x);
        }
    }
    let mut best = greedy_cover(n, sets);
    let mut stack = Vec::new();
    branch(full, &masks, &hitting, set_size.max(1), &mut stack, &mut best);
    best.sort_unstable();
    best
}

fn branch(
    uncovered: u128,
    masks: &[u128],
    hitting: &[Vec<usize>],
    set_size: usize,
    stack: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if uncovered == 0 {
        if stack.len() < best.len() {
            *best = stack.clone();
        }
        return;
    }
    let remaining = uncovered.count_ones() as usize;
    if stack.len() + remaining.div_ceil(set_size) >= best.len() {
        return;
    }
    let p = uncovered.trailing_zeros() as usize;
    for &x in &hitting[p] {
        stack.push(x);
        branch(uncovered & !masks[x], masks, hitting, set_size, stack, best);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::has_perfect_matching;
    use crate::groups::TableGroup;
    use alloc::vec;

    fn idx(v: &[usize]) -> Vec<GroupElem> {
        v.iter().map(|&i| GroupElem::Index(i)).collect()
    }

    #[test]
    fn whole_group() {
        let g = GroupModel::table(TableGroup::cyclic(5));
        let net = perfect_net(&g, &g.elements().unwrap(), DEFAULT_NET_CAP).unwrap();
        assert_eq!(net.v.len(), 5);
        assert_eq!(net.f, vec![g.identity()]);
        assert!(net.minimal);
    }

    #[test]
    fn cyclic_six() {
        let g = GroupModel::table(TableGroup::cyclic(6));
        let net = perfect_net(&g, &idx(&[0, 1]), DEFAULT_NET_CAP).unwrap();
        assert_eq!(net.v, idx(&[0, 1]));
        assert_eq!(net.f, idx(&[0, 2, 4]));
        assert_eq!(net.witnesses.len(), 6);
        let (one, w) = &net.witnesses[1];
        assert_eq!(*one, GroupElem::Index(1));
        assert_eq!(w.pairs, vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn symmetric_three() {
        let g = GroupModel::table(TableGroup::symmetric(3));
        let t = g.parse_elem("102").unwrap();
        let net = perfect_net(&g, &[g.identity(), t], DEFAULT_NET_CAP).unwrap();
        assert_eq!(net.v, vec![g.identity()]);
        assert_eq!(net.f.len(), 6);
        for (h, w) in &net.witnesses {
            let hf: Vec<usize> = g.translate(h, &net.f).unwrap().iter().map(|x| match x {
                GroupElem::Index(i) => *i,
                _ => unreachable!(),
            }).collect();
            let fi: Vec<usize> = (0..6).collect();
            let graph = covering_graph_indices(&net.cover, &fi, &hf).unwrap();
            assert!(w.validate(&graph).is_ok());
            assert!(has_perfect_matching(&graph));
        }
    }

    #[test]
    fn greedy_fallback_is_flagged() {
        let g = GroupModel::table(TableGroup::cyclic(12));
        let net = perfect_net(&g, &idx(&[0, 1, 2]), 4).unwrap();
        assert!(!net.minimal);
        assert_eq!(net.f, idx(&[0, 3, 6, 9]));
    }

    #[test]
    fn identity_required() {
        let g = GroupModel::table(TableGroup::cyclic(6));
        assert_eq!(perfect_net(&g, &idx(&[1]), DEFAULT_NET_CAP), Err(FolnerError::MissingIdentity));
    }
}
