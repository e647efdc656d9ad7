//! Brute-force oracles. Nothing here calls the matching, Hall or closed-form
//! routines under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Maximum matching size by trying every injection from the left side.
pub fn brute_matching(left: usize, right: usize, edge: &dyn Fn(usize, usize) -> bool) -> usize {
    fn go(x: usize, left: usize, right: usize, edge: &dyn Fn(usize, usize) -> bool, used: &mut Vec<bool>) -> usize {
        if x == left {
            return 0;
        }
        let mut best = go(x + 1, left, right, edge, used);
        for y in 0..right {
            if !used[y] && edge(x, y) {
                used[y] = true;
                best = best.max(1 + go(x + 1, left, right, edge, used));
                used[y] = false;
            }
        }
        best
    }
    go(0, left, right, edge, &mut vec![false; right])
}

/// `max_S |S| − |N(S)|` over every subset of the left side.
pub fn brute_deficiency(left: usize, adj: &[Vec<usize>]) -> usize {
    let mut best = 0;
    for mask in 0u32..(1 << left) {
        let mut nbrs = BTreeSet::new();
        for (x, row) in adj.iter().enumerate() {
            if mask >> x & 1 == 1 {
                nbrs.extend(row.iter().copied());
            }
        }
        best = best.max((mask.count_ones() as usize).saturating_sub(nbrs.len()));
    }
    best
}

/// `μ(E, F, U)` with blocks given as plain sets of atoms.
pub fn brute_mu(blocks: &[Vec<usize>], e: &[usize], f: &[usize]) -> usize {
    let edge = |x: usize, y: usize| blocks.iter().any(|b| b.contains(&e[x]) && b.contains(&f[y]));
    brute_matching(e.len(), f.len(), &edge)
}

/// Reduced words over `a, b` as strings; capitals are inverses.
pub fn free_ball(radius: usize) -> Vec<String> {
    let letters = ['a', 'A', 'b', 'B'];
    let mut out = vec![String::new()];
    let mut shell = vec![String::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &shell {
            for &l in &letters {
                if w.chars().last().is_some_and(|c| c != l && c.eq_ignore_ascii_case(&l)) {
                    continue;
                }
                next.push(format!("{w}{l}"));
            }
        }
        out.extend(next.iter().cloned());
        shell = next;
    }
    out
}

/// Left multiplication by a single letter on a reduced word.
pub fn left_mul(letter: char, w: &str) -> String {
    match w.chars().next() {
        Some(c) if c != letter && c.eq_ignore_ascii_case(&letter) => w[1..].to_string(),
        _ => format!("{letter}{w}"),
    }
}

/// Kuhn's augmenting-path matching, for graphs too large to brute-force.
pub fn kuhn_matching(left: usize, right: usize, edge: &dyn Fn(usize, usize) -> bool) -> usize {
    fn augment(x: usize, right: usize, edge: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for y in 0..right {
            if edge(x, y) && !seen[y] {
                seen[y] = true;
                let free = match owner[y] {
                    None => true,
                    Some(z) => augment(z, right, edge, seen, owner),
                };
                if free {
                    owner[y] = Some(x);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..left).filter(|&x| augment(x, right, edge, &mut vec![false; right], &mut owner)).count()
}
