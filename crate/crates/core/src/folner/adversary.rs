use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{locate, Coloring, FolnerError, Mode};
use crate::cover::GroundSet;
use crate::groups::{GroupElem, GroupModel};
use crate::rational::{self, Rational};

/// Largest number of colorings an exhaustive adversary will enumerate.
pub const DEFAULT_COLORING_CAP: u128 = 1 << 22;

// sideways or worse moves tolerated before a restart
const PLATEAU: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdversaryStrategy {
    Exhaustive { cap: u128 },
    /// Single-atom recoloring from random starts; `budget` counts evaluations.
    Local { seed: u64, budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryResult {
    /// Coloring of `∪ gF` over the required translates.
    pub coloring: Coloring<GroupElem>,
    /// `min μ(gF, hF, partition) / |F|`, recomputed from the coloring.
    pub ratio: Rational,
    pub evaluated: usize,
}

struct Instance {
    pairs: Vec<(Vec<usize>, Vec<usize>)>,
    atoms: usize,
    colors: usize,
}

impl Instance {
    /// `(min μ, Σ μ)` over the required pairs, with `μ` in closed form.
    fn score(&self, colors: &[usize]) -> (usize, usize) {
        let mut least = usize::MAX;
        let mut total = 0;
        let mut left = alloc::vec![0usize; self.colors];
        let mut right = alloc::vec![0usize; self.colors];
        for (l, r) in &self.pairs {
            left.iter_mut().for_each(|c| *c = 0);
            right.iter_mut().for_each(|c| *c = 0);
            for &i in l {
                left[colors[i]] += 1;
            }
            for &i in r {
                right[colors[i]] += 1;
            }
            let mu: usize = left.iter().zip(&right).map(|(a, b)| *a.min(b)).sum();
            least = least.min(mu);
            total += mu;
        }
        (least, total)
    }
}

/// Searches for a coloring with `k + 1` colors that minimizes the worst
/// matching ratio of `F` over the required pairs.
pub fn adversary_coloring(
    group: &GroupModel,
    f: &[GroupElem],
    e: &[GroupElem],
    k: usize,
    mode: Mode,
    strategy: AdversaryStrategy,
) -> Result<AdversaryResult, FolnerError> {
    if k < 1 {
        return Err(FolnerError::TooFewColors);
    }
    let mut f = f.to_vec();
    f.sort();
    f.dedup();
    if f.is_empty() {
        return Err(FolnerError::EmptySet);
    }
    let mut e = e.to_vec();
    e.sort();
    e.dedup();
    let required = mode.required_pairs(group, &e);
    let mut translates = Vec::with_capacity(required.len());
    let mut all = Vec::new();
    for (g, h) in &required {
        let (gf, hf) = (group.translate(g, &f)?, group.translate(h, &f)?);
        all.extend(gf.iter().cloned());
        all.extend(hf.iter().cloned());
        translates.push((gf, hf));
    }
    if all.is_empty() {
        all = f.clone();
    }
    let window = GroundSet::from_iter_dedup(all)?;
    let pairs = translates
        .iter()
        .map(|(gf, hf)| Ok((locate(&window, gf)?, locate(&window, hf)?)))
        .collect::<Result<Vec<_>, FolnerError>>()?;
    let inst = Instance { pairs, atoms: window.len(), colors: k + 1 };

    let (colors, evaluated) = match strategy {
        AdversaryStrategy::Exhaustive { cap } => exhaustive(&inst, cap)?,
        AdversaryStrategy::Local { seed, budget } => {
            if budget == 0 {
                return Err(FolnerError::BadBudget);
            }
            local(&inst, seed, budget)
        }
    };
    let coloring = Coloring::new(window, colors, k)?;
    let (least, _) = inst.score(coloring.colors());
    let least = if inst.pairs.is_empty() { f.len() } else { least };
    Ok(AdversaryResult { coloring, ratio: rational::fraction(least, f.len()), evaluated })
}

fn exhaustive(inst: &Instance, cap: u128) -> Result<(Vec<usize>, usize), FolnerError> {
    let total = (inst.colors as u128).checked_pow(inst.atoms as u32);
    if total.is_none_or(|t| t > cap) {
        return Err(FolnerError::ColoringCap { atoms: inst.atoms, colors: inst.colors, cap });
    }
    let mut colors = alloc::vec![0usize; inst.atoms];
    let mut best = (colors.clone(), inst.score(&colors));
    let mut evaluated = 1;
    loop {
        // odometer step, least significant atom last
        let Some(pos) = colors.iter().rposition(|&c| c + 1 < inst.colors) else { break };
        colors[pos] += 1;
        colors[pos + 1..].iter_mut().for_each(|c| *c = 0);
        let s = inst.score(&colors);
        evaluated += 1;
        if s < best.1 {
            best = (colors.clone(), s);
            if s.0 == 0 {
                break;
            }
        }
    }
    Ok((best.0, evaluated))
}

fn local(inst: &Instance, seed: u64, budget: usize) -> (Vec<usize>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluated = 0;
    let mut best: Option<(Vec<usize>, (usize, usize))> = None;
    while evaluated < budget {
        let mut colors: Vec<usize> = (0..inst.atoms).map(|_| rng.gen_range(0..inst.colors)).collect();
        let mut score = inst.score(&colors);
        evaluated += 1;
        let mut stale = 0;
        while evaluated < budget && stale < PLATEAU && inst.atoms > 0 {
            if best.as_ref().is_none_or(|b| score < b.1) {
                best = Some((colors.clone(), score));
            }
            let atom = rng.gen_range(0..inst.atoms);
            let shift = rng.gen_range(1..inst.colors);
            let old = colors[atom];
            colors[atom] = (old + shift) % inst.colors;
            let next = inst.score(&colors);
            evaluated += 1;
            if next < score {
                score = next;
                stale = 0;
            } else if next == score {
                stale += 1;
            } else {
                colors[atom] = old;
                stale += 1;
            }
        }
        if best.as_ref().is_none_or(|b| score < b.1) {
            best = Some((colors, score));
        }
    }
    (best.map(|b| b.0).unwrap_or_default(), evaluated)
}
