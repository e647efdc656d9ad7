use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{locate, FolnerError};
use crate::bipartite::mu_indices;
use crate::cover::{intersect, is_subset, Covering, GroundSet};
use crate::groups::{FiniteAction, GroupElem, GroupModel, TableGroup};
use crate::rational::{self, Rational};

/// `|F ∩ gF| / |F|`.
pub fn classical_ratio(group: &GroupModel, f: &[GroupElem], g: &GroupElem) -> Result<Rational, FolnerError> {
    let mut f = f.to_vec();
    f.sort();
    f.dedup();
    if f.is_empty() {
        return Err(FolnerError::EmptySet);
    }
    let gf = group.translate(g, &f)?;
    let common = gf.iter().filter(|x| f.binary_search(x).is_ok()).count();
    Ok(rational::fraction(common, f.len()))
}

/// `| |F∩A| − |gF∩A| |`, with `F`, `gF` and `A` inside `window`.
pub fn moore_gap(
    group: &GroupModel,
    window: &GroundSet<GroupElem>,
    f: &[GroupElem],
    g: &GroupElem,
    a: &[GroupElem],
) -> Result<usize, FolnerError> {
    let fi = locate(window, &group.translate(&group.identity(), f)?)?;
    let gfi = locate(window, &group.translate(g, f)?)?;
    let ai = locate(window, a)?;
    Ok(intersect(&fi, &ai).len().abs_diff(intersect(&gfi, &ai).len()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorReport {
    pub holds: bool,
    /// `(g, block, gap)` for every `g ∈ E` and every block of the partition.
    pub gaps: Vec<(GroupElem, usize, usize)>,
}

/// Checks `| |F∩U| − |g(F)∩U| | ≤ ε|F|` for all `g ∈ E` and blocks `U`.
pub fn cantor_check(
    action: &FiniteAction,
    f: &[usize],
    e: &[GroupElem],
    partition: &Covering<String>,
    eps: &Rational,
) -> Result<CantorReport, FolnerError> {
    if partition.ground() != action.points() {
        return Err(FolnerError::GroundMismatch);
    }
    if !partition.is_partition() {
        return Err(FolnerError::NotPartition);
    }
    let mut f = f.to_vec();
    f.sort_unstable();
    f.dedup();
    let bound = eps * Rational::from_integer(f.len().into());
    let mut gaps = Vec::new();
    let mut holds = true;
    for g in e {
        let image = action.act(g, &f)?;
        for (b, block) in partition.blocks().iter().enumerate() {
            let gap = intersect(&f, block).len().abs_diff(intersect(&image, block).len());
            if Rational::from_integer(gap.into()) > bound {
                holds = false;
            }
            gaps.push((g.clone(), b, gap));
        }
    }
    Ok(CantorReport { holds, gaps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonoResult {
    /// `Eg` lies inside block `block` of the covering.
    Found { g: GroupElem, block: usize },
    /// No admissible `g` works; `scanned` counts the `g` with `Eg ⊆ W`.
    NotFound { scanned: usize },
}

/// Scans the window in order for `g` with `Eg` inside a single block.
pub fn monochromatic_translate(
    group: &GroupModel,
    cover: &Covering<GroupElem>,
    e: &[GroupElem],
) -> Result<MonoResult, FolnerError> {
    if e.is_empty() {
        return Err(FolnerError::EmptySet);
    }
    let window = cover.ground();
    let mut scanned = 0;
    for g in window.atoms() {
        let Ok(eg) = locate(window, &group.translate_right(e, g)?) else {
            continue;
        };
        scanned += 1;
        if let Some(block) = cover.blocks().iter().position(|b| is_subset(&eg, b)) {
            return Ok(MonoResult::Found { g: g.clone(), block });
        }
    }
    Ok(MonoResult::NotFound { scanned })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaBoostReport {
    pub theta0: Rational,
    /// Instances where both hypotheses held.
    pub tested: usize,
    /// Random draws, including rejected ones.
    pub drawn: usize,
    /// `(g, h, μ(gF, hF, V*), |F|)` for each instance below `(2θ₀−1)|F|`.
    pub violations: Vec<(usize, usize, usize, usize)>,
}

const BOOST_ORDER: usize = 12;

/// Random rotation instances on `Z/12`: a covering `V`, a set `F` and
/// `g, h` with `μ(F,gF,V) ≥ θ₀|F|` and `μ(F,hF,V) ≥ θ₀|F|`, checked for
/// `μ(gF,hF,V*) ≥ (2θ₀−1)|F|`. Draws failing a hypothesis are discarded.
pub fn theta_boost_check(theta0: &Rational, instances: usize, seed: u64) -> Result<ThetaBoostReport, FolnerError> {
    let half = rational::ratio(1, 2);
    if *theta0 <= half || *theta0 > rational::int(1) {
        return Err(FolnerError::BadTheta);
    }
    let boosted = theta0 * rational::int(2) - rational::int(1);
    let group = GroupModel::table(TableGroup::cyclic(BOOST_ORDER));
    let ground = GroundSet::new(group.elements()?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ThetaBoostReport { theta0: theta0.clone(), tested: 0, drawn: 0, violations: Vec::new() };
    let max_draws = instances.saturating_mul(10_000).max(1);
    while report.tested < instances {
        if report.drawn >= max_draws {
            return Err(FolnerError::BadBudget);
        }
        report.drawn += 1;
        let cover = random_cover(&mut rng, &ground);
        let f = random_subset(&mut rng, 1, 8);
        let (g, h) = (rng.gen_range(0..BOOST_ORDER), rng.gen_range(0..BOOST_ORDER));
        let shift = |t: usize| -> Vec<usize> {
            let mut s: Vec<usize> = f.iter().map(|&x| (x + t) % BOOST_ORDER).collect();
            s.sort_unstable();
            s
        };
        let (gf, hf) = (shift(g), shift(h));
        let needed = rational::threshold(theta0, f.len());
        if mu_indices(&cover, &f, &gf)? < needed || mu_indices(&cover, &f, &hf)? < needed {
            continue;
        }
        report.tested += 1;
        let star = cover.star();
        let mu = mu_indices(&star, &gf, &hf)?;
        if mu < rational::threshold(&boosted, f.len()) {
            report.violations.push((g, h, mu, f.len()));
        }
    }
    Ok(report)
}

/// A covering of `Z/12` by up to five blocks, each either an arc or a
/// random subset; stray points join a random block.
fn random_cover(rng: &mut ChaCha8Rng, ground: &GroundSet<GroupElem>) -> Covering<GroupElem> {
    let n = ground.len();
    let count = rng.gen_range(1..=5);
    let mut blocks: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            if rng.gen_bool(0.5) {
                let start = rng.gen_range(0..n);
                let len = rng.gen_range(1..=n / 2);
                (0..len).map(|i| (start + i) % n).collect()
            } else {
                random_subset(rng, 1, n)
            }
        })
        .collect();
    for x in 0..n {
        if !blocks.iter().any(|b| b.contains(&x)) {
            let b = rng.gen_range(0..blocks.len());
            blocks[b].push(x);
        }
    }
    Covering::from_index_blocks(ground.clone(), blocks).expect("every point is covered")
}

fn random_subset(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Vec<usize> {
    let size = rng.gen_range(min..=max);
    let mut all: Vec<usize> = (0..BOOST_ORDER).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort_unstable();
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folner::Coloring;
    use crate::rational::{int, ratio};
    use alloc::string::String;
    use alloc::vec;

    fn z(i: i64) -> GroupElem {
        GroupElem::Vector(vec![i])
    }

    #[test]
    fn moore_gap_examples() {
        let grp = GroupModel::lattice(1).unwrap();
        let window = GroundSet::new((-1..=11).map(z).collect()).unwrap();
        let f: Vec<GroupElem> = (0..10).map(z).collect();
        assert_eq!(moore_gap(&grp, &window, &f, &z(1), &[]).unwrap(), 0);
        let evens: Vec<GroupElem> = (0..=11).filter(|i| i % 2 == 0).map(z).collect();
        assert!(moore_gap(&grp, &window, &f, &z(1), &evens).unwrap() <= 1);
        assert_eq!(moore_gap(&grp, &window, &f, &z(2), &[]), Ok(0));
        assert_eq!(moore_gap(&grp, &window, &f, &z(3), &[]), Err(FolnerError::WindowEscape(z(12))));
    }

    #[test]
    fn moore_gap_free_group() {
        let f2 = GroupModel::free(2).unwrap();
        let b2 = f2.ball(2).unwrap();
        let window = GroundSet::new(f2.ball(3).unwrap()).unwrap();
        let a_words: Vec<GroupElem> = window
            .atoms()
            .iter()
            .filter(|g| matches!(g, GroupElem::Word(w) if w.first() == Some(&1)))
            .cloned()
            .collect();
        let a = f2.parse_elem("a").unwrap();
        assert_eq!(moore_gap(&f2, &window, &b2, &a, &a_words).unwrap(), 9);
    }

    #[test]
    fn classical_ratio_interval() {
        let grp = GroupModel::lattice(1).unwrap();
        let f: Vec<GroupElem> = (0..10).map(z).collect();
        assert_eq!(classical_ratio(&grp, &f, &z(1)).unwrap(), ratio(9, 10));
        assert_eq!(classical_ratio(&grp, &f, &z(0)).unwrap(), int(1));
    }

    #[test]
    fn cantor_examples() {
        let grp = GroupModel::table(TableGroup::cyclic(6));
        let action = FiniteAction::regular(grp.clone()).unwrap();
        let points = action.points().clone();
        let parity = Covering::new(
            points.clone(),
            vec![
                ["0", "2", "4"].iter().map(|s| String::from(*s)).collect(),
                ["1", "3", "5"].iter().map(|s| String::from(*s)).collect(),
            ],
        )
        .unwrap();
        let f = points.indices(&["0", "1", "2"].map(String::from)).unwrap();
        let one = grp.parse_elem("1").unwrap();
        let report = cantor_check(&action, &f, &[one.clone()], &parity, &ratio(1, 3)).unwrap();
        assert!(report.holds);
        assert_eq!(report.gaps.iter().map(|t| t.2).collect::<Vec<_>>(), vec![1, 1]);
        assert!(!cantor_check(&action, &f, &[one.clone()], &parity, &ratio(1, 4)).unwrap().holds);

        let id = cantor_check(&action, &f, &[grp.identity()], &parity, &int(0)).unwrap();
        assert!(id.holds);
        let all: Vec<usize> = (0..6).collect();
        let full = cantor_check(&action, &all, &grp.elements().unwrap(), &parity, &int(0)).unwrap();
        assert!(full.gaps.iter().all(|t| t.2 == 0));
    }

    #[test]
    fn monochromatic_examples() {
        let grp = GroupModel::lattice(1).unwrap();
        let ground = GroundSet::new((-10..=10).map(z).collect()).unwrap();
        let intervals: Vec<Vec<GroupElem>> = (-10..=8).map(|s| (s..s + 3).map(z).collect()).collect();
        let cover = Covering::new(ground.clone(), intervals).unwrap();
        assert!(matches!(monochromatic_translate(&grp, &cover, &[z(0), z(1)]).unwrap(), MonoResult::Found { .. }));
        let singles = Covering::discrete(ground.clone());
        assert_eq!(
            monochromatic_translate(&grp, &singles, &[z(0), z(1)]).unwrap(),
            MonoResult::NotFound { scanned: 20 }
        );
        assert!(matches!(monochromatic_translate(&grp, &singles, &[z(4)]).unwrap(), MonoResult::Found { .. }));
        let parity = Coloring::from_fn(ground, 1, |g| match g {
            GroupElem::Vector(v) => v[0].rem_euclid(2) as usize,
            _ => 0,
        })
        .unwrap();
        assert_eq!(
            monochromatic_translate(&grp, &parity.partition(), &[z(0), z(2)]).unwrap(),
            MonoResult::Found { g: z(-10), block: 0 }
        );
    }

    #[test]
    fn theta_boost_holds() {
        for theta in [int(1), ratio(3, 4), ratio(9, 10)] {
            let report = theta_boost_check(&theta, 50, 7).unwrap();
            assert_eq!(report.tested, 50);
            assert!(report.violations.is_empty());
        }
        assert_eq!(theta_boost_check(&ratio(1, 2), 1, 0), Err(FolnerError::BadTheta));
    }
}
