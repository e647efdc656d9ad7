use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::evaluate_pairs;
use super::{FolnerCertificate, FolnerError, Mode};
use crate::cover::{Covering, GroundSet};
use crate::groups::{GroupElem, GroupError, GroupModel, DEFAULT_BALL_CAP};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Balls of radius `0..=max_radius` in order.
    Balls { max_radius: usize },
    /// Hill-climbing from `{e}` by adding neighbours and removing elements,
    /// restarting after a plateau; `budget` counts evaluated candidates.
    Local { seed: u64, budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Box<FolnerCertificate>),
    Exhausted { best_f: Vec<GroupElem>, best_ratio: Rational, evaluated: usize },
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

// non-improving steps before a local search restarts
const PLATEAU: usize = 64;

/// `B(radius + max_{g∈E} |g|)`, which contains `gF` for `F ⊆ B(radius)`.
pub fn window_for(group: &GroupModel, e: &[GroupElem], radius: usize, cap: usize) -> Result<GroundSet<GroupElem>, FolnerError> {
    let mut reach = 0;
    for g in e {
        let len = group
            .word_length(g, radius.saturating_add(DEFAULT_BALL_CAP))
            .map_err(|err| cap_error(err, cap))?
            .ok_or(FolnerError::WindowCap { cap })?;
        reach = reach.max(len);
    }
    let ball = group.ball_capped(radius + reach, cap).map_err(|err| cap_error(err, cap))?;
    Ok(GroundSet::new(ball)?)
}

fn cap_error(err: GroupError, cap: usize) -> FolnerError {
    match err {
        GroupError::BallTooLarge { .. } => FolnerError::WindowCap { cap },
        other => other.into(),
    }
}

/// Searches for `F` with `μ ≥ ⌈θ|F|⌉` on every required pair, all inside
/// the covering's window.
pub fn folner_search(
    group: &GroupModel,
    e: &[GroupElem],
    cover: &Covering<GroupElem>,
    theta: &Rational,
    mode: Mode,
    strategy: Strategy,
) -> Result<SearchOutcome, FolnerError> {
    if theta.is_negative() || *theta > Rational::one() {
        return Err(FolnerError::BadTheta);
    }
    let mut e = e.to_vec();
    for g in &e {
        group.check(g)?;
    }
    e.sort();
    e.dedup();
    match strategy {
        Strategy::Balls { max_radius } => balls(group, &e, cover, theta, mode, max_radius),
        Strategy::Local { seed, budget } => {
            if budget == 0 {
                return Err(FolnerError::BadBudget);
            }
            local(group, &e, cover, theta, mode, seed, budget)
        }
    }
}

struct Best {
    f: Vec<GroupElem>,
    ratio: Rational,
}

impl Best {
    fn offer(&mut self, f: &[GroupElem], ratio: &Rational) {
        let better = *ratio > self.ratio || (*ratio == self.ratio && (f.len(), f) < (self.f.len(), &self.f[..]));
        if self.f.is_empty() || better {
            self.f = f.to_vec();
            self.ratio = ratio.clone();
        }
    }
}

fn balls(
    group: &GroupModel,
    e: &[GroupElem],
    cover: &Covering<GroupElem>,
    theta: &Rational,
    mode: Mode,
    max_radius: usize,
) -> Result<SearchOutcome, FolnerError> {
    let mut best = Best { f: Vec::new(), ratio: rational::int(0) };
    let mut previous = 0;
    let mut evaluated = 0;
    for r in 0..=max_radius {
        let f = group.ball(r)?;
        if r > 0 && f.len() == previous {
            // finite group: the ball stopped growing
            break;
        }
        previous = f.len();
        let cert = FolnerCertificate::build(group, &f, e, cover, theta, mode)?;
        evaluated += 1;
        if cert.pass {
            return Ok(SearchOutcome::Found(Box::new(cert)));
        }
        best.offer(&cert.f, &cert.min_ratio());
    }
    Ok(SearchOutcome::Exhausted { best_f: best.f, best_ratio: best.ratio, evaluated })
}

/// Exact score of a candidate: the minimum ratio, then the mean ratio.
fn score(
    group: &GroupModel,
    e: &[GroupElem],
    cover: &Covering<GroupElem>,
    mode: Mode,
    f: &[GroupElem],
) -> Result<(Rational, Rational, usize), FolnerError> {
    let pairs = evaluate_pairs(group, cover, f, e, mode)?;
    let least = pairs.iter().map(|p| p.mu).min().unwrap_or(f.len());
    let total: usize = pairs.iter().map(|p| p.mu).sum();
    let mean = rational::fraction(total, f.len() * pairs.len().max(1));
    Ok((rational::fraction(least, f.len()), mean, least))
}

fn local(
    group: &GroupModel,
    e: &[GroupElem],
    cover: &Covering<GroupElem>,
    theta: &Rational,
    mode: Mode,
    seed: u64,
    budget: usize,
) -> Result<SearchOutcome, FolnerError> {
    let window = cover.ground();
    let mut shifts: Vec<GroupElem> = mode.required_pairs(group, e).into_iter().flat_map(|(g, h)| [g, h]).collect();
    shifts.sort();
    shifts.dedup();
    // x is admissible when every required translate of x stays in the window
    let admissible = |x: &GroupElem| -> bool {
        shifts.iter().all(|g| window.index_of(&group.mul_unchecked(g, x)).is_some())
    };
    let start = group.identity();
    if !admissible(&start) {
        return Err(FolnerError::WindowEscape(start));
    }
    let needed_for = |f: &[GroupElem]| rational::threshold(theta, f.len());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = Best { f: Vec::new(), ratio: rational::int(0) };
    let mut evaluated = 0;
    'restart: while evaluated < budget {
        let mut current: BTreeSet<GroupElem> = BTreeSet::new();
        current.insert(start.clone());
        let mut cur_f: Vec<GroupElem> = current.iter().cloned().collect();
        let mut cur_score = score(group, e, cover, mode, &cur_f)?;
        evaluated += 1;
        let mut stale = 0;
        loop {
            best.offer(&cur_f, &cur_score.0);
            if cur_score.2 >= needed_for(&cur_f) {
                let cert = FolnerCertificate::build(group, &cur_f, e, cover, theta, mode)?;
                return Ok(SearchOutcome::Found(Box::new(cert)));
            }
            if evaluated >= budget {
                break 'restart;
            }
            if stale >= PLATEAU {
                continue 'restart;
            }
            let Some(next) = propose(group, &current, &admissible, &mut rng) else {
                continue 'restart;
            };
            let next_f: Vec<GroupElem> = next.iter().cloned().collect();
            let next_score = score(group, e, cover, mode, &next_f)?;
            evaluated += 1;
            let key = |s: &(Rational, Rational, usize)| (s.0.clone(), s.1.clone());
            if key(&next_score) > key(&cur_score) {
                stale = 0;
            } else {
                stale += 1;
            }
            if key(&next_score) >= key(&cur_score) {
                current = next;
                cur_f = next_f;
                cur_score = next_score;
            }
        }
    }
    Ok(SearchOutcome::Exhausted { best_f: best.f, best_ratio: best.ratio, evaluated })
}

/// Adds an admissible neighbour `s·x` (two moves in three) or removes an element.
fn propose(
    group: &GroupModel,
    current: &BTreeSet<GroupElem>,
    admissible: &impl Fn(&GroupElem) -> bool,
    rng: &mut ChaCha8Rng,
) -> Option<BTreeSet<GroupElem>> {
    let grow = current.len() == 1 || rng.gen_range(0..3) < 2;
    if grow {
        let mut frontier = BTreeSet::new();
        for x in current {
            for s in group.generators() {
                let y = group.mul_unchecked(s, x);
                if !current.contains(&y) && admissible(&y) {
                    frontier.insert(y);
                }
            }
        }
        if !frontier.is_empty() {
            let pick = frontier.iter().nth(rng.gen_range(0..frontier.len()))?.clone();
            let mut next = current.clone();
            next.insert(pick);
            return Some(next);
        }
    }
    if current.len() > 1 {
        let pick = current.iter().nth(rng.gen_range(0..current.len()))?.clone();
        let mut next = current.clone();
        next.remove(&pick);
        return Some(next);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folner::{check_certificate, Coloring};
    use crate::groups::TableGroup;
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn z(i: i64) -> GroupElem {
        GroupElem::Vector(vec![i])
    }

    fn parity(window: GroundSet<GroupElem>) -> Covering<GroupElem> {
        Coloring::from_fn(window, 1, |g| match g {
            GroupElem::Vector(v) => v[0].rem_euclid(2) as usize,
            _ => 0,
        })
        .unwrap()
        .partition()
    }

    #[test]
    fn trivial_group() {
        let g = GroupModel::table(TableGroup::cyclic(1));
        let window = window_for(&g, &[g.identity()], 0, 10).unwrap();
        let out = folner_search(&g, &[g.identity()], &Covering::trivial(window), &int(1), Mode::Asymmetric, Strategy::Balls { max_radius: 3 })
            .unwrap();
        let SearchOutcome::Found(cert) = out else { panic!("expected a certificate") };
        assert_eq!(cert.f, vec![g.identity()]);
        assert_eq!(cert.min_ratio(), int(1));
    }

    #[test]
    fn integers_parity_balls() {
        let grp = GroupModel::lattice(1).unwrap();
        let e = [z(-1), z(1)];
        let window = window_for(&grp, &e, 10, 1000).unwrap();
        let out = folner_search(&grp, &e, &parity(window), &ratio(9, 10), Mode::Asymmetric, Strategy::Balls { max_radius: 10 })
            .unwrap();
        let SearchOutcome::Found(cert) = out else { panic!("expected a certificate") };
        assert!(check_certificate(&cert).unwrap().is_pass());
        let f = &cert.f;
        let (GroupElem::Vector(lo), GroupElem::Vector(hi)) = (&f[0], &f[f.len() - 1]) else { unreachable!() };
        assert_eq!((hi[0] - lo[0] + 1) as usize, f.len());
    }

    #[test]
    fn integers_parity_local() {
        let grp = GroupModel::lattice(1).unwrap();
        let e = [z(-1), z(1)];
        let window = window_for(&grp, &e, 10, 1000).unwrap();
        let strategy = Strategy::Local { seed: 3, budget: 2000 };
        let a = folner_search(&grp, &e, &parity(window.clone()), &ratio(9, 10), Mode::Asymmetric, strategy).unwrap();
        let b = folner_search(&grp, &e, &parity(window), &ratio(9, 10), Mode::Asymmetric, strategy).unwrap();
        assert_eq!(a, b);
        let SearchOutcome::Found(cert) = a else { panic!("expected a certificate") };
        assert!(check_certificate(&cert).unwrap().is_pass());
    }

    #[test]
    fn free_group_exhausts() {
        let f2 = GroupModel::free(2).unwrap();
        let e: Vec<GroupElem> = f2.generators().to_vec();
        let window = window_for(&f2, &e, 4, 10_000).unwrap();
        let coloring = Coloring::from_fn(window, 1, |g| match g {
            GroupElem::Word(w) if w.first() == Some(&1) => 1,
            _ => 0,
        })
        .unwrap();
        let out = folner_search(&f2, &e, &coloring.partition(), &ratio(9, 10), Mode::Asymmetric, Strategy::Balls { max_radius: 4 })
            .unwrap();
        let SearchOutcome::Exhausted { best_ratio, evaluated, .. } = out else { panic!("free group passed") };
        assert!(best_ratio < ratio(9, 10));
        assert_eq!(evaluated, 5);
    }

    #[test]
    fn escaping_window_is_an_error() {
        let grp = GroupModel::lattice(1).unwrap();
        let e = [z(1)];
        let window = window_for(&grp, &e, 2, 100).unwrap();
        let out = folner_search(&grp, &e, &parity(window), &int(1), Mode::Asymmetric, Strategy::Balls { max_radius: 5 });
        assert_eq!(out, Err(FolnerError::WindowEscape(z(4))));
        assert_eq!(window_for(&GroupModel::free(2).unwrap(), &[], 10, 100), Err(FolnerError::WindowCap { cap: 100 }));
    }
}
