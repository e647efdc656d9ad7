//! Finitely supported means with exact rational weights.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cover::Covering;
use crate::groups::{GroupElem, GroupError, GroupModel};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeansError {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weights sum to {0}, not 1")]
    BadMass(Rational),
    #[error("support is empty")]
    EmptySupport,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("product {0:?} escapes the function's domain")]
    DomainEscape(GroupElem),
    #[error("covering ground differs from the function domain")]
    DomainMismatch,
    #[error("theta must be positive")]
    BadTheta,
}

/// A finitely supported probability vector on a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexCombination {
    weights: BTreeMap<GroupElem, Rational>,
}

impl ConvexCombination {
    pub fn new(weights: BTreeMap<GroupElem, Rational>) -> Result<Self, MeansError> {
        if weights.is_empty() {
            return Err(MeansError::EmptySupport);
        }
        if weights.values().any(|w| !w.is_positive()) {
            return Err(MeansError::NonPositiveWeight);
        }
        let total: Rational = weights.values().sum();
        if !total.is_one() {
            return Err(MeansError::BadMass(total));
        }
        Ok(Self { weights })
    }

    pub fn dirac(g: GroupElem) -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(g, Rational::one());
        Self { weights }
    }

    /// Equal weight `1/|F|` on each element of `F`.
    pub fn uniform(set: &[GroupElem]) -> Result<Self, MeansError> {
        let mut weights = BTreeMap::new();
        for g in set {
            weights.insert(g.clone(), Rational::zero());
        }
        if weights.is_empty() {
            return Err(MeansError::EmptySupport);
        }
        let w = Rational::new(BigInt::one(), BigInt::from(weights.len()));
        for v in weights.values_mut() {
            *v = w.clone();
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &BTreeMap<GroupElem, Rational> {
        &self.weights
    }

    pub fn weight(&self, g: &GroupElem) -> Rational {
        self.weights.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<GroupElem> {
        self.weights.keys().cloned().collect()
    }

    pub fn total_mass(&self) -> Rational {
        self.weights.values().sum()
    }

    /// `(αβ)(g) = Σ_h α(gh⁻¹) β(h)`, computed as the push-forward of
    /// `α ⊗ β` under multiplication.
    pub fn convolve(&self, other: &Self, group: &GroupModel) -> Result<Self, MeansError> {
        let mut weights: BTreeMap<GroupElem, Rational> = BTreeMap::new();
        for (x, a) in &self.weights {
            for (h, b) in &other.weights {
                let g = group.multiply(x, h)?;
                *weights.entry(g).or_insert_with(Rational::zero) += a * b;
            }
        }
        Ok(Self { weights })
    }
}

/// A rational-valued function on a finite window of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFunction {
    values: BTreeMap<GroupElem, Rational>,
}

impl FiniteFunction {
    pub fn new(values: BTreeMap<GroupElem, Rational>) -> Self {
        Self { values }
    }

    pub fn from_fn(domain: &[GroupElem], mut f: impl FnMut(&GroupElem) -> Rational) -> Self {
        Self { values: domain.iter().map(|g| (g.clone(), f(g))).collect() }
    }

    pub fn domain(&self) -> Vec<GroupElem> {
        self.values.keys().cloned().collect()
    }

    pub fn get(&self, g: &GroupElem) -> Option<&Rational> {
        self.values.get(g)
    }

    pub fn values(&self) -> &BTreeMap<GroupElem, Rational> {
        &self.values
    }
}

/// `f_ν(g) = Σ_x ν(x) f(g·x)`. Every product must lie in the domain of `f`.
pub fn push_function(
    f: &FiniteFunction,
    nu: &ConvexCombination,
    g: &GroupElem,
    group: &GroupModel,
) -> Result<Rational, MeansError> {
    let mut total = Rational::zero();
    for (x, w) in &nu.weights {
        let gx = group.multiply(g, x)?;
        let value = f.get(&gx).ok_or(MeansError::DomainEscape(gx))?;
        total += w * value;
    }
    Ok(total)
}

/// The pushed function `g ↦ f_ν(g)` on a window of elements `g`.
pub fn push_forward(
    f: &FiniteFunction,
    nu: &ConvexCombination,
    window: &[GroupElem],
    group: &GroupModel,
) -> Result<FiniteFunction, MeansError> {
    let mut values = BTreeMap::new();
    for g in window {
        values.insert(g.clone(), push_function(f, nu, g, group)?);
    }
    Ok(FiniteFunction { values })
}

/// Whether `f` varies by at most `eps` on every block of `cover`.
pub fn modulus_check(f: &FiniteFunction, cover: &Covering<GroupElem>, eps: &Rational) -> Result<bool, MeansError> {
    if cover.ground().atoms() != f.domain().as_slice() {
        return Err(MeansError::DomainMismatch);
    }
    Ok(cover.blocks().iter().all(|block| &block_diameter(f, cover, block) <= eps))
}

/// Largest block diameter of `f` over `cover`.
pub fn modulus(f: &FiniteFunction, cover: &Covering<GroupElem>) -> Result<Rational, MeansError> {
    if cover.ground().atoms() != f.domain().as_slice() {
        return Err(MeansError::DomainMismatch);
    }
    Ok(cover
        .blocks()
        .iter()
        .map(|b| block_diameter(f, cover, b))
        .max()
        .unwrap_or_else(Rational::zero))
}

fn block_diameter(f: &FiniteFunction, cover: &Covering<GroupElem>, block: &[usize]) -> Rational {
    let mut values = block.iter().map(|&i| &f.values[cover.ground().atom(i)]);
    let Some(first) = values.next() else {
        return Rational::zero();
    };
    let (lo, hi) = values.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}

/// `max_{g,h ∈ E} |f_δ(g) − f_δ(h)|`.
pub fn condition6_gap(
    f: &FiniteFunction,
    delta: &ConvexCombination,
    e: &[GroupElem],
    group: &GroupModel,
) -> Result<Rational, MeansError> {
    push_function(f, delta, &group.identity(), group)?;
    let values = e
        .iter()
        .map(|g| push_function(f, delta, g, group))
        .collect::<Result<Vec<_>, _>>()?;
    let lo = values.iter().min();
    let hi = values.iter().max();
    Ok(match (lo, hi) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => Rational::zero(),
    })
}

/// A rational approximation `β = γ/n` with positive integer numerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rationalized<K> {
    pub beta: BTreeMap<K, Rational>,
    pub n: u64,
    pub gamma: BTreeMap<K, u64>,
}

/// Approximates a probability vector by one with common denominator `n`,
/// keeping the support and staying within `theta` in `ℓ¹`.
///
/// Starts at `n = ⌈2|F|/θ⌉`, apportions by largest remainder with every
/// numerator at least 1, checks the `ℓ¹` bound exactly, and doubles `n` if
/// the check fails.
pub fn rationalize<K: Ord + Clone>(
    alpha: &BTreeMap<K, Rational>,
    theta: &Rational,
) -> Result<Rationalized<K>, MeansError> {
    if !theta.is_positive() {
        return Err(MeansError::BadTheta);
    }
    if alpha.is_empty() {
        return Err(MeansError::EmptySupport);
    }
    if alpha.values().any(|w| !w.is_positive()) {
        return Err(MeansError::NonPositiveWeight);
    }
    let total: Rational = alpha.values().sum();
    if !total.is_one() {
        return Err(MeansError::BadMass(total));
    }
    let support = alpha.len() as u64;
    let start = Rational::from_integer(BigInt::from(2 * support)) / theta;
    let mut n = start.numer().div_ceil(start.denom()).to_u64().unwrap_or(u64::MAX).max(support);
    loop {
        let gamma = apportion(alpha, n);
        let beta: BTreeMap<K, Rational> = gamma
            .iter()
            .map(|(k, &g)| (k.clone(), Rational::new(BigInt::from(g), BigInt::from(n))))
            .collect();
        let deviation: Rational = alpha.iter().map(|(k, a)| (a - &beta[k]).abs()).sum();
        if &deviation <= theta {
            return Ok(Rationalized { beta, n, gamma });
        }
        n = n.saturating_mul(2);
    }
}

fn apportion<K: Ord + Clone>(alpha: &BTreeMap<K, Rational>, n: u64) -> BTreeMap<K, u64> {
    let scale = Rational::from_integer(BigInt::from(n));
    let mut entries: Vec<(K, u64, Rational)> = alpha
        .iter()
        .map(|(k, a)| {
            let exact = a * &scale;
            let floor = exact.floor();
            let rem = &exact - &floor;
            let base = floor.to_integer().to_u64().unwrap_or(0).max(1);
            (k.clone(), base, rem)
        })
        .collect();
    let assigned: u64 = entries.iter().map(|e| e.1).sum();
    let mut order: Vec<usize> = (0..entries.len()).collect();
    if assigned < n {
        // largest remainders first, ties by key order
        order.sort_by(|&i, &j| entries[j].2.cmp(&entries[i].2).then(i.cmp(&j)));
        for &i in order.iter().cycle().take((n - assigned) as usize) {
            entries[i].1 += 1;
        }
    } else if assigned > n {
        // smallest remainders give back first, never dropping below 1
        order.sort_by(|&i, &j| entries[i].2.cmp(&entries[j].2).then(i.cmp(&j)));
        let mut excess = assigned - n;
        while excess > 0 {
            let before = excess;
            for &i in &order {
                if excess > 0 && entries[i].1 > 1 {
                    entries[i].1 -= 1;
                    excess -= 1;
                }
            }
            if before == excess {
                break;
            }
        }
    }
    entries.into_iter().map(|(k, g, _)| (k, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::GroundSet;
    use crate::groups::TableGroup;
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn z(i: i64) -> GroupElem {
        GroupElem::Vector(vec![i])
    }

    fn zgroup() -> GroupModel {
        GroupModel::lattice(1).unwrap()
    }

    #[test]
    fn dirac_and_uniform() {
        let g = z(3);
        let d = ConvexCombination::dirac(g.clone());
        assert_eq!(d.support(), vec![g.clone()]);
        assert_eq!(ConvexCombination::uniform(&[g.clone()]).unwrap(), d);
        let u = ConvexCombination::uniform(&[z(0), z(1)]).unwrap();
        assert_eq!(u.weight(&z(0)), ratio(1, 2));
        assert_eq!(u.total_mass(), int(1));
        assert_eq!(ConvexCombination::uniform(&[]), Err(MeansError::EmptySupport));
        let e = ConvexCombination::dirac(zgroup().identity());
        assert_eq!(e.convolve(&u, &zgroup()).unwrap(), u);
        assert_eq!(u.convolve(&e, &zgroup()).unwrap(), u);
    }

    #[test]
    fn validation() {
        let mut w = BTreeMap::new();
        w.insert(z(0), ratio(1, 2));
        assert_eq!(ConvexCombination::new(w.clone()), Err(MeansError::BadMass(ratio(1, 2))));
        w.insert(z(1), ratio(1, 2));
        assert!(ConvexCombination::new(w.clone()).is_ok());
        w.insert(z(2), int(0));
        assert_eq!(ConvexCombination::new(w), Err(MeansError::NonPositiveWeight));
    }

    #[test]
    fn convolution_examples() {
        let grp = zgroup();
        let d = ConvexCombination::dirac(z(2)).convolve(&ConvexCombination::dirac(z(-5)), &grp).unwrap();
        assert_eq!(d, ConvexCombination::dirac(z(-3)));
        let pm = ConvexCombination::uniform(&[z(-1), z(1)]).unwrap();
        let sq = pm.convolve(&pm, &grp).unwrap();
        assert_eq!(sq.weights().len(), 3);
        assert_eq!(sq.weight(&z(-2)), ratio(1, 4));
        assert_eq!(sq.weight(&z(0)), ratio(1, 2));
        assert_eq!(sq.weight(&z(2)), ratio(1, 4));
    }

    #[test]
    fn convolution_support_on_free_group() {
        let f2 = GroupModel::free(2).unwrap();
        let p = |s: &str| f2.parse_elem(s).unwrap();
        let a = ConvexCombination::uniform(&[p("a"), p("b")]).unwrap();
        let b = ConvexCombination::uniform(&[p("A"), p("b")]).unwrap();
        let ab = a.convolve(&b, &f2).unwrap();
        // a·A = e, a·b = ab, b·A = bA, b·b = bb: four distinct products
        let products = f2.product_set(&a.support(), &b.support()).unwrap();
        assert_eq!(ab.support(), products);
        assert_eq!(ab.weight(&p("e")), ratio(1, 4));
    }

    #[test]
    fn push_examples() {
        let grp = zgroup();
        let window: Vec<GroupElem> = (-5..=5).map(z).collect();
        let f = FiniteFunction::from_fn(&window, |g| match g {
            GroupElem::Vector(v) => int(v[0] * v[0]),
            _ => unreachable!(),
        });
        assert_eq!(push_function(&f, &ConvexCombination::dirac(z(2)), &z(1), &grp).unwrap(), int(9));
        let u = ConvexCombination::uniform(&[z(0), z(1), z(2)]).unwrap();
        // average of 1, 4, 9
        assert_eq!(push_function(&f, &u, &z(1), &grp).unwrap(), ratio(14, 3));
        assert_eq!(
            push_function(&f, &u, &z(4), &grp),
            Err(MeansError::DomainEscape(z(6)))
        );
    }

    #[test]
    fn push_under_convolution_is_iterated_push() {
        // f_{αβ}(g) = Σ_x α(x) f_β(g x)
        let grp = zgroup();
        let window: Vec<GroupElem> = (-10..=10).map(z).collect();
        let f = FiniteFunction::from_fn(&window, |g| match g {
            GroupElem::Vector(v) => ratio(v[0] * 3 + 1, 7),
            _ => unreachable!(),
        });
        let mut aw = BTreeMap::new();
        aw.insert(z(-1), ratio(1, 6));
        aw.insert(z(0), ratio(1, 2));
        aw.insert(z(2), ratio(1, 3));
        let a = ConvexCombination::new(aw).unwrap();
        let b = ConvexCombination::uniform(&[z(1), z(3)]).unwrap();
        let ab = a.convolve(&b, &grp).unwrap();
        let direct = push_function(&f, &ab, &z(0), &grp).unwrap();
        let inner: Vec<GroupElem> = (-4..=4).map(z).collect();
        let fb = push_forward(&f, &b, &inner, &grp).unwrap();
        let iterated = push_function(&fb, &a, &z(0), &grp).unwrap();
        assert_eq!(direct, iterated);
    }

    #[test]
    fn modulus_examples() {
        let window: Vec<GroupElem> = (0..4).map(z).collect();
        let ground = GroundSet::new(window.clone()).unwrap();
        let cover = Covering::new(ground.clone(), vec![vec![z(0), z(1)], vec![z(1), z(2), z(3)]]).unwrap();
        let constant = FiniteFunction::from_fn(&window, |_| ratio(2, 3));
        assert!(modulus_check(&constant, &cover, &int(0)).unwrap());
        let spiky = FiniteFunction::from_fn(&window, |g| if *g == z(2) { int(5) } else { int(0) });
        assert!(modulus_check(&spiky, &Covering::discrete(ground.clone()), &int(0)).unwrap());
        // indicator of {0,1} crosses the block {1,2,3}
        let ind = FiniteFunction::from_fn(&window, |g| if *g == z(0) || *g == z(1) { int(1) } else { int(0) });
        assert!(!modulus_check(&ind, &cover, &ratio(1, 2)).unwrap());
        assert_eq!(modulus(&ind, &cover).unwrap(), int(1));
    }

    #[test]
    fn condition6_examples() {
        let grp = zgroup();
        let window: Vec<GroupElem> = (-6..=6).map(z).collect();
        let evens = FiniteFunction::from_fn(&window, |g| match g {
            GroupElem::Vector(v) if v[0] % 2 == 0 => int(1),
            _ => int(0),
        });
        let delta = ConvexCombination::uniform(&[z(0), z(1)]).unwrap();
        assert_eq!(condition6_gap(&evens, &delta, &[z(0), z(1)], &grp).unwrap(), int(0));
        assert_eq!(condition6_gap(&evens, &delta, &[z(3)], &grp).unwrap(), int(0));
        let constant = FiniteFunction::from_fn(&window, |_| int(1));
        let dirac = ConvexCombination::dirac(z(0));
        assert_eq!(condition6_gap(&constant, &dirac, &[z(-2), z(5)], &grp).unwrap(), int(0));
        assert_eq!(condition6_gap(&evens, &dirac, &[z(0), z(1)], &grp).unwrap(), int(1));
        assert!(matches!(condition6_gap(&evens, &dirac, &[z(9)], &grp), Err(MeansError::DomainEscape(_))));
    }

    #[test]
    fn rationalize_examples() {
        let mut alpha = BTreeMap::new();
        alpha.insert('a', ratio(1, 4));
        alpha.insert('b', ratio(3, 4));
        // n = ⌈2·2/(1/2)⌉ = 8, where α is already exact
        let r = rationalize(&alpha, &ratio(1, 2)).unwrap();
        assert_eq!(r.n, 8);
        assert_eq!(r.beta, alpha);

        let mut third = BTreeMap::new();
        third.insert('a', ratio(1, 3));
        third.insert('b', ratio(2, 3));
        let r = rationalize(&third, &ratio(1, 100)).unwrap();
        assert_eq!(r.n, 400);
        assert_eq!(r.gamma[&'a'], 133);
        assert_eq!(r.gamma[&'b'], 267);
        let dev: Rational = third.iter().map(|(k, a)| (a - &r.beta[k]).abs()).sum();
        assert!(dev <= ratio(1, 100));

        let r = rationalize(&third, &int(2)).unwrap();
        assert_eq!(r.gamma.values().sum::<u64>(), r.n);
        assert_eq!(rationalize(&third, &int(0)), Err(MeansError::BadTheta));
    }

    #[test]
    fn rationalize_keeps_tiny_weights() {
        let mut alpha = BTreeMap::new();
        alpha.insert(0u8, ratio(1, 1_000_000));
        alpha.insert(1u8, ratio(999_999, 1_000_000));
        let r = rationalize(&alpha, &ratio(1, 10)).unwrap();
        assert!(r.gamma.values().all(|&g| g >= 1));
        assert_eq!(r.beta.len(), 2);
    }

    #[test]
    fn modulus_preserved_on_cyclic_group() {
        let z8 = GroupModel::table(TableGroup::cyclic(8));
        let all = z8.elements().unwrap();
        let h = z8.subgroup(&[GroupElem::Index(4)]).unwrap();
        let cosets = z8.right_cosets(&h).unwrap();
        let cover = Covering::new(GroundSet::new(all.clone()).unwrap(), cosets).unwrap();
        let f = FiniteFunction::from_fn(&all, |g| match g {
            GroupElem::Index(i) => int((*i % 4) as i64) + if *i >= 4 { ratio(1, 3) } else { int(0) },
            _ => unreachable!(),
        });
        let eps = modulus(&f, &cover).unwrap();
        assert_eq!(eps, ratio(1, 3));
        let nu = ConvexCombination::uniform(&[GroupElem::Index(1), GroupElem::Index(6)]).unwrap();
        let pushed = push_forward(&f, &nu, &all, &z8).unwrap();
        assert!(modulus_check(&pushed, &cover, &eps).unwrap());
    }
}
