//! Finitely generated group models.
//!
//! Three kinds ship: the lattices `Z^d`, free groups `F_k`, and finite groups
//! given by a validated multiplication table. Elements are kept in canonical
//! form (integer vector, freely reduced word, table index), so structural
//! equality is group equality and the derived order is the lexicographic
//! order on canonical forms.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::cover::GroundSet;

/// Default cap on the number of elements [`GroupModel::ball`] may produce.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Letters used to spell free generators; `e` is reserved for the identity.
const FREE_ALPHABET: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element does not belong to this group")]
    ForeignElement,
    #[error("ball of radius {radius} has more than {cap} elements")]
    BallTooLarge { radius: usize, cap: usize },
    #[error("multiplication table is not square with entries below {0}")]
    BadTable(usize),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element names must be distinct and non-empty")]
    BadNames,
    #[error("free groups support ranks 1 to {max}, got {rank}")]
    BadRank { rank: usize, max: usize },
    #[error("lattice dimension must be positive")]
    BadDimension,
    #[error("cannot parse element {0:?}")]
    Parse(String),
    #[error("action table is malformed")]
    BadActionTable,
    #[error("identity does not fix point {0}")]
    IdentityMoves(usize),
    #[error("action is not compatible with multiplication at ({g}, {h}, point {point})")]
    NotAnAction { g: usize, h: usize, point: usize },
    #[error("action of element {0} is not a bijection")]
    NotBijective(usize),
    #[error("this operation needs a finite group")]
    NotFinite,
    #[error("unknown point {0}")]
    UnknownPoint(usize),
}

/// A group element in canonical form.
///
/// Free words store letters as `±(i + 1)` for the `i`-th generator, with no
/// adjacent inverse pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElem {
    Vector(Vec<i64>),
    Word(Vec<i32>),
    Index(usize),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableGroup {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl TableGroup {
    /// Validates shape, identity, inverses and associativity.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 || mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(GroupError::BadTable(n));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n || names.iter().any(String::is_empty) {
            return Err(GroupError::BadNames);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e][x] == x && mul[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| mul[x][y] == identity && mul[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self { names, mul, identity, inverse })
    }

    /// The cyclic group `Z/n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(names, mul).expect("cyclic table is a group")
    }

    /// The symmetric group on `n` letters, permutations in lexicographic
    /// order, composed as functions: `(pq)(i) = p(q(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index: BTreeMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                        index[&pq]
                    })
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|i| (b'0' + *i as u8) as char).collect())
            .collect();
        Self::new(names, mul).expect("symmetric table is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).expect("successor exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Lattice { dim: usize },
    Free { rank: usize },
    Table(TableGroup),
}

/// A group together with a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupModel {
    kind: GroupKind,
    generators: Vec<GroupElem>,
}

impl GroupModel {
    pub fn lattice(dim: usize) -> Result<Self, GroupError> {
        if dim == 0 {
            return Err(GroupError::BadDimension);
        }
        let mut generators = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for s in [1, -1] {
                let mut v = alloc::vec![0; dim];
                v[i] = s;
                generators.push(GroupElem::Vector(v));
            }
        }
        generators.sort();
        Ok(Self { kind: GroupKind::Lattice { dim }, generators })
    }

    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 || rank > FREE_ALPHABET.len() {
            return Err(GroupError::BadRank { rank, max: FREE_ALPHABET.len() });
        }
        let mut generators: Vec<GroupElem> = (1..=rank as i32)
            .flat_map(|i| [GroupElem::Word(alloc::vec![i]), GroupElem::Word(alloc::vec![-i])])
            .collect();
        generators.sort();
        Ok(Self { kind: GroupKind::Free { rank }, generators })
    }

    /// A finite group; by default every non-identity element generates.
    pub fn table(group: TableGroup) -> Self {
        let generators = (0..group.order())
            .filter(|&i| i != group.identity())
            .map(GroupElem::Index)
            .collect();
        Self { kind: GroupKind::Table(group), generators }
    }

    /// Replaces the generating set; inverses are added so balls stay symmetric.
    pub fn with_generators(mut self, generators: Vec<GroupElem>) -> Result<Self, GroupError> {
        let mut set = BTreeSet::new();
        for g in generators {
            self.check(&g)?;
            set.insert(self.inverse(&g)?);
            set.insert(g);
        }
        self.generators = set.into_iter().collect();
        Ok(self)
    }

    /// Adds the identity to the generating set.
    pub fn with_identity_generator(mut self) -> Self {
        let e = self.identity();
        if let Err(pos) = self.generators.binary_search(&e) {
            self.generators.insert(pos, e);
        }
        self
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    pub fn table_group(&self) -> Option<&TableGroup> {
        match &self.kind {
            GroupKind::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, GroupKind::Table(_))
    }

    pub fn identity(&self) -> GroupElem {
        match &self.kind {
            GroupKind::Lattice { dim } => GroupElem::Vector(alloc::vec![0; *dim]),
            GroupKind::Free { .. } => GroupElem::Word(Vec::new()),
            GroupKind::Table(t) => GroupElem::Index(t.identity()),
        }
    }

    pub fn check(&self, g: &GroupElem) -> Result<(), GroupError> {
        let ok = match (&self.kind, g) {
            (GroupKind::Lattice { dim }, GroupElem::Vector(v)) => v.len() == *dim,
            (GroupKind::Free { rank }, GroupElem::Word(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupKind::Table(t), GroupElem::Index(i)) => *i < t.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::ForeignElement)
        }
    }

    pub fn multiply(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul_unchecked(g, h))
    }

    pub(crate) fn mul_unchecked(&self, g: &GroupElem, h: &GroupElem) -> GroupElem {
        match (&self.kind, g, h) {
            (GroupKind::Lattice { .. }, GroupElem::Vector(a), GroupElem::Vector(b)) => {
                GroupElem::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupKind::Free { .. }, GroupElem::Word(a), GroupElem::Word(b)) => {
                let mut out = a.clone();
                for &l in b {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElem::Word(out)
            }
            (GroupKind::Table(t), GroupElem::Index(a), GroupElem::Index(b)) => GroupElem::Index(t.mul(*a, *b)),
            _ => unreachable!("elements were checked against the model"),
        }
    }

    pub fn inverse(&self, g: &GroupElem) -> Result<GroupElem, GroupError> {
        self.check(g)?;
        Ok(match (&self.kind, g) {
            (_, GroupElem::Vector(v)) => GroupElem::Vector(v.iter().map(|x| -x).collect()),
            (_, GroupElem::Word(w)) => GroupElem::Word(w.iter().rev().map(|l| -l).collect()),
            (GroupKind::Table(t), GroupElem::Index(i)) => GroupElem::Index(t.inv(*i)),
            _ => unreachable!(),
        })
    }

    /// Elements of word length at most `radius`, sorted.
    pub fn ball(&self, radius: usize) -> Result<Vec<GroupElem>, GroupError> {
        self.ball_capped(radius, DEFAULT_BALL_CAP)
    }

    pub fn ball_capped(&self, radius: usize, cap: usize) -> Result<Vec<GroupElem>, GroupError> {
        Ok(self.spheres(radius, cap)?.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect())
    }

    /// Breadth-first shells: `shells[r]` holds the elements of length exactly `r`.
    fn spheres(&self, radius: usize, cap: usize) -> Result<Vec<Vec<GroupElem>>, GroupError> {
        let e = self.identity();
        let mut seen = BTreeSet::new();
        seen.insert(e.clone());
        let mut shells = alloc::vec![alloc::vec![e]];
        for r in 1..=radius {
            let mut next = Vec::new();
            for x in &shells[r - 1] {
                for s in &self.generators {
                    let y = self.mul_unchecked(x, s);
                    if seen.insert(y.clone()) {
                        if seen.len() > cap {
                            return Err(GroupError::BallTooLarge { radius, cap });
                        }
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            shells.push(next);
        }
        Ok(shells)
    }

    /// Word length with respect to the generating set, searched up to `limit`.
    pub fn word_length(&self, g: &GroupElem, limit: usize) -> Result<Option<usize>, GroupError> {
        self.check(g)?;
        match (&self.kind, g) {
            (GroupKind::Lattice { .. }, GroupElem::Vector(v)) if self.has_standard_generators() => {
                let len = v.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>();
                Ok((len <= limit).then_some(len))
            }
            (GroupKind::Free { .. }, GroupElem::Word(w)) if self.has_standard_generators() => {
                Ok((w.len() <= limit).then_some(w.len()))
            }
            _ => {
                let shells = self.spheres(limit, DEFAULT_BALL_CAP)?;
                Ok(shells.iter().position(|s| s.contains(g)))
            }
        }
    }

    fn has_standard_generators(&self) -> bool {
        match &self.kind {
            GroupKind::Lattice { dim } => *self == Self::lattice(*dim).expect("valid"),
            GroupKind::Free { rank } => *self == Self::free(*rank).expect("valid"),
            GroupKind::Table(_) => false,
        }
    }

    /// Left translate `gF`, sorted.
    pub fn translate(&self, g: &GroupElem, set: &[GroupElem]) -> Result<Vec<GroupElem>, GroupError> {
        self.check(g)?;
        let mut out = set
            .iter()
            .map(|x| {
                self.check(x)?;
                Ok(self.mul_unchecked(g, x))
            })
            .collect::<Result<Vec<_>, GroupError>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Right translate `Fg`, sorted.
    pub fn translate_right(&self, set: &[GroupElem], g: &GroupElem) -> Result<Vec<GroupElem>, GroupError> {
        self.check(g)?;
        let mut out = set
            .iter()
            .map(|x| {
                self.check(x)?;
                Ok(self.mul_unchecked(x, g))
            })
            .collect::<Result<Vec<_>, GroupError>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Product set `AB`, sorted.
    pub fn product_set(&self, a: &[GroupElem], b: &[GroupElem]) -> Result<Vec<GroupElem>, GroupError> {
        let mut out = BTreeSet::new();
        for x in a {
            self.check(x)?;
            for y in b {
                self.check(y)?;
                out.insert(self.mul_unchecked(x, y));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// All elements of a finite group, in index order.
    pub fn elements(&self) -> Result<Vec<GroupElem>, GroupError> {
        let t = self.table_group().ok_or(GroupError::NotFinite)?;
        Ok((0..t.order()).map(GroupElem::Index).collect())
    }

    /// Subgroup of a finite group generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[GroupElem]) -> Result<Vec<GroupElem>, GroupError> {
        self.table_group().ok_or(GroupError::NotFinite)?;
        let mut members = BTreeSet::new();
        members.insert(self.identity());
        let mut frontier = alloc::vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.multiply(&x, g)?;
                if members.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(members.into_iter().collect())
    }

    /// Right cosets `Hx` of a subgroup of a finite group, each sorted, listed
    /// in order of their least element.
    pub fn right_cosets(&self, subgroup: &[GroupElem]) -> Result<Vec<Vec<GroupElem>>, GroupError> {
        let mut cosets: BTreeSet<Vec<GroupElem>> = BTreeSet::new();
        for x in self.elements()? {
            cosets.insert(self.translate_right(subgroup, &x)?);
        }
        Ok(cosets.into_iter().collect())
    }

    /// Text encoding of an element: `"1,-2"` for lattices, reduced words
    /// such as `"aB"` (capitals are inverses, `"e"` the identity) for free
    /// groups, and element names for tables.
    pub fn format_elem(&self, g: &GroupElem) -> String {
        match g {
            GroupElem::Vector(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            GroupElem::Word(w) if w.is_empty() => "e".into(),
            GroupElem::Word(w) => w
                .iter()
                .map(|&l| {
                    let c = FREE_ALPHABET[l.unsigned_abs() as usize - 1] as char;
                    if l > 0 {
                        c
                    } else {
                        c.to_ascii_uppercase()
                    }
                })
                .collect(),
            GroupElem::Index(i) => match &self.kind {
                GroupKind::Table(t) if *i < t.order() => t.names[*i].clone(),
                _ => format!("#{i}"),
            },
        }
    }

    /// Parses the encoding of [`GroupModel::format_elem`]. Free words are
    /// reduced on input.
    pub fn parse_elem(&self, s: &str) -> Result<GroupElem, GroupError> {
        let err = || GroupError::Parse(s.to_string());
        let s = s.trim();
        let g = match &self.kind {
            GroupKind::Lattice { .. } => GroupElem::Vector(
                s.split(',')
                    .map(|p| p.trim().parse::<i64>().map_err(|_| err()))
                    .collect::<Result<_, _>>()?,
            ),
            GroupKind::Free { .. } => {
                if s == "e" {
                    return Ok(self.identity());
                }
                let mut out: Vec<i32> = Vec::new();
                for c in s.bytes() {
                    let pos = FREE_ALPHABET
                        .iter()
                        .position(|&a| a == c.to_ascii_lowercase())
                        .ok_or_else(err)?;
                    let l = if c.is_ascii_lowercase() { pos as i32 + 1 } else { -(pos as i32 + 1) };
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                GroupElem::Word(out)
            }
            GroupKind::Table(t) => GroupElem::Index(t.names.iter().position(|n| n == s).ok_or_else(err)?),
        };
        self.check(&g).map_err(|_| err())?;
        Ok(g)
    }
}

/// A finite group acting on the left of a finite point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    group: GroupModel,
    points: GroundSet<String>,
    /// `act[g][p]`, indices into the ground set.
    act: Vec<Vec<usize>>,
}

impl FiniteAction {
    /// `act[g][p]` is the image of the `p`-th listed point under element `g`,
    /// both referring to `point_names` in the order given.
    pub fn new(group: GroupModel, point_names: Vec<String>, act: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let t = group.table_group().ok_or(GroupError::NotFinite)?.clone();
        let n = point_names.len();
        if act.len() != t.order() || act.iter().any(|row| row.len() != n || row.iter().any(|&q| q >= n)) {
            return Err(GroupError::BadActionTable);
        }
        let points = GroundSet::new(point_names.clone()).map_err(|_| GroupError::BadNames)?;
        // re-index into sorted point order
        let to_sorted: Vec<usize> = point_names
            .iter()
            .map(|p| points.index_of(p).expect("present"))
            .collect();
        let mut sorted_act = alloc::vec![alloc::vec![0; n]; t.order()];
        for g in 0..t.order() {
            for p in 0..n {
                sorted_act[g][to_sorted[p]] = to_sorted[act[g][p]];
            }
        }
        for g in 0..t.order() {
            let distinct: BTreeSet<usize> = sorted_act[g].iter().copied().collect();
            if distinct.len() != n {
                return Err(GroupError::NotBijective(g));
            }
        }
        if let Some(p) = (0..n).find(|&p| sorted_act[t.identity()][p] != p) {
            return Err(GroupError::IdentityMoves(p));
        }
        for g in 0..t.order() {
            for h in 0..t.order() {
                let gh = t.mul(g, h);
                for p in 0..n {
                    if sorted_act[gh][p] != sorted_act[g][sorted_act[h][p]] {
                        return Err(GroupError::NotAnAction { g, h, point: p });
                    }
                }
            }
        }
        Ok(Self { group, points, act: sorted_act })
    }

    /// The left regular action of a finite group on itself.
    pub fn regular(group: GroupModel) -> Result<Self, GroupError> {
        let t = group.table_group().ok_or(GroupError::NotFinite)?.clone();
        let names = t.names().to_vec();
        let act = (0..t.order()).map(|g| (0..t.order()).map(|x| t.mul(g, x)).collect()).collect();
        Self::new(group, names, act)
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn points(&self) -> &GroundSet<String> {
        &self.points
    }

    /// Image of a set of point indices, sorted.
    pub fn act(&self, g: &GroupElem, subset: &[usize]) -> Result<Vec<usize>, GroupError> {
        self.group.check(g)?;
        let GroupElem::Index(g) = g else {
            return Err(GroupError::ForeignElement);
        };
        let mut out = subset
            .iter()
            .map(|&p| self.act[*g].get(p).copied().ok_or(GroupError::UnknownPoint(p)))
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_unstable();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str, g: &GroupModel) -> GroupElem {
        g.parse_elem(s).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let f2 = GroupModel::free(2).unwrap();
        let a = w("a", &f2);
        assert_eq!(f2.multiply(&f2.identity(), &a).unwrap(), a);
        assert_eq!(f2.multiply(&a, &w("A", &f2)).unwrap(), f2.identity());
        let z2 = GroupModel::lattice(2).unwrap();
        assert_eq!(
            z2.multiply(&GroupElem::Vector(vec![1, 0]), &GroupElem::Vector(vec![0, 1])).unwrap(),
            GroupElem::Vector(vec![1, 1])
        );
        assert_eq!(z2.multiply(&a, &a), Err(GroupError::ForeignElement));
        assert_eq!(f2.check(&GroupElem::Word(vec![1, -1])), Err(GroupError::ForeignElement));
    }

    #[test]
    fn ball_sizes() {
        let f2 = GroupModel::free(2).unwrap();
        assert_eq!(f2.ball(0).unwrap(), vec![f2.identity()]);
        assert_eq!(f2.ball(2).unwrap().len(), 17);
        let z2 = GroupModel::lattice(2).unwrap();
        assert_eq!(z2.ball(2).unwrap().len(), 13);
        assert_eq!(f2.ball_capped(5, 100), Err(GroupError::BallTooLarge { radius: 5, cap: 100 }));
        let z6 = GroupModel::table(TableGroup::cyclic(6));
        assert_eq!(z6.ball(10).unwrap().len(), 6);
    }

    #[test]
    fn translate_examples() {
        let z = GroupModel::lattice(1).unwrap();
        let f: Vec<GroupElem> = (0..10).map(|i| GroupElem::Vector(vec![i])).collect();
        assert_eq!(z.translate(&z.identity(), &f).unwrap(), f);
        let shifted: Vec<GroupElem> = (1..11).map(|i| GroupElem::Vector(vec![i])).collect();
        assert_eq!(z.translate(&GroupElem::Vector(vec![1]), &f).unwrap(), shifted);
        let f2 = GroupModel::free(2).unwrap();
        let b2 = f2.ball(2).unwrap();
        assert_eq!(f2.translate(&w("a", &f2), &b2).unwrap().len(), 17);
    }

    #[test]
    fn table_validation() {
        let names: Vec<String> = vec!["e".into(), "x".into()];
        assert!(TableGroup::new(names.clone(), vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert_eq!(TableGroup::new(names.clone(), vec![vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse(1)));
        assert_eq!(TableGroup::new(names.clone(), vec![vec![0, 1]]), Err(GroupError::BadTable(2)));
        assert_eq!(TableGroup::new(names.clone(), vec![vec![1, 0], vec![0, 0]]), Err(GroupError::NoIdentity));
        // a Latin square with identity that is not associative
        let names5: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(TableGroup::new(names5, loop5), Err(GroupError::NotAssociative(..))));
        assert_eq!(TableGroup::new(vec!["e".into(), "e".into()], vec![vec![0, 1], vec![1, 0]]), Err(GroupError::BadNames));
    }

    #[test]
    fn symmetric_group_is_nonabelian() {
        let s3 = TableGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        assert_eq!(s3.names()[s3.identity()], "012");
    }

    #[test]
    fn element_text_round_trips() {
        let f3 = GroupModel::free(3).unwrap();
        let g = w("abBcA", &f3);
        assert_eq!(f3.format_elem(&g), "acA");
        assert_eq!(f3.format_elem(&f3.identity()), "e");
        let z3 = GroupModel::lattice(3).unwrap();
        assert_eq!(z3.format_elem(&w("1, -2,0", &z3)), "1,-2,0");
        assert!(z3.parse_elem("1,2").is_err());
        assert!(f3.parse_elem("ad").is_err());
    }

    #[test]
    fn cosets_partition_the_group() {
        let z8 = GroupModel::table(TableGroup::cyclic(8));
        let h = z8.subgroup(&[w("2", &z8)]).unwrap();
        assert_eq!(h.len(), 4);
        let cosets = z8.right_cosets(&h).unwrap();
        assert_eq!(cosets.len(), 2);
    }

    #[test]
    fn word_lengths() {
        let f2 = GroupModel::free(2).unwrap();
        assert_eq!(f2.word_length(&w("abA", &f2), 5).unwrap(), Some(3));
        let z6 = GroupModel::table(TableGroup::cyclic(6)).with_generators(vec![GroupElem::Index(1)]).unwrap();
        assert_eq!(z6.word_length(&GroupElem::Index(3), 6).unwrap(), Some(3));
        assert_eq!(z6.word_length(&GroupElem::Index(3), 2).unwrap(), None);
    }

    #[test]
    fn action_examples() {
        let z6 = GroupModel::table(TableGroup::cyclic(6));
        let rot = FiniteAction::regular(z6.clone()).unwrap();
        let s = vec![0, 1];
        assert_eq!(rot.act(&z6.identity(), &s).unwrap(), s);
        assert_eq!(rot.act(&GroupElem::Index(1), &s).unwrap(), vec![1, 2]);
        let s3 = GroupModel::table(TableGroup::symmetric(3));
        let perms = s3.table_group().unwrap().names().to_vec();
        let act: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| p.bytes().map(|b| (b - b'0') as usize).collect())
            .collect();
        let on3 = FiniteAction::new(s3.clone(), vec!["0".into(), "1".into(), "2".into()], act).unwrap();
        for g in s3.elements().unwrap() {
            assert_eq!(on3.act(&g, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        }
    }

    #[test]
    fn action_validation() {
        let z2 = GroupModel::table(TableGroup::cyclic(2));
        let names = vec!["p".to_string(), "q".to_string()];
        assert_eq!(
            FiniteAction::new(z2.clone(), names.clone(), vec![vec![1, 0], vec![1, 0]]),
            Err(GroupError::IdentityMoves(0))
        );
        assert_eq!(
            FiniteAction::new(z2.clone(), names.clone(), vec![vec![0, 1], vec![0, 0]]),
            Err(GroupError::NotBijective(1))
        );
        let z4 = GroupModel::table(TableGroup::cyclic(4));
        // 1 acts as a swap, so 2 = 1+1 must act trivially, not as a swap
        let bad = vec![vec![0, 1], vec![1, 0], vec![1, 0], vec![0, 1]];
        assert!(matches!(FiniteAction::new(z4, names, bad), Err(GroupError::NotAnAction { .. })));
    }
}
