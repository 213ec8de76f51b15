//! Melds, pseudomelds and disjoint families within a single suit.
//!
//! A family is a collection of melds (pong, chow) and pmelds (pair, pchow)
//! drawn from pairwise disjoint positions of a sorted same-suit sequence,
//! where no two members are identical pairs.

use std::collections::BTreeSet;

use crate::tiles::{PureTiles, Tile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeldKind {
    Eye,
    Pong,
    Kong,
    Chow,
    Pchow,
    Pair,
    Single,
}

impl MeldKind {
    pub fn is_meld(self) -> bool {
        matches!(self, MeldKind::Pong | MeldKind::Chow)
    }

    pub fn is_pmeld(self) -> bool {
        matches!(self, MeldKind::Pair | MeldKind::Eye | MeldKind::Pchow)
    }
}

/// Classifies 1 to 4 tiles. Two identical tiles are reported as a `Pair`;
/// `Eye` is the role a pair plays in a decomposition.
pub fn classify(tiles: &[Tile]) -> Option<MeldKind> {
    let mut sorted = tiles.to_vec();
    sorted.sort_unstable();
    let same_suit = sorted.windows(2).all(|w| w[0].suit() == w[1].suit());
    if !same_suit {
        return None;
    }
    let identical = sorted.windows(2).all(|w| w[0] == w[1]);
    let nums: Vec<u8> = sorted.iter().map(|t| t.number()).collect();
    match nums.len() {
        1 => Some(MeldKind::Single),
        2 if identical => Some(MeldKind::Pair),
        2 if nums[1] - nums[0] <= 2 => Some(MeldKind::Pchow),
        3 if identical => Some(MeldKind::Pong),
        3 if nums[1] == nums[0] + 1 && nums[2] == nums[1] + 1 => Some(MeldKind::Chow),
        4 if identical => Some(MeldKind::Kong),
        _ => None,
    }
}

/// One member of a [`DisjointFamily`]: its kind and the positions it
/// occupies in the host sequence (strictly increasing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub kind: MeldKind,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DisjointFamily {
    pub members: Vec<FamilyMember>,
}

impl DisjointFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks the family against its host: index-disjoint, increasing
    /// indices, members of the stated kind, no two identical pairs.
    pub fn is_valid_for(&self, host: &PureTiles) -> bool {
        let vals = host.values();
        let mut used = vec![false; vals.len()];
        let mut pair_values = BTreeSet::new();
        for m in &self.members {
            if !m.indices.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for &i in &m.indices {
                if i >= vals.len() || used[i] {
                    return false;
                }
                used[i] = true;
            }
            let nums: Vec<u8> = m.indices.iter().map(|&i| vals[i]).collect();
            if unit_kind(&nums) != Some(m.kind) {
                return false;
            }
            if m.kind == MeldKind::Pair && !pair_values.insert(nums[0]) {
                return false;
            }
        }
        true
    }
}

fn unit_kind(nums: &[u8]) -> Option<MeldKind> {
    match *nums {
        [a, b] if a == b => Some(MeldKind::Pair),
        [a, b] if b > a && b - a <= 2 => Some(MeldKind::Pchow),
        [a, b, c] if a == b && b == c => Some(MeldKind::Pong),
        [a, b, c] if b == a + 1 && c == b + 1 => Some(MeldKind::Chow),
        _ => None,
    }
}

/// A unit of a family, by its smallest value and shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Unit {
    Pong(u8),
    Chow(u8),
    Pair(u8),
    Pchow(u8, u8),
}

impl Unit {
    fn values(self) -> Vec<u8> {
        match self {
            Unit::Pong(v) => vec![v, v, v],
            Unit::Chow(v) => vec![v, v + 1, v + 2],
            Unit::Pair(v) => vec![v, v],
            Unit::Pchow(a, b) => vec![a, b],
        }
    }

    fn kind(self) -> MeldKind {
        match self {
            Unit::Pong(_) => MeldKind::Pong,
            Unit::Chow(_) => MeldKind::Chow,
            Unit::Pair(_) => MeldKind::Pair,
            Unit::Pchow(..) => MeldKind::Pchow,
        }
    }

    fn is_meld(self) -> bool {
        matches!(self, Unit::Pong(_) | Unit::Chow(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Allowed {
    Melds,
    Pmelds,
    Both,
}

/// Visits every family (as a unit list) drawn from `counts` (indexed by
/// value, `counts[0]` unused). Units are taken in canonical order (by
/// starting value, then shape), so each family is visited once.
fn for_each_family(counts: [u8; 10], allowed: Allowed, visit: &mut impl FnMut(&[Unit])) {
    fn units_at(v: u8, allowed: Allowed) -> Vec<Unit> {
        let mut units = Vec::with_capacity(5);
        if allowed != Allowed::Pmelds {
            units.push(Unit::Pong(v));
            if v <= 7 {
                units.push(Unit::Chow(v));
            }
        }
        if allowed != Allowed::Melds {
            units.push(Unit::Pair(v));
            for d in 1..=2 {
                if v + d <= 9 {
                    units.push(Unit::Pchow(v, v + d));
                }
            }
        }
        units
    }

    fn go(
        counts: &mut [u8; 10],
        v: u8,
        first_unit: usize,
        pairs: &mut [bool; 10],
        allowed: Allowed,
        stack: &mut Vec<Unit>,
        visit: &mut impl FnMut(&[Unit]),
    ) {
        if v > 9 {
            visit(stack);
            return;
        }
        if counts[v as usize] > 0 {
            for (ui, unit) in units_at(v, allowed).into_iter().enumerate().skip(first_unit) {
                let vals = unit.values();
                let mut need = [0u8; 10];
                for &x in &vals {
                    need[x as usize] += 1;
                }
                let fits = (1..10).all(|x| need[x] <= counts[x]);
                let pair_ok = !matches!(unit, Unit::Pair(p) if pairs[p as usize]);
                if !fits || !pair_ok {
                    continue;
                }
                for &x in &vals {
                    counts[x as usize] -= 1;
                }
                if let Unit::Pair(p) = unit {
                    pairs[p as usize] = true;
                }
                stack.push(unit);
                go(counts, v, ui, pairs, allowed, stack, visit);
                stack.pop();
                if let Unit::Pair(p) = unit {
                    pairs[p as usize] = false;
                }
                for &x in &vals {
                    counts[x as usize] += 1;
                }
            }
        }
        // remaining copies of `v` stay out of the family
        go(counts, v + 1, 0, pairs, allowed, stack, visit);
    }
    let mut counts = counts;
    go(&mut counts, 1, 0, &mut [false; 10], allowed, &mut Vec::new(), visit);
}

fn value_counts(seq: &PureTiles) -> [u8; 10] {
    let mut counts = [0u8; 10];
    for &v in seq.values() {
        counts[v as usize] += 1;
    }
    counts
}

/// Maps units onto concrete positions of the host, lowest free index first.
fn to_family(seq: &PureTiles, units: &[Unit]) -> DisjointFamily {
    let vals = seq.values();
    let mut used = vec![false; vals.len()];
    let members = units
        .iter()
        .map(|&u| {
            let indices = u
                .values()
                .into_iter()
                .map(|x| {
                    let i = (0..vals.len())
                        .find(|&i| !used[i] && vals[i] == x)
                        .expect("unit values come from the host");
                    used[i] = true;
                    i
                })
                .collect();
            FamilyMember {
                kind: u.kind(),
                indices,
            }
        })
        .collect();
    DisjointFamily { members }
}

fn best_family(seq: &PureTiles, allowed: Allowed) -> (usize, DisjointFamily) {
    let mut best: Vec<Unit> = Vec::new();
    for_each_family(value_counts(seq), allowed, &mut |units| {
        if units.len() > best.len() {
            best = units.to_vec();
        }
    });
    (best.len(), to_family(seq, &best))
}

/// Largest number of pairwise disjoint melds, with a witness.
pub fn max_disjoint_melds(seq: &PureTiles) -> (usize, DisjointFamily) {
    best_family(seq, Allowed::Melds)
}

/// Largest number of pairwise disjoint pmelds, with a witness. A meld
/// can stand in for a pmeld but never yields a larger family, so only
/// two-tile members are searched.
pub fn max_disjoint_pmelds(seq: &PureTiles) -> (usize, DisjointFamily) {
    best_family(seq, Allowed::Pmelds)
}

/// The maximal `(melds, pmelds)` mixes achievable by a disjoint family.
///
/// Every achievable mix is dominated by some entry of the profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyProfile {
    frontier: BTreeSet<(usize, usize)>,
}

impl FamilyProfile {
    pub fn of(seq: &PureTiles) -> FamilyProfile {
        let mut all = BTreeSet::new();
        for_each_family(value_counts(seq), Allowed::Both, &mut |units| {
            let m = units.iter().filter(|u| u.is_meld()).count();
            all.insert((m, units.len() - m));
        });
        let frontier = all
            .iter()
            .copied()
            .filter(|&(m, p)| !all.iter().any(|&(m2, p2)| (m2, p2) != (m, p) && m2 >= m && p2 >= p))
            .collect();
        FamilyProfile { frontier }
    }

    /// Whether some family has at least `melds` melds and `pmelds` further pmelds.
    pub fn achieves(&self, melds: usize, pmelds: usize) -> bool {
        self.frontier.iter().any(|&(m, p)| m >= melds && p >= pmelds)
    }

    pub fn frontier(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.frontier.iter().copied()
    }
}

/// Whether `seq` (of length `k = seq.len()`, `1 <= k <= 8`) is a worst
/// pure k-tile: no family beats the fewest disjoint melds/pmelds that any
/// k same-suit tiles must contain.
///
/// | k     | best families allowed                |
/// |-------|--------------------------------------|
/// | 1..=3 | none                                 |
/// | 4, 5  | one pmeld                            |
/// | 6     | one meld, or two pmelds              |
/// | 7     | two pmelds                           |
/// | 8     | one meld plus one pmeld, or three pmelds |
pub fn is_worst_pure_k_tile(seq: &PureTiles) -> bool {
    let profile = FamilyProfile::of(seq);
    let forbidden: &[(usize, usize)] = match seq.len() {
        1..=3 => &[(0, 1), (1, 0)],
        4 | 5 => &[(1, 0), (0, 2)],
        6 => &[(2, 0), (1, 1), (0, 3)],
        7 => &[(1, 0), (0, 3)],
        8 => &[(2, 0), (1, 2), (0, 4)],
        _ => return false,
    };
    !forbidden.iter().any(|&(m, p)| profile.achieves(m, p))
}

/// Whether the sequence contains no pmeld at all.
pub fn has_no_pmeld(seq: &PureTiles) -> bool {
    max_disjoint_pmelds(seq).0 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::Suit;

    fn t(s: &str) -> Tile {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> PureTiles {
        PureTiles::parse(s).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&[t("B3"), t("B4"), t("B5")]), Some(MeldKind::Chow));
        assert_eq!(classify(&[t("D9"); 4]), Some(MeldKind::Kong));
        assert_eq!(classify(&[t("B1"), t("B3")]), Some(MeldKind::Pchow));
        assert_eq!(classify(&[t("C2"), t("C3")]), Some(MeldKind::Pchow));
        assert_eq!(classify(&[t("B1"), t("C1")]), None);
        assert_eq!(classify(&[t("C1"), t("C1")]), Some(MeldKind::Pair));
        assert_eq!(classify(&[t("B7"); 3]), Some(MeldKind::Pong));
        assert_eq!(classify(&[t("B1"), t("B4")]), None);
        assert_eq!(classify(&[t("B5"), t("B3"), t("B4")]), Some(MeldKind::Chow));
        assert_eq!(classify(&[t("B8"), t("B9"), t("C1")]), None);
        let _ = Suit::Bamboo;
    }

    #[test]
    fn disjoint_meld_examples() {
        let (n, fam) = max_disjoint_melds(&seq("11123456788999"));
        assert_eq!(n, 4);
        assert!(fam.is_valid_for(&seq("11123456788999")));
        assert_eq!(max_disjoint_melds(&seq("1248")).0, 0);
        assert_eq!(max_disjoint_melds(&seq("11225566888899")).0, 1);
    }

    #[test]
    fn disjoint_pmeld_examples() {
        assert_eq!(max_disjoint_pmelds(&seq("1248")).0, 1);
        assert_eq!(max_disjoint_pmelds(&seq("111158")).0, 1);
        let (n, fam) = max_disjoint_pmelds(&seq("112233"));
        assert_eq!(n, 3);
        assert!(fam.is_valid_for(&seq("112233")));
    }

    #[test]
    fn identical_pairs_rejected_by_validator() {
        let host = seq("1111");
        let fam = DisjointFamily {
            members: vec![
                FamilyMember { kind: MeldKind::Pair, indices: vec![0, 1] },
                FamilyMember { kind: MeldKind::Pair, indices: vec![2, 3] },
            ],
        };
        assert!(!fam.is_valid_for(&host));
    }

    #[test]
    fn worst_k_tiles() {
        assert!(is_worst_pure_k_tile(&seq("147")));
        assert!(!is_worst_pure_k_tile(&seq("123")));
        assert!(is_worst_pure_k_tile(&seq("12258")));
        assert!(is_worst_pure_k_tile(&seq("3689")));
        assert!(!is_worst_pure_k_tile(&seq("1122")));
        assert!(!is_worst_pure_k_tile(&seq("123456789")));
    }

    #[test]
    fn profile_frontier_is_antichain() {
        let p = FamilyProfile::of(&seq("11123456788999"));
        assert!(p.achieves(4, 1));
        let f: Vec<_> = p.frontier().collect();
        for &a in &f {
            for &b in &f {
                assert!(a == b || !(a.0 >= b.0 && a.1 >= b.1));
            }
        }
    }
}
