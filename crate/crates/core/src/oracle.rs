//! Ground truth by graph search, sharing no code with the p-decomposition
//! search.
//!
//! Complete suits are generated bottom-up as sums of melds (and possibly an
//! eye). The pure census runs a multi-source breadth-first search from
//! every complete pure hand; `bfs_deficiency` searches outward from an
//! arbitrary hand.

use std::collections::HashSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::tiles::{Hand, PureTiles, Suit, Tile, TileCounts, HAND_SIZE, MAX_COPIES};

const STATES: usize = 1_953_125; // 5^9

fn code(counts: &[u8; 9]) -> usize {
    counts.iter().rev().fold(0, |acc, &c| acc * 5 + c as usize)
}

fn decode(mut code: usize) -> [u8; 9] {
    let mut out = [0u8; 9];
    for c in out.iter_mut() {
        *c = (code % 5) as u8;
        code /= 5;
    }
    out
}

/// Per-suit facts indexed by the base-5 code of a suit's counts.
struct SuitTables {
    /// The suit is a union of melds, plus one eye if its size is 2 mod 3.
    dec: Vec<bool>,
    /// Removing one tile leaves a `dec` suit.
    minus1: Vec<bool>,
    /// Adding one tile (within the copy limit) gives a `dec` suit.
    plus1: Vec<bool>,
    /// Exchanging one tile for a different one of the suit gives a `dec` suit.
    swap1: Vec<bool>,
}

fn melds_of_suit() -> Vec<[u8; 9]> {
    let mut out = Vec::new();
    for v in 0..9 {
        let mut m = [0u8; 9];
        m[v] = 3;
        out.push(m);
    }
    for v in 0..7 {
        let mut m = [0u8; 9];
        m[v] = 1;
        m[v + 1] = 1;
        m[v + 2] = 1;
        out.push(m);
    }
    out
}

fn tables() -> &'static SuitTables {
    static TABLES: OnceLock<SuitTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let melds = melds_of_suit();
        let mut dec = vec![false; STATES];
        // sums of up to four melds, with and without an eye
        let mut layer: HashSet<[u8; 9]> = HashSet::from([[0u8; 9]]);
        for _ in 0..=4 {
            let mut next = HashSet::new();
            for s in &layer {
                dec[code(s)] = true;
                for e in 0..9 {
                    if s[e] + 2 <= MAX_COPIES {
                        let mut with_eye = *s;
                        with_eye[e] += 2;
                        dec[code(&with_eye)] = true;
                    }
                }
                for m in &melds {
                    let mut t = *s;
                    if (0..9).all(|i| {
                        t[i] += m[i];
                        t[i] <= MAX_COPIES
                    }) {
                        next.insert(t);
                    }
                }
            }
            layer = next;
        }

        let mut minus1 = vec![false; STATES];
        let mut plus1 = vec![false; STATES];
        let mut swap1 = vec![false; STATES];
        let mut pow = [1usize; 9];
        for i in 1..9 {
            pow[i] = pow[i - 1] * 5;
        }
        for c in 0..STATES {
            let counts = decode(c);
            let size: u32 = counts.iter().map(|&x| x as u32).sum();
            if size > HAND_SIZE as u32 + 1 {
                continue;
            }
            for i in 0..9 {
                if counts[i] > 0 && dec[c - pow[i]] {
                    minus1[c] = true;
                }
                if counts[i] < MAX_COPIES && dec[c + pow[i]] {
                    plus1[c] = true;
                }
                if counts[i] > 0 {
                    for j in 0..9 {
                        if j != i && counts[j] < MAX_COPIES && dec[c - pow[i] + pow[j]] {
                            swap1[c] = true;
                        }
                    }
                }
            }
        }
        SuitTables {
            dec,
            minus1,
            plus1,
            swap1,
        }
    })
}

fn suit_codes(counts: &TileCounts) -> [usize; 3] {
    Suit::ALL.map(|s| code(&counts.suit(s)))
}

/// Whether the hand splits into four melds and an eye.
pub fn is_complete(counts: &TileCounts) -> bool {
    let t = tables();
    suit_codes(counts).iter().all(|&c| t.dec[c])
}

/// Whether one tile change reaches a complete hand.
fn has_complete_neighbour(counts: &TileCounts) -> bool {
    let t = tables();
    let v = suit_codes(counts);
    for s in 0..3 {
        let (a, b) = ((s + 1) % 3, (s + 2) % 3);
        if t.swap1[v[s]] && t.dec[v[a]] && t.dec[v[b]] {
            return true;
        }
        // a tile leaves suit s for suit a (or b)
        if t.minus1[v[s]] && ((t.plus1[v[a]] && t.dec[v[b]]) || (t.plus1[v[b]] && t.dec[v[a]])) {
            return true;
        }
    }
    false
}

fn neighbour_counts(counts: &TileCounts, out: &mut Vec<TileCounts>) {
    out.clear();
    for r in counts.kinds() {
        for a in Tile::all() {
            if a != r && counts[a] < MAX_COPIES {
                let mut next = *counts;
                next[r] -= 1;
                next[a] += 1;
                out.push(next);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum BfsOutcome {
    Exact(u32),
    Unknown,
}

/// Shortest path in the hand graph to a complete hand, if at most
/// `max_depth` long.
pub fn bfs_deficiency(hand: &Hand, max_depth: u32) -> BfsOutcome {
    let start = *hand.counts();
    if is_complete(&start) {
        return BfsOutcome::Exact(0);
    }
    let mut seen: HashSet<u128> = HashSet::from([start.key()]);
    let mut frontier = vec![start];
    let mut buf = Vec::new();
    for depth in 0..max_depth {
        // nothing within `depth` is complete; the next layer is checked
        // without materializing it
        if frontier.iter().any(has_complete_neighbour) {
            return BfsOutcome::Exact(depth + 1);
        }
        if depth + 1 == max_depth {
            break;
        }
        let mut next = Vec::new();
        for state in &frontier {
            neighbour_counts(state, &mut buf);
            for n in &buf {
                if seen.insert(n.key()) {
                    next.push(*n);
                }
            }
        }
        frontier = next;
    }
    BfsOutcome::Unknown
}

/// Every valid pure 14-tile in lexicographic order.
pub fn enumerate_pure_14tiles() -> impl Iterator<Item = PureTiles> {
    let mut current: Option<Vec<u8>> = Some(vec![1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4]);
    std::iter::from_fn(move || {
        let out = current.take()?;
        current = successor(&out);
        Some(PureTiles::new(out).expect("enumeration yields valid sequences"))
    })
}

/// Lexicographic successor among sorted sequences with at most four copies.
fn successor(seq: &[u8]) -> Option<Vec<u8>> {
    let n = seq.len();
    for i in (0..n).rev() {
        for v in seq[i] + 1..=9 {
            let mut next = seq[..i].to_vec();
            // fill the tail with the smallest admissible values from v on
            let mut value = v;
            while next.len() < n && value <= 9 {
                let used = next.iter().filter(|&&x| x == value).count();
                if used < MAX_COPIES as usize {
                    next.push(value);
                } else {
                    value += 1;
                }
            }
            if next.len() == n {
                return Some(next);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub total: u64,
    /// Counts of pure 14-tiles by deficiency 0, 1, 2, 3.
    pub by_deficiency: Vec<u64>,
}

/// Distances of every pure 14-tile to the nearest complete pure 14-tile,
/// moving only within the suit.
pub struct PureDistances {
    dist: Vec<u8>,
}

impl PureDistances {
    pub fn get(&self, seq: &PureTiles) -> Option<u32> {
        if seq.len() != HAND_SIZE {
            return None;
        }
        match self.dist[code(&seq.counts())] {
            u8::MAX => None,
            d => Some(d as u32),
        }
    }

    pub fn report(&self) -> CensusReport {
        let mut by = Vec::new();
        let mut total = 0;
        for &d in self.dist.iter().filter(|&&d| d != u8::MAX) {
            let d = d as usize;
            if by.len() <= d {
                by.resize(d + 1, 0);
            }
            by[d] += 1;
            total += 1;
        }
        CensusReport {
            total,
            by_deficiency: by,
        }
    }
}

/// Multi-source breadth-first search over the pure 14-tile graph.
pub fn pure_distances() -> PureDistances {
    let t = tables();
    let mut dist = vec![u8::MAX; STATES];
    let mut frontier = Vec::new();
    for (c, slot) in dist.iter_mut().enumerate() {
        if t.dec[c] && decode(c).iter().map(|&x| x as usize).sum::<usize>() == HAND_SIZE {
            *slot = 0;
            frontier.push(c);
        }
    }
    let mut pow = [1usize; 9];
    for i in 1..9 {
        pow[i] = pow[i - 1] * 5;
    }
    let mut d = 0u8;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for &c in &frontier {
            let counts = decode(c);
            for r in 0..9 {
                if counts[r] == 0 {
                    continue;
                }
                for a in 0..9 {
                    if a != r && counts[a] < MAX_COPIES {
                        let n = c - pow[r] + pow[a];
                        if dist[n] == u8::MAX {
                            dist[n] = d;
                            next.push(n);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    PureDistances { dist }
}

pub fn pure_census() -> CensusReport {
    pure_distances().report()
}

/// Complete suit contents grouped by shape: `groups[2 * melds + eye]`.
fn suit_shapes() -> &'static Vec<Vec<[u8; 9]>> {
    static SHAPES: OnceLock<Vec<Vec<[u8; 9]>>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        let melds = melds_of_suit();
        let mut groups = vec![Vec::new(); 10];
        let mut layer: HashSet<[u8; 9]> = HashSet::from([[0u8; 9]]);
        for m in 0..=4 {
            let mut eyes = HashSet::new();
            for s in &layer {
                for e in 0..9 {
                    if s[e] + 2 <= MAX_COPIES {
                        let mut with_eye = *s;
                        with_eye[e] += 2;
                        eyes.insert(with_eye);
                    }
                }
            }
            groups[2 * m] = layer.iter().copied().collect();
            groups[2 * m + 1] = eyes.into_iter().collect();
            let mut next = HashSet::new();
            for s in &layer {
                for meld in &melds {
                    let mut t = *s;
                    if (0..9).all(|i| {
                        t[i] += meld[i];
                        t[i] <= MAX_COPIES
                    }) {
                        next.insert(t);
                    }
                }
            }
            layer = next;
        }
        groups
    })
}

/// Exact deficiency of any hand: 14 minus the largest overlap with a
/// complete hand, maximized suit by suit over how the four melds and the
/// eye are shared among the suits.
pub fn exhaustive_deficiency(hand: &Hand) -> u32 {
    let groups = suit_shapes();
    // best[suit][shape]: largest overlap of the suit with a complete suit of that shape
    let best: Vec<Vec<u32>> = Suit::ALL
        .iter()
        .map(|&s| {
            let have = hand.counts().suit(s);
            groups
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|v| (0..9).map(|i| v[i].min(have[i]) as u32).sum())
                        .max()
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    let mut overlap = 0;
    for mb in 0..=4 {
        for mc in 0..=4 - mb {
            let md = 4 - mb - mc;
            for eye in 0..3 {
                let shape = |suit: usize, m: usize| 2 * m + (eye == suit) as usize;
                let o = best[0][shape(0, mb)] + best[1][shape(1, mc)] + best[2][shape(2, md)];
                overlap = overlap.max(o);
            }
        }
    }
    HAND_SIZE as u32 - overlap
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hand(s: &str) -> Hand {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_order_and_size() {
        let mut it = enumerate_pure_14tiles();
        assert_eq!(it.next().unwrap().to_string(), "(11112222333344)");
        assert_eq!(it.next().unwrap().to_string(), "(11112222333345)");
        assert_eq!(enumerate_pure_14tiles().count(), 118_800);
    }

    #[test]
    fn census_numbers() {
        let r = pure_census();
        assert_eq!(r.total, 118_800);
        assert_eq!(r.by_deficiency, vec![13_259, 91_065, 14_386, 90]);
    }

    #[test]
    fn bfs_examples() {
        let t = hand("B1B1B2B2B2B2B3B3C1C2C8D2D2D8");
        assert_eq!(bfs_deficiency(&t, 3), BfsOutcome::Exact(2));
        assert_eq!(bfs_deficiency(&t, 1), BfsOutcome::Unknown);
        assert_eq!(bfs_deficiency(&hand("B1B2B2B3B3B4B7B7B7C1C1D4D5D6"), 0), BfsOutcome::Exact(0));
        assert_eq!(bfs_deficiency(&hand("11225566888899"), 0), BfsOutcome::Unknown);
    }

    #[test]
    fn exhaustive_examples() {
        for (h, d) in [
            ("B1B2B2B3B3B4B7B7B7C1C1D4D5D6", 0),
            ("11225566888899", 3),
            ("B1B1B2B5B8C1C2C2C5C8D3D6D8D9", 6),
            ("B1B1B2B2B2B2B3B3C1C2C8D2D2D8", 2),
        ] {
            assert_eq!(exhaustive_deficiency(&hand(h)), d, "{h}");
        }
    }

    #[test]
    fn complete_neighbour_check_matches_expansion() {
        let t = hand("B1B1B2B2B2B2B3B3C1C2C8D2D2D8");
        for n in t.neighbours() {
            let direct = n.neighbours().iter().any(|m| is_complete(m.counts()));
            assert_eq!(has_complete_neighbour(n.counts()), direct, "{n}");
        }
    }
}
