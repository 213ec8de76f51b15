//! Deficiency: the fewest tile changes that turn a hand into a complete one.
//!
//! Computed as the minimum cost over completable p-decompositions by a
//! depth-first branch-and-bound over the sorted tiles. At the smallest
//! remaining tile `a` the search decides which slot, if any, `a` goes to;
//! since every smaller tile has already been placed, a slot receiving `a`
//! gets exactly one of
//!
//! * eye `(aa)` or `(a)`,
//! * meld slot `(aaa)`, `(a a+1 a+2)`, `(aa)`, `(a a+1)`, `(a a+2)` or `(a)`,
//!
//! or `a` is dropped into the remainder. Meld slots are filled in order, as
//! they are interchangeable. These branches enumerate every p-decomposition
//! up to slot order, so the minimum is exact.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::decomp::{parts_completable, PDecomposition, Part, EYE_SLOT, MELD_SLOTS};
use crate::melds::{has_no_pmeld, is_worst_pure_k_tile, max_disjoint_melds};
use crate::tiles::{Hand, PureTiles, Tile, TileCounts};

/// Environment variable bounding the number of memoized hands.
pub const CACHE_CAPACITY_ENV: &str = "MJZERO_CACHE_CAPACITY";
const DEFAULT_CACHE_CAPACITY: usize = 1 << 20;

/// The largest deficiency any hand can have.
pub const MAX_DEFICIENCY: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyResult {
    pub value: u32,
    /// A completable p-decomposition of cost `value`.
    pub witness: PDecomposition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Eye,
    Meld,
}

struct Search {
    remaining: TileCounts,
    left: u32,
    parts: [Part; 5],
    /// Holes in nonempty slots; those slots are final once opened.
    holes: u32,
    best: u32,
    best_parts: Option<[Part; 5]>,
    forbid_empty: bool,
}

impl Search {
    fn new(hand: &Hand, bound: u32, forbid_empty: bool) -> Search {
        Search {
            remaining: *hand.counts(),
            left: hand.counts().total(),
            parts: [Part::EMPTY; 5],
            holes: 0,
            best: bound,
            best_parts: None,
            forbid_empty,
        }
    }

    fn empty_meld_slot(&self) -> Option<usize> {
        self.parts[..MELD_SLOTS].iter().position(|p| p.is_empty())
    }

    fn empty_capacity(&self) -> u32 {
        let melds = self.parts[..MELD_SLOTS].iter().filter(|p| p.is_empty()).count() as u32;
        let eye = self.parts[EYE_SLOT].is_empty() as u32;
        3 * melds + 2 * eye
    }

    fn run(&mut self) {
        let capacity = self.empty_capacity();
        if self.holes + capacity.saturating_sub(self.left) >= self.best {
            return;
        }
        if self.left == 0 || capacity == 0 {
            if self.forbid_empty && capacity > 0 {
                return;
            }
            // remaining tiles, if any, form the remainder
            self.best = self.holes + capacity;
            self.best_parts = Some(self.parts);
            return;
        }
        let a = self.remaining.kinds().next().expect("tiles left");
        let count = self.remaining[a];
        let next = a.offset(1).filter(|&t| self.remaining[t] > 0);
        let skip = a.offset(2).filter(|&t| self.remaining[t] > 0);

        if count >= 2 {
            self.open(Slot::Eye, &[a, a]);
        }
        if count >= 3 {
            self.open(Slot::Meld, &[a, a, a]);
        }
        if let (Some(b), Some(c)) = (next, skip) {
            self.open(Slot::Meld, &[a, b, c]);
        }
        if count >= 2 {
            self.open(Slot::Meld, &[a, a]);
        }
        if let Some(b) = next {
            self.open(Slot::Meld, &[a, b]);
        }
        if let Some(c) = skip {
            self.open(Slot::Meld, &[a, c]);
        }
        self.open(Slot::Eye, &[a]);
        self.open(Slot::Meld, &[a]);

        // discard one copy of a
        self.remaining[a] -= 1;
        self.left -= 1;
        self.run();
        self.remaining[a] += 1;
        self.left += 1;
    }

    fn open(&mut self, slot: Slot, tiles: &[Tile]) {
        let index = match slot {
            Slot::Eye if self.parts[EYE_SLOT].is_empty() => EYE_SLOT,
            Slot::Meld => match self.empty_meld_slot() {
                Some(i) => i,
                None => return,
            },
            Slot::Eye => return,
        };
        let part = Part::from_tiles(tiles).expect("at most three tiles");
        self.parts[index] = part;
        if parts_completable(&self.parts) {
            let holes = part.holes(index);
            for &t in tiles {
                self.remaining[t] -= 1;
            }
            self.left -= tiles.len() as u32;
            self.holes += holes;
            self.run();
            self.holes -= holes;
            self.left += tiles.len() as u32;
            for &t in tiles {
                self.remaining[t] += 1;
            }
        }
        self.parts[index] = Part::EMPTY;
    }
}

fn search(hand: &Hand, forbid_empty: bool) -> Option<DeficiencyResult> {
    // every hand has deficiency at most 6; an exclusive bound of 7 keeps
    // witnesses of cost 6 while pruning anything worse
    let mut s = Search::new(hand, MAX_DEFICIENCY + 1, forbid_empty);
    s.run();
    if s.best_parts.is_none() {
        s = Search::new(hand, u32::MAX, forbid_empty);
        s.run();
    }
    let parts = s.best_parts?;
    let witness = PDecomposition::from_parts(hand, parts).expect("search parts come from the hand");
    Some(DeficiencyResult {
        value: s.best,
        witness,
    })
}

fn cache() -> &'static DashMap<u128, (u32, [Part; 5])> {
    static CACHE: OnceLock<DashMap<u128, (u32, [Part; 5])>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

static CAPACITY: AtomicUsize = AtomicUsize::new(0);

fn cache_capacity() -> usize {
    match CAPACITY.load(Ordering::Relaxed) {
        0 => {
            let n = std::env::var(CACHE_CAPACITY_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
                .filter(|&n| n > 0)
                .unwrap_or(DEFAULT_CACHE_CAPACITY);
            CAPACITY.store(n, Ordering::Relaxed);
            n
        }
        n => n,
    }
}

/// Overrides the memo table size read from the environment. Zero is
/// treated as one.
pub fn set_cache_capacity(entries: usize) {
    CAPACITY.store(entries.max(1), Ordering::Relaxed);
}

/// Drops every memoized deficiency.
pub fn clear_cache() {
    cache().clear();
}

/// Deficiency with a minimal-cost witness. Results are memoized on the
/// bcd-type form, so colour permutations of a hand share one entry.
pub fn deficiency(hand: &Hand) -> DeficiencyResult {
    let (canonical, perm) = hand.to_bcd_type();
    let key = canonical.counts().key();
    let back = perm.inverse();
    let restore = |parts: [Part; 5]| {
        let parts = parts.map(|p| {
            Part::from_tiles(&p.tiles().map(|t| back.apply(t)).collect::<Vec<_>>()).expect("same size")
        });
        PDecomposition::from_parts(hand, parts).expect("permuted witness partitions the hand")
    };
    if let Some(hit) = cache().get(&key) {
        let (value, parts) = *hit;
        return DeficiencyResult {
            value,
            witness: restore(parts),
        };
    }
    let result = search(&canonical, false).expect("unrestricted search always finds a p-decomposition");
    let cache = cache();
    if cache.len() >= cache_capacity() {
        cache.clear();
    }
    let parts = *result.witness.slots();
    cache.insert(key, (result.value, parts));
    DeficiencyResult {
        value: result.value,
        witness: restore(parts),
    }
}

/// Deficiency without touching the memo table.
pub fn deficiency_uncached(hand: &Hand) -> DeficiencyResult {
    search(hand, false).expect("unrestricted search always finds a p-decomposition")
}

/// Cheapest completable p-decomposition in which every slot holds a tile.
pub fn min_cost_without_empty_parts(hand: &Hand) -> Option<DeficiencyResult> {
    search(hand, true)
}

pub fn is_deficiency_at_most(hand: &Hand, bound: u32) -> bool {
    deficiency(hand).value <= bound
}

// ---------------------------------------------------------------------------
// structural characterizations

/// Deficiency-3 test for pure hands by counting pattern.
///
/// Either a kong with five different pairs and at most one meld, or a pong
/// `p`, a single `s` and five different pairs such that some `x` in the
/// hand makes `(p s x)` a chow, nothing outside that chow forms one, and
/// the hand holds at most one disjoint meld.
pub fn is_deficiency3_pure(seq: &PureTiles) -> bool {
    if seq.len() != 14 {
        return false;
    }
    let counts = seq.counts();
    let mut by_count = [0usize; 5];
    for &c in &counts {
        by_count[c as usize] += 1;
    }
    let single_meld = max_disjoint_melds(seq).0 <= 1;
    if by_count[4] == 1 && by_count[2] == 5 && by_count[3] == 0 && by_count[1] == 0 {
        return single_meld;
    }
    if !(by_count[3] == 1 && by_count[1] == 1 && by_count[2] == 5 && by_count[4] == 0) {
        return false;
    }
    let p = counts.iter().position(|&c| c == 3).unwrap() as u8 + 1;
    let s = counts.iter().position(|&c| c == 1).unwrap() as u8 + 1;
    let chow_with_x = (1..=9u8).filter(|&x| counts[x as usize - 1] > 0).any(|x| {
        let mut trio = [p, s, x];
        trio.sort_unstable();
        if !(trio[1] == trio[0] + 1 && trio[2] == trio[1] + 1) {
            return false;
        }
        let mut rest = counts;
        for v in trio {
            rest[v as usize - 1] -= 1;
        }
        !(1..=7).any(|v| rest[v - 1] > 0 && rest[v] > 0 && rest[v + 1] > 0)
    });
    chow_with_x && single_meld
}

/// Deficiency-6 test by suit counts and worst-tile conditions on the
/// bcd-type form.
pub fn is_deficiency6(hand: &Hand) -> bool {
    let (bcd, _) = hand.to_bcd_type();
    let split = bcd.suit_split();
    let [b, c, d] = &split.suits;
    match split.counts {
        [8, 3, 3] => is_worst_pure_k_tile(b) && has_no_pmeld(c) && has_no_pmeld(d),
        [7, 5, 2] => is_worst_pure_k_tile(b) && is_worst_pure_k_tile(c) && has_no_pmeld(d),
        [7, 4, 3] => is_worst_pure_k_tile(b) && is_worst_pure_k_tile(c) && has_no_pmeld(d),
        [6, 5, 3] => is_worst_pure_k_tile(b) && is_worst_pure_k_tile(c) && has_no_pmeld(d),
        [5, 5, 4] => is_worst_pure_k_tile(b) && is_worst_pure_k_tile(c) && is_worst_pure_k_tile(d),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{cost, is_complete, Cost};

    fn hand(s: &str) -> Hand {
        s.parse().unwrap()
    }

    #[test]
    fn golden_deficiencies() {
        for (h, d) in [
            ("B1B2B2B3B3B4B7B7B7C1C1D4D5D6", 0),
            ("11225566888899", 3),
            // (11)(222)(345)(456)(888) is two changes away
            ("11222344558899", 2),
            ("11222344668899", 3),
            ("B1B1B2B5B8C1C2C2C5C8D3D6D8D9", 6),
            ("B1B1B2B2B2B2B3B3C1C2C8D2D2D8", 2),
        ] {
            let h = hand(h);
            let r = deficiency(&h);
            assert_eq!(r.value, d, "{h}");
            assert_eq!(cost(&h, &r.witness), Ok(Cost::Finite(d)));
            assert_eq!(deficiency_uncached(&h).value, d);
        }
    }

    #[test]
    fn zero_iff_complete() {
        for h in ["11123456788999", "11225566888899", "B1B2B3B4B5B6B7B8B9C1C2C3D5D5"] {
            let h = hand(h);
            assert_eq!(deficiency(&h).value == 0, is_complete(&h));
        }
    }

    #[test]
    fn cached_witness_follows_colours() {
        let h = hand("B1B1B2B2B2B2B3B3C2C2C8D1D2D8");
        let (bcd, perm) = h.to_bcd_type();
        assert_ne!(perm, crate::tiles::ColourPerm::IDENTITY);
        let a = deficiency(&bcd);
        let b = deficiency(&h);
        assert_eq!(a.value, b.value);
        assert_eq!(cost(&h, &b.witness), Ok(Cost::Finite(b.value)));
    }

    #[test]
    fn no_empty_parts_variant() {
        let h = hand("B1B1B2B5B8C1C2C2C5C8D3D6D8D9");
        let r = min_cost_without_empty_parts(&h).unwrap();
        assert!(r.witness.empty_parts() == 0);
        assert!(r.value >= 6);
    }

    #[test]
    fn characterizations_on_examples() {
        assert!(is_deficiency3_pure(&PureTiles::parse("11222344668899").unwrap()));
        assert!(is_deficiency3_pure(&PureTiles::parse("11225566888899").unwrap()));
        assert!(!is_deficiency3_pure(&PureTiles::parse("11222344558899").unwrap()));
        assert!(!is_deficiency3_pure(&PureTiles::parse("11223344556677").unwrap()));
        // (123)(123)(456)(456)(11) is complete
        assert!(!is_deficiency3_pure(&PureTiles::parse("11112233445566").unwrap()));
        assert!(is_deficiency6(&hand("B1B1B2B5B8C1C2C2C5C8D3D6D8D9")));
        assert!(!is_deficiency6(&hand("B1B2B2B3B3B4B7B7B7C1C1D4D5D6")));
    }
}
