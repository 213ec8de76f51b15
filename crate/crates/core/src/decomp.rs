//! Complete hands and pseudo-decompositions.
//!
//! A p-decomposition assigns tiles of a hand to four meld slots and one eye
//! slot; whatever is left over is the remainder. Its cost is the number of
//! holes, i.e. tiles that must be drawn to turn every slot into a meld (or
//! the eye into a pair), provided the completed hand keeps at most four
//! copies of each kind. Empty slots can be completed in any suit; a slot
//! holding at least one tile is bound to that tile's suit.

use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::OnceLock;

use serde::Serialize;

use crate::melds::max_disjoint_melds;
use crate::tiles::{Hand, PureTiles, Suit, Tile, TileCounts, HAND_SIZE, MAX_COPIES};

/// Meld slots `π(1)..π(4)` are indices `0..4`; the eye slot `π(5)` is index 4.
pub const MELD_SLOTS: usize = 4;
pub const EYE_SLOT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompError {
    #[error("the parts and remainder do not partition the hand")]
    NotAPartition,
    #[error("slot {slot} cannot hold {tiles}")]
    InvalidPart { slot: usize, tiles: String },
    #[error("the p-decomposition cannot be completed")]
    Incompletable,
}

// ---------------------------------------------------------------------------
// complete hands

const SUIT_STATES: usize = 1_953_125; // 5^9

fn suit_code(counts: &[u8; 9]) -> usize {
    counts.iter().rev().fold(0, |acc, &c| acc * 5 + c as usize)
}

/// Splits a suit into melds (and one eye when `with_eye`), smallest tile first.
fn split_suit(counts: &mut [u8; 9], with_eye: bool, out: &mut Vec<[u8; 3]>) -> bool {
    let Some(v) = counts.iter().position(|&c| c > 0) else {
        return !with_eye;
    };
    if with_eye && counts[v] >= 2 {
        counts[v] -= 2;
        out.push([v as u8, v as u8, u8::MAX]);
        if split_suit(counts, false, out) {
            counts[v] += 2;
            return true;
        }
        out.pop();
        counts[v] += 2;
    }
    if counts[v] >= 3 {
        counts[v] -= 3;
        out.push([v as u8; 3]);
        if split_suit(counts, with_eye, out) {
            counts[v] += 3;
            return true;
        }
        out.pop();
        counts[v] += 3;
    }
    if v + 2 < 9 && counts[v + 1] > 0 && counts[v + 2] > 0 {
        counts[v..v + 3].iter_mut().for_each(|c| *c -= 1);
        out.push([v as u8, v as u8 + 1, v as u8 + 2]);
        let ok = split_suit(counts, with_eye, out);
        counts[v..v + 3].iter_mut().for_each(|c| *c += 1);
        if ok {
            return true;
        }
        out.pop();
    }
    false
}

/// Whether a suit splits into melds, plus one eye when its size is 2 mod 3.
fn suit_decomposable(counts: &[u8; 9]) -> bool {
    static TABLE: OnceLock<Vec<AtomicU8>> = OnceLock::new();
    let table = TABLE.get_or_init(|| (0..SUIT_STATES).map(|_| AtomicU8::new(0)).collect());
    let code = suit_code(counts);
    match table[code].load(Ordering::Relaxed) {
        1 => return false,
        2 => return true,
        _ => {}
    }
    let size: u32 = counts.iter().map(|&c| c as u32).sum();
    let ok = match size % 3 {
        0 => split_suit(&mut counts.clone(), false, &mut Vec::new()),
        2 => split_suit(&mut counts.clone(), true, &mut Vec::new()),
        _ => false,
    };
    table[code].store(if ok { 2 } else { 1 }, Ordering::Relaxed);
    ok
}

/// Whether the tiles split into four melds and one eye.
pub fn is_complete(hand: &Hand) -> bool {
    counts_complete(hand.counts())
}

pub(crate) fn counts_complete(counts: &TileCounts) -> bool {
    Suit::ALL.iter().all(|&s| suit_decomposable(&counts.suit(s)))
}

/// Four melds and an eye partitioning a complete hand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub melds: [[Tile; 3]; 4],
    pub eye: [Tile; 2],
}

impl Decomposition {
    pub fn to_pdecomposition(&self, hand: &Hand) -> PDecomposition {
        let mut parts: [Vec<Tile>; 5] = Default::default();
        for (slot, m) in self.melds.iter().enumerate() {
            parts[slot] = m.to_vec();
        }
        parts[EYE_SLOT] = self.eye.to_vec();
        PDecomposition::new(hand, parts).expect("a decomposition partitions its hand")
    }
}

/// A witness decomposition, if the hand is complete.
pub fn decompose(hand: &Hand) -> Option<Decomposition> {
    let mut melds = Vec::new();
    let mut eye = None;
    for suit in Suit::ALL {
        let mut counts = hand.counts().suit(suit);
        let size: u32 = counts.iter().map(|&c| c as u32).sum();
        let mut groups = Vec::new();
        if size % 3 == 1 || !split_suit(&mut counts, size % 3 == 2, &mut groups) {
            return None;
        }
        for g in groups {
            let tile = |v: u8| Tile::new(suit, v + 1).expect("suit offsets are 0..9");
            if g[2] == u8::MAX {
                eye = Some([tile(g[0]), tile(g[1])]);
            } else {
                melds.push(g.map(tile));
            }
        }
    }
    Some(Decomposition {
        melds: melds.try_into().ok()?,
        eye: eye?,
    })
}

/// Suit sequence is exactly `melds` disjoint melds.
fn consists_of_melds(seq: &PureTiles, melds: usize) -> bool {
    seq.len() == 3 * melds && max_disjoint_melds(seq).0 == melds
}

/// Suit sequence is exactly `melds` disjoint melds plus a pair.
fn consists_of_melds_and_pair(seq: &PureTiles, melds: usize) -> bool {
    seq.len() == 3 * melds + 2
        && (1..=9u8).any(|v| {
            if seq.count(v) < 2 {
                return false;
            }
            let mut rest = seq.values().to_vec();
            for _ in 0..2 {
                let i = rest.iter().position(|&x| x == v).unwrap();
                rest.remove(i);
            }
            consists_of_melds(&PureTiles::from_sorted_unchecked(rest), melds)
        })
}

/// Completeness decided by the suit-count case table on the bcd-type form.
/// The nine suit-count patterns are every way to write 14 as two
/// multiples of three plus one value that is 2 mod 3.
pub fn complete_by_case_table(hand: &Hand) -> bool {
    let (bcd, _) = hand.to_bcd_type();
    let split = bcd.suit_split();
    let [b, c, d] = &split.suits;
    match split.counts {
        [14, 0, 0] => consists_of_melds_and_pair(b, 4),
        [12, 2, 0] => consists_of_melds(b, 4) && consists_of_melds_and_pair(c, 0),
        [11, 3, 0] => consists_of_melds_and_pair(b, 3) && consists_of_melds(c, 1),
        [9, 5, 0] => consists_of_melds(b, 3) && consists_of_melds_and_pair(c, 1),
        [9, 3, 2] => {
            consists_of_melds(b, 3) && consists_of_melds(c, 1) && consists_of_melds_and_pair(d, 0)
        }
        [8, 3, 3] => {
            consists_of_melds_and_pair(b, 2) && consists_of_melds(c, 1) && consists_of_melds(d, 1)
        }
        [8, 6, 0] => consists_of_melds_and_pair(b, 2) && consists_of_melds(c, 2),
        [6, 6, 2] => {
            consists_of_melds(b, 2) && consists_of_melds(c, 2) && consists_of_melds_and_pair(d, 0)
        }
        [6, 5, 3] => {
            consists_of_melds(b, 2) && consists_of_melds_and_pair(c, 1) && consists_of_melds(d, 1)
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// slot contents

/// Contents of one slot: up to three tiles, sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Part {
    tiles: [Option<Tile>; 3],
    len: u8,
}

impl Part {
    pub(crate) const EMPTY: Part = Part {
        tiles: [None; 3],
        len: 0,
    };

    pub(crate) fn from_tiles(tiles: &[Tile]) -> Option<Part> {
        if tiles.len() > 3 {
            return None;
        }
        let mut sorted = tiles.to_vec();
        sorted.sort_unstable();
        let mut part = Part::EMPTY;
        for (i, &t) in sorted.iter().enumerate() {
            part.tiles[i] = Some(t);
        }
        part.len = sorted.len() as u8;
        Some(part)
    }

    pub(crate) fn len(&self) -> usize {
        self.len as usize
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub(crate) fn tiles(&self) -> impl Iterator<Item = Tile> + '_ {
        self.tiles.iter().take(self.len()).map(|t| t.expect("len tiles present"))
    }

    pub(crate) fn to_vec(self) -> Vec<Tile> {
        self.tiles().collect()
    }

    pub(crate) fn with(&self, t: Tile) -> Option<Part> {
        let mut v = self.to_vec();
        v.push(t);
        Part::from_tiles(&v)
    }

    /// Whether the contents fit a meld slot (sub-multiset of a pong or chow).
    pub(crate) fn fits_meld_slot(&self) -> bool {
        let t: Vec<Tile> = self.tiles().collect();
        match t.len() {
            0 | 1 => true,
            2 => t[0].suit() == t[1].suit() && t[1].number() - t[0].number() <= 2,
            3 => {
                t[0].suit() == t[2].suit()
                    && ((t[0] == t[1] && t[1] == t[2])
                        || (t[1].number() == t[0].number() + 1 && t[2].number() == t[1].number() + 1))
            }
            _ => false,
        }
    }

    pub(crate) fn fits_eye_slot(&self) -> bool {
        match self.len {
            0 | 1 => true,
            2 => self.tiles[0] == self.tiles[1],
            _ => false,
        }
    }

    /// Missing tiles to become a meld (or, in the eye slot, a pair).
    pub(crate) fn holes(&self, slot: usize) -> u32 {
        let full = if slot == EYE_SLOT { 2 } else { 3 };
        full - self.len as u32
    }

    /// Every full meld (or pair, for the eye slot) containing this part.
    /// Empty parts have no listed targets: they can always be filled.
    pub(crate) fn targets(&self, slot: usize) -> Vec<[Option<Tile>; 3]> {
        let t: Vec<Tile> = self.tiles().collect();
        if t.is_empty() {
            return Vec::new();
        }
        if slot == EYE_SLOT {
            return vec![[Some(t[0]), Some(t[0]), None]];
        }
        let lo = t[0];
        let hi = t[t.len() - 1];
        let mut out = Vec::new();
        if lo == hi && t.len() <= 3 {
            out.push([Some(lo); 3]);
        }
        // chows starting at lo-2 ..= lo that cover every tile of the part
        for start in -2i8..=0 {
            let Some(first) = lo.offset(start) else { continue };
            let Some(last) = first.offset(2) else { continue };
            if hi > last || t.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            out.push([Some(first), first.offset(1), Some(last)]);
        }
        out
    }
}

/// Whether every nonempty slot can be completed at once without a fifth
/// copy of any kind. Empty slots are ignored: at most 14 tiles are in
/// play, so some pong or pair is always free for them.
pub(crate) fn parts_completable(parts: &[Part; 5]) -> bool {
    fn go(parts: &[Part; 5], slot: usize, used: &mut TileCounts) -> bool {
        if slot == parts.len() {
            return true;
        }
        if parts[slot].is_empty() {
            return go(parts, slot + 1, used);
        }
        for target in parts[slot].targets(slot) {
            let tiles = target.iter().flatten();
            let fits = {
                let mut scratch = *used;
                tiles.clone().all(|&t| {
                    scratch[t] += 1;
                    scratch[t] <= MAX_COPIES
                })
            };
            if !fits {
                continue;
            }
            for &t in tiles.clone() {
                used[t] += 1;
            }
            let ok = go(parts, slot + 1, used);
            for &t in tiles {
                used[t] -= 1;
            }
            if ok {
                return true;
            }
        }
        false
    }
    go(parts, 0, &mut TileCounts::new())
}

fn parts_cost(parts: &[Part; 5]) -> u32 {
    parts.iter().enumerate().map(|(slot, p)| p.holes(slot)).sum()
}

// ---------------------------------------------------------------------------
// p-decompositions

/// A cost that may be infinite (for incompletable p-decompositions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cost {
    Finite(u32),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<u32> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::Infinite => None,
        }
    }
}

impl std::fmt::Display for Cost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::Infinite => f.write_str("infinite"),
        }
    }
}

/// Five slots of a hand plus the remainder `π(0)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PDecomposition {
    parts: [Part; 5],
    remainder: Vec<Tile>,
}

impl PDecomposition {
    /// Builds a p-decomposition of `hand`; the remainder is whatever the
    /// parts leave over.
    pub fn new(hand: &Hand, parts: [Vec<Tile>; 5]) -> Result<PDecomposition, DecompError> {
        let mut slots = [Part::EMPTY; 5];
        for (slot, tiles) in parts.iter().enumerate() {
            let invalid = || DecompError::InvalidPart {
                slot: slot + 1,
                tiles: tiles.iter().map(|t| t.to_string()).collect(),
            };
            let part = Part::from_tiles(tiles).ok_or_else(invalid)?;
            let fits = if slot == EYE_SLOT {
                part.fits_eye_slot()
            } else {
                part.fits_meld_slot()
            };
            if !fits {
                return Err(invalid());
            }
            slots[slot] = part;
        }
        Self::from_parts(hand, slots)
    }

    pub(crate) fn from_parts(hand: &Hand, parts: [Part; 5]) -> Result<PDecomposition, DecompError> {
        let used = TileCounts::from_tiles(parts.iter().flat_map(|p| p.to_vec()));
        if !hand.counts().contains(&used) {
            return Err(DecompError::NotAPartition);
        }
        let mut rest = *hand.counts();
        for t in Tile::all() {
            rest[t] -= used[t];
        }
        Ok(PDecomposition {
            parts,
            remainder: rest.tiles().collect(),
        })
    }

    /// All slots empty, every tile in the remainder.
    pub fn empty(hand: &Hand) -> PDecomposition {
        PDecomposition {
            parts: [Part::EMPTY; 5],
            remainder: hand.tiles().to_vec(),
        }
    }

    /// Slot contents `π(1)..π(5)`.
    pub fn parts(&self) -> [Vec<Tile>; 5] {
        self.parts.map(|p| p.to_vec())
    }

    pub fn part(&self, slot: usize) -> Vec<Tile> {
        self.parts[slot].to_vec()
    }

    pub fn remainder(&self) -> &[Tile] {
        &self.remainder
    }

    pub(crate) fn slots(&self) -> &[Part; 5] {
        &self.parts
    }

    /// Tiles still to be drawn, assuming the slots can be completed.
    pub fn holes(&self) -> u32 {
        parts_cost(&self.parts)
    }

    pub fn empty_parts(&self) -> usize {
        self.parts.iter().filter(|p| p.is_empty()).count()
    }

    pub fn is_completable(&self) -> bool {
        parts_completable(&self.parts)
    }

    /// All tiles accounted for: slots plus remainder.
    pub fn covered(&self) -> TileCounts {
        TileCounts::from_tiles(self.parts.iter().flat_map(|p| p.to_vec()).chain(self.remainder.iter().copied()))
    }

    pub fn permute_colours(&self, perm: &crate::tiles::ColourPerm) -> PDecomposition {
        let parts = self.parts.map(|p| {
            Part::from_tiles(&p.tiles().map(|t| perm.apply(t)).collect::<Vec<_>>()).expect("same size")
        });
        let mut remainder: Vec<Tile> = self.remainder.iter().map(|&t| perm.apply(t)).collect();
        remainder.sort_unstable();
        PDecomposition { parts, remainder }
    }
}

impl std::fmt::Display for PDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for p in &self.parts {
            f.write_str("(")?;
            for t in p.tiles() {
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        if !self.remainder.is_empty() {
            f.write_str(" + ")?;
            for t in &self.remainder {
                write!(f, "{t}")?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for PDecomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PDecomposition{self}")
    }
}

fn check_partition(hand: &Hand, pd: &PDecomposition) -> Result<(), DecompError> {
    if pd.covered() == *hand.counts() {
        Ok(())
    } else {
        Err(DecompError::NotAPartition)
    }
}

/// Tiles to draw to complete every slot, or `Infinite` when no completion
/// keeps within four copies per kind.
pub fn cost(hand: &Hand, pd: &PDecomposition) -> Result<Cost, DecompError> {
    check_partition(hand, pd)?;
    Ok(if pd.is_completable() {
        Cost::Finite(pd.holes())
    } else {
        Cost::Infinite
    })
}

/// The slots `pd` could absorb `t` into, as the resulting parts.
fn absorptions(parts: &[Part; 5], t: Tile) -> Vec<[Part; 5]> {
    let mut out = Vec::new();
    let mut seeded_empty_meld = false;
    for slot in 0..5 {
        let part = parts[slot];
        if slot < MELD_SLOTS && part.is_empty() {
            // empty meld slots are interchangeable
            if seeded_empty_meld {
                continue;
            }
            seeded_empty_meld = true;
        }
        let Some(grown) = part.with(t) else { continue };
        let fits = if slot == EYE_SLOT {
            grown.fits_eye_slot()
        } else {
            grown.fits_meld_slot()
        };
        if fits {
            let mut next = *parts;
            next[slot] = grown;
            out.push(next);
        }
    }
    out
}

/// No remainder tile can join a slot while staying completable.
pub fn is_saturated(hand: &Hand, pd: &PDecomposition) -> Result<bool, DecompError> {
    check_partition(hand, pd)?;
    if !pd.is_completable() {
        return Err(DecompError::Incompletable);
    }
    let mut kinds = pd.remainder.clone();
    kinds.dedup();
    Ok(!kinds
        .into_iter()
        .any(|t| absorptions(&pd.parts, t).iter().any(parts_completable)))
}

/// The cheapest completable refinement of `pd`: remainder tiles are moved
/// into slots, each move lowering the cost by one. The result is
/// saturated, since any further absorbable tile would make it cheaper.
pub fn saturate(hand: &Hand, pd: &PDecomposition) -> Result<PDecomposition, DecompError> {
    check_partition(hand, pd)?;
    if !pd.is_completable() {
        return Err(DecompError::Incompletable);
    }

    struct Search<'a> {
        tiles: &'a [Tile],
        best_cost: u32,
        best: [Part; 5],
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, parts: [Part; 5]) {
            let cost = parts_cost(&parts);
            let left = (self.tiles.len() - i) as u32;
            if cost.saturating_sub(left) >= self.best_cost {
                return;
            }
            if i == self.tiles.len() {
                if parts_completable(&parts) {
                    self.best_cost = cost;
                    self.best = parts;
                }
                return;
            }
            for next in absorptions(&parts, self.tiles[i]) {
                if parts_completable(&next) {
                    self.go(i + 1, next);
                }
            }
            self.go(i + 1, parts);
        }
    }

    let mut search = Search {
        tiles: &pd.remainder,
        best_cost: pd.holes() + 1,
        best: pd.parts,
    };
    search.go(0, pd.parts);
    PDecomposition::from_parts(hand, search.best)
}

/// Every complete hand obtained by filling the holes of `pd`. Empty meld
/// slots range over all 48 melds and an empty eye over all 27 pairs, so
/// this is only practical with few empty slots.
pub fn completions(pd: &PDecomposition) -> Vec<Hand> {
    let all_melds: Vec<[Option<Tile>; 3]> = Tile::all()
        .map(|t| [Some(t); 3])
        .chain(Tile::all().filter_map(|t| Some([Some(t), t.offset(1), Some(t.offset(2)?)])))
        .collect();
    let all_pairs: Vec<[Option<Tile>; 3]> = Tile::all().map(|t| [Some(t), Some(t), None]).collect();

    let options: Vec<Vec<[Option<Tile>; 3]>> = pd
        .parts
        .iter()
        .enumerate()
        .map(|(slot, p)| match (p.is_empty(), slot == EYE_SLOT) {
            (false, _) => p.targets(slot),
            (true, false) => all_melds.clone(),
            (true, true) => all_pairs.clone(),
        })
        .collect();

    let mut out = std::collections::BTreeSet::new();
    let mut choice = [0usize; 5];
    'outer: loop {
        let counts = TileCounts::from_tiles(
            choice
                .iter()
                .enumerate()
                .flat_map(|(slot, &c)| options[slot].get(c).into_iter().flatten().flatten().copied()),
        );
        if options.iter().all(|o| !o.is_empty()) && counts.total() as usize == HAND_SIZE {
            if let Ok(h) = Hand::from_counts(counts) {
                out.insert(h);
            }
        }
        for slot in (0..5).rev() {
            choice[slot] += 1;
            if choice[slot] < options[slot].len() {
                continue 'outer;
            }
            choice[slot] = 0;
        }
        break;
    }
    out.into_iter().collect()
}
