use std::fmt;
use std::str::FromStr;

use super::{PureTiles, Suit, Tile, TileCounts};

pub const HAND_SIZE: usize = 14;
pub const MAX_COPIES: u8 = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HandError {
    #[error("expected 14 tiles, found {found}")]
    WrongCount { found: usize },
    #[error("more than four copies of {tile}")]
    FiveIdentical { tile: String },
    #[error("unparseable tile token {token:?}")]
    BadToken { token: String },
}

/// A 14-tile hand in standard form, with its per-kind counts alongside.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hand {
    counts: TileCounts,
    tiles: [Tile; HAND_SIZE],
}

impl Hand {
    pub fn from_counts(counts: TileCounts) -> Result<Hand, HandError> {
        let total = counts.total() as usize;
        if total != HAND_SIZE {
            return Err(HandError::WrongCount { found: total });
        }
        if let Some(t) = Tile::all().find(|&t| counts[t] > MAX_COPIES) {
            return Err(HandError::FiveIdentical { tile: t.to_string() });
        }
        let mut tiles = [Tile::from_index(0).unwrap(); HAND_SIZE];
        for (slot, t) in tiles.iter_mut().zip(counts.tiles()) {
            *slot = t;
        }
        Ok(Hand { counts, tiles })
    }

    pub fn from_tiles<I: IntoIterator<Item = Tile>>(tiles: I) -> Result<Hand, HandError> {
        let tiles: Vec<Tile> = tiles.into_iter().collect();
        if tiles.len() != HAND_SIZE {
            return Err(HandError::WrongCount { found: tiles.len() });
        }
        Hand::from_counts(TileCounts::from_tiles(tiles))
    }

    /// A pure hand of the given suit.
    pub fn pure(suit: Suit, seq: &PureTiles) -> Result<Hand, HandError> {
        Hand::from_tiles(
            seq.values()
                .iter()
                .map(|&n| Tile::new(suit, n).expect("pure values are 1..=9")),
        )
    }

    pub fn tiles(&self) -> &[Tile; HAND_SIZE] {
        &self.tiles
    }

    pub fn counts(&self) -> &TileCounts {
        &self.counts
    }

    pub fn count(&self, t: Tile) -> u8 {
        self.counts[t]
    }

    pub fn is_pure(&self) -> bool {
        self.tiles[0].suit() == self.tiles[HAND_SIZE - 1].suit()
    }

    pub fn suit_split(&self) -> SuitSplit {
        let suits = Suit::ALL.map(|s| PureTiles::from_counts(&self.counts.suit(s)));
        SuitSplit {
            counts: [0, 1, 2].map(|i| suits[i].len()),
            suits,
        }
    }

    /// `T[i/t]`: the hand with position `index` replaced by `t`.
    pub fn replace(&self, index: usize, t: Tile) -> Result<Hand, HandError> {
        let mut counts = self.counts;
        counts[self.tiles[index]] -= 1;
        counts[t] += 1;
        Hand::from_counts(counts)
    }

    /// Removes one `out` and adds one `into`.
    pub fn exchange(&self, out: Tile, into: Tile) -> Result<Hand, HandError> {
        let mut counts = self.counts;
        if counts[out] == 0 {
            return Err(HandError::WrongCount { found: HAND_SIZE - 1 });
        }
        counts[out] -= 1;
        counts[into] += 1;
        Hand::from_counts(counts)
    }

    /// All valid hands one tile change away (multiset edit distance exactly 1).
    pub fn neighbours(&self) -> Vec<Hand> {
        let mut out = Vec::new();
        for r in self.counts.kinds() {
            for a in Tile::all() {
                if a != r && self.counts[a] < MAX_COPIES {
                    let mut counts = self.counts;
                    counts[r] -= 1;
                    counts[a] += 1;
                    out.push(Hand::from_counts(counts).expect("exchange keeps the hand valid"));
                }
            }
        }
        out
    }

    /// Number of tile changes separating two hands.
    pub fn distance(&self, other: &Hand) -> u32 {
        HAND_SIZE as u32 - self.counts.overlap(&other.counts)
    }

    pub fn permute_colours(&self, perm: &ColourPerm) -> Hand {
        Hand::from_counts(perm.apply_counts(&self.counts)).expect("permutation preserves validity")
    }

    /// Reorders suits so the counts are non-increasing; equal counts are
    /// ordered by their suit sequences, lexicographically smallest first.
    pub fn to_bcd_type(&self) -> (Hand, ColourPerm) {
        let split = self.suit_split();
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| {
            split.counts[b]
                .cmp(&split.counts[a])
                .then_with(|| split.suits[a].cmp(&split.suits[b]))
        });
        // order[new] = old
        let mut map = [Suit::Bamboo; 3];
        for (new, &old) in order.iter().enumerate() {
            map[old] = Suit::ALL[new];
        }
        let perm = ColourPerm(map);
        (self.permute_colours(&perm), perm)
    }
}

impl FromStr for Hand {
    type Err = HandError;

    fn from_str(s: &str) -> Result<Hand, HandError> {
        parse_hand(s)
    }
}

/// Parses `B1B2...` tokens, or a 14-digit pure shorthand (Bamboo).
/// Whitespace, commas and parentheses are ignored.
pub fn parse_hand(text: &str) -> Result<Hand, HandError> {
    let chars: Vec<char> = text
        .chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '(' | ')' | ','))
        .collect();
    if chars.first().is_some_and(|c| c.is_ascii_digit()) {
        let seq = PureTiles::parse(&chars.iter().collect::<String>()).map_err(|e| match e {
            HandError::FiveIdentical { tile } => HandError::FiveIdentical { tile: format!("B{tile}") },
            other => other,
        })?;
        if seq.len() != HAND_SIZE {
            return Err(HandError::WrongCount { found: seq.len() });
        }
        return Hand::pure(Suit::Bamboo, &seq);
    }
    let mut tiles = Vec::with_capacity(HAND_SIZE);
    let mut i = 0;
    while i < chars.len() {
        let token: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let tile = token.parse::<Tile>().map_err(|_| HandError::BadToken { token })?;
        tiles.push(tile);
        i += 2;
    }
    if tiles.len() != HAND_SIZE {
        return Err(HandError::WrongCount { found: tiles.len() });
    }
    Hand::from_counts(TileCounts::from_tiles(tiles))
}

/// Canonical rendering: tokens grouped by suit in parentheses.
impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for chunk in self.tiles.chunk_by(|a, b| a.suit() == b.suit()) {
            f.write_str("(")?;
            for t in chunk {
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hand{self}")
    }
}

/// Per-suit view of a hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuitSplit {
    /// Tile count of each suit, indexed by colour.
    pub counts: [usize; 3],
    pub suits: [PureTiles; 3],
}

/// A relabelling of suits: `map[old colour] = new suit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColourPerm(pub [Suit; 3]);

impl ColourPerm {
    pub const IDENTITY: ColourPerm = ColourPerm(Suit::ALL);

    /// All six permutations, identity first.
    pub fn all() -> [ColourPerm; 6] {
        use Suit::*;
        [
            ColourPerm([Bamboo, Character, Dot]),
            ColourPerm([Bamboo, Dot, Character]),
            ColourPerm([Character, Bamboo, Dot]),
            ColourPerm([Character, Dot, Bamboo]),
            ColourPerm([Dot, Bamboo, Character]),
            ColourPerm([Dot, Character, Bamboo]),
        ]
    }

    pub fn apply(&self, t: Tile) -> Tile {
        t.with_suit(self.0[t.colour() as usize])
    }

    pub fn apply_counts(&self, counts: &TileCounts) -> TileCounts {
        let mut out = TileCounts::new();
        for t in Tile::all() {
            out[self.apply(t)] = counts[t];
        }
        out
    }

    pub fn inverse(&self) -> ColourPerm {
        let mut inv = [Suit::Bamboo; 3];
        for (old, new) in self.0.iter().enumerate() {
            inv[new.index()] = Suit::ALL[old];
        }
        ColourPerm(inv)
    }
}
