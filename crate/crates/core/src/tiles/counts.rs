use std::ops::{Index, IndexMut};

use super::{Suit, Tile};

/// Copies held per tile kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileCounts(pub [u8; Tile::KINDS]);

impl TileCounts {
    pub fn new() -> TileCounts {
        TileCounts::default()
    }

    pub fn from_tiles<I: IntoIterator<Item = Tile>>(tiles: I) -> TileCounts {
        let mut counts = TileCounts::new();
        for t in tiles {
            counts[t] += 1;
        }
        counts
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&c| c as u32).sum()
    }

    pub fn max(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Kinds with a non-zero count, in standard order.
    pub fn kinds(&self) -> impl Iterator<Item = Tile> + '_ {
        Tile::all().filter(move |&t| self[t] > 0)
    }

    /// Tiles in standard order, each kind repeated by its count.
    pub fn tiles(&self) -> impl Iterator<Item = Tile> + '_ {
        Tile::all().flat_map(move |t| std::iter::repeat_n(t, self[t] as usize))
    }

    pub fn suit(&self, suit: Suit) -> [u8; 9] {
        let base = suit.index() * 9;
        let mut out = [0u8; 9];
        out.copy_from_slice(&self.0[base..base + 9]);
        out
    }

    pub fn suit_total(&self, suit: Suit) -> u32 {
        self.suit(suit).iter().map(|&c| c as u32).sum()
    }

    /// Whether `other` is a sub-multiset of `self`.
    pub fn contains(&self, other: &TileCounts) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }

    /// Multiset intersection size.
    pub fn overlap(&self, other: &TileCounts) -> u32 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a.min(b) as u32)
            .sum()
    }

    /// Packs the counts (each at most 7) into 3 bits apiece.
    pub fn key(&self) -> u128 {
        self.0
            .iter()
            .rev()
            .fold(0u128, |acc, &c| (acc << 3) | (c as u128 & 7))
    }

    pub fn from_key(mut key: u128) -> TileCounts {
        let mut counts = TileCounts::new();
        for c in counts.0.iter_mut() {
            *c = (key & 7) as u8;
            key >>= 3;
        }
        counts
    }
}

impl Index<Tile> for TileCounts {
    type Output = u8;

    fn index(&self, t: Tile) -> &u8 {
        &self.0[t.index()]
    }
}

impl IndexMut<Tile> for TileCounts {
    fn index_mut(&mut self, t: Tile) -> &mut u8 {
        &mut self.0[t.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_round_trip() {
        let mut c = TileCounts::new();
        c.0[0] = 4;
        c.0[13] = 2;
        c.0[26] = 1;
        assert_eq!(TileCounts::from_key(c.key()), c);
        assert_ne!(c.key(), TileCounts::new().key());
    }

    #[test]
    fn overlap_and_contains() {
        let b1 = Tile::new(Suit::Bamboo, 1).unwrap();
        let d9 = Tile::new(Suit::Dot, 9).unwrap();
        let a = TileCounts::from_tiles([b1, b1, d9]);
        let b = TileCounts::from_tiles([b1, d9, d9]);
        assert_eq!(a.overlap(&b), 2);
        assert!(a.contains(&TileCounts::from_tiles([b1, d9])));
        assert!(!a.contains(&b));
    }
}
