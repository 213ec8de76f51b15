use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One of the three suits (colours). The discriminant is the colour code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suit {
    Bamboo = 0,
    Character = 1,
    Dot = 2,
}

impl Suit {
    pub const ALL: [Suit; 3] = [Suit::Bamboo, Suit::Character, Suit::Dot];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Suit> {
        Suit::ALL.get(index).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Suit::Bamboo => 'B',
            Suit::Character => 'C',
            Suit::Dot => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Suit> {
        match c {
            'B' | 'b' => Some(Suit::Bamboo),
            'C' | 'c' => Some(Suit::Character),
            'D' | 'd' => Some(Suit::Dot),
            _ => None,
        }
    }
}

/// A tile kind `(colour, number)`, stored as its index `9 * colour + number - 1`.
///
/// The derived ordering is the standard-form ordering: by colour, then number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile(u8);

impl Tile {
    /// Number of distinct tile kinds.
    pub const KINDS: usize = 27;

    pub fn new(suit: Suit, number: u8) -> Option<Tile> {
        if (1..=9).contains(&number) {
            Some(Tile(suit as u8 * 9 + number - 1))
        } else {
            None
        }
    }

    pub fn from_index(index: usize) -> Option<Tile> {
        (index < Self::KINDS).then_some(Tile(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn suit(self) -> Suit {
        Suit::ALL[(self.0 / 9) as usize]
    }

    pub fn colour(self) -> u8 {
        self.0 / 9
    }

    pub fn number(self) -> u8 {
        self.0 % 9 + 1
    }

    /// The tile `delta` steps away within the same suit, if it exists.
    pub fn offset(self, delta: i8) -> Option<Tile> {
        let n = self.number() as i8 + delta;
        if (1..=9).contains(&n) {
            Tile::new(self.suit(), n as u8)
        } else {
            None
        }
    }

    pub fn with_suit(self, suit: Suit) -> Tile {
        Tile(suit as u8 * 9 + self.0 % 9)
    }

    pub fn all() -> impl Iterator<Item = Tile> {
        (0..Self::KINDS as u8).map(Tile)
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.suit().letter(), self.number())
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid tile token {0:?}")]
pub struct BadTile(pub String);

impl FromStr for Tile {
    type Err = BadTile;

    fn from_str(s: &str) -> Result<Tile, BadTile> {
        let mut chars = s.chars();
        let tile = match (chars.next(), chars.next(), chars.next()) {
            (Some(l), Some(d), None) => Suit::from_letter(l)
                .zip(d.to_digit(10))
                .and_then(|(suit, n)| Tile::new(suit, n as u8)),
            _ => None,
        };
        tile.ok_or_else(|| BadTile(s.to_string()))
    }
}

impl Serialize for Tile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Tile, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_layout() {
        let b3 = Tile::new(Suit::Bamboo, 3).unwrap();
        let c5 = Tile::new(Suit::Character, 5).unwrap();
        assert_eq!(b3.index(), 2);
        assert_eq!(c5.index(), 13);
        assert_eq!((c5.colour(), c5.number()), (1, 5));
        assert!(b3 < c5);
        assert_eq!(Tile::new(Suit::Dot, 0), None);
        assert_eq!(Tile::new(Suit::Dot, 10), None);
    }

    #[test]
    fn offsets_stay_in_suit() {
        let b9 = Tile::new(Suit::Bamboo, 9).unwrap();
        assert_eq!(b9.offset(1), None);
        assert_eq!(b9.offset(-2), Tile::new(Suit::Bamboo, 7));
        let c1 = Tile::new(Suit::Character, 1).unwrap();
        assert_eq!(c1.offset(-1), None);
    }

    #[test]
    fn display_round_trip() {
        for t in Tile::all() {
            assert_eq!(t.to_string().parse::<Tile>().unwrap(), t);
        }
        assert!("B0".parse::<Tile>().is_err());
        assert!("E1".parse::<Tile>().is_err());
        assert!("B12".parse::<Tile>().is_err());
    }
}
