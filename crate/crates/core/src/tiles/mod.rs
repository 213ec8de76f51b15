//! Tiles, hands and the per-suit views used throughout the crate.

mod counts;
mod hand;
mod pure;
mod tile;

pub use counts::TileCounts;
pub use hand::{parse_hand, ColourPerm, Hand, HandError, SuitSplit, HAND_SIZE, MAX_COPIES};
pub use pure::PureTiles;
pub use tile::{BadTile, Suit, Tile};
