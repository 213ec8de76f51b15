//! Analysis engine for three-suit Mahjong: hands of 14 tiles drawn from
//! bamboo, character and dot tiles numbered 1 to 9, four copies each.

pub mod api;
pub mod decomp;
pub mod deficiency;
pub mod melds;
pub mod oracle;
pub mod policy;
pub mod sample;
pub mod tiles;

pub use deficiency::{deficiency, DeficiencyResult};
pub use tiles::{parse_hand, Hand, Suit, Tile};
