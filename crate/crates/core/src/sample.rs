//! Random hands.
//!
//! `uniform_hand` draws uniformly among distinct valid hands (multisets),
//! not among deals from a shuffled wall; `dealt_hand` does the latter.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::tiles::{Hand, Suit, Tile, TileCounts, HAND_SIZE, MAX_COPIES};

/// `ways[n][r]`: number of ways to put `r` tiles in `n` kinds, at most four each.
fn ways() -> &'static Vec<Vec<u64>> {
    static WAYS: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    WAYS.get_or_init(|| {
        let mut w = vec![vec![0u64; HAND_SIZE + 1]; Tile::KINDS + 1];
        w[0][0] = 1;
        for n in 1..=Tile::KINDS {
            for r in 0..=HAND_SIZE {
                w[n][r] = (0..=r.min(MAX_COPIES as usize)).map(|c| w[n - 1][r - c]).sum();
            }
        }
        w
    })
}

/// Number of distinct valid hands.
pub fn hand_count() -> u64 {
    ways()[Tile::KINDS][HAND_SIZE]
}

/// Fills `kinds` with `total` tiles, uniformly among valid fillings.
fn fill<R: Rng + ?Sized>(rng: &mut R, kinds: &[Tile], total: usize, counts: &mut TileCounts) {
    let w = ways();
    let mut r = total;
    for (i, &t) in kinds.iter().enumerate() {
        let rest = kinds.len() - i - 1;
        let mut pick = rng.gen_range(0..w[rest + 1][r]);
        for c in 0..=r.min(MAX_COPIES as usize) {
            let n = w[rest][r - c];
            if pick < n {
                counts[t] = c as u8;
                r -= c;
                break;
            }
            pick -= n;
        }
    }
    debug_assert_eq!(r, 0);
}

/// A hand drawn uniformly from all distinct valid hands.
pub fn uniform_hand<R: Rng + ?Sized>(rng: &mut R) -> Hand {
    let kinds: Vec<Tile> = Tile::all().collect();
    let mut counts = TileCounts::new();
    fill(rng, &kinds, HAND_SIZE, &mut counts);
    Hand::from_counts(counts).expect("fill respects the copy limit")
}

/// A hand drawn uniformly among those whose suit counts (bamboo,
/// character, dot) satisfy `accept`.
pub fn uniform_hand_where<R, F>(rng: &mut R, accept: F) -> Hand
where
    R: Rng + ?Sized,
    F: Fn([usize; 3]) -> bool,
{
    let w = ways();
    let mut splits = Vec::new();
    let mut total = 0u64;
    for b in 0..=HAND_SIZE {
        for c in 0..=HAND_SIZE - b {
            let split = [b, c, HAND_SIZE - b - c];
            if accept(split) {
                let n: u64 = split.iter().map(|&k| w[9][k]).product();
                total += n;
                splits.push((split, n));
            }
        }
    }
    assert!(total > 0, "no hand has an accepted suit split");
    let mut pick = rng.gen_range(0..total);
    let split = splits
        .into_iter()
        .find(|&(_, n)| {
            if pick < n {
                true
            } else {
                pick -= n;
                false
            }
        })
        .map(|(s, _)| s)
        .expect("pick is below the total");
    let mut counts = TileCounts::new();
    for (suit, &k) in Suit::ALL.iter().zip(split.iter()) {
        let kinds: Vec<Tile> = (1..=9).map(|n| Tile::new(*suit, n).unwrap()).collect();
        fill(rng, &kinds, k, &mut counts);
    }
    Hand::from_counts(counts).expect("fill respects the copy limit")
}

/// Fourteen tiles off the top of a shuffled 108-tile wall.
pub fn dealt_hand<R: Rng + ?Sized>(rng: &mut R) -> Hand {
    let mut wall: Vec<Tile> = Tile::all()
        .flat_map(|t| std::iter::repeat_n(t, MAX_COPIES as usize))
        .collect();
    wall.shuffle(rng);
    Hand::from_tiles(wall.into_iter().take(HAND_SIZE)).expect("a wall holds four of each")
}
