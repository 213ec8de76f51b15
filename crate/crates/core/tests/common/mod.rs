#![allow(dead_code)]

use mjzero::decomp::PDecomposition;
use mjzero::sample::uniform_hand;
use mjzero::tiles::{Hand, Tile};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn hand(s: &str) -> Hand {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random hands, keyed by seed so failures are reproducible.
pub fn any_hand() -> impl Strategy<Value = Hand> {
    any::<u64>().prop_map(|s| uniform_hand(&mut rng(s)))
}

/// A random p-decomposition: tiles are dropped into random slots when
/// they fit, otherwise left over.
pub fn random_pdecomposition<R: Rng>(rng: &mut R, hand: &Hand) -> PDecomposition {
    let mut tiles = hand.tiles().to_vec();
    tiles.shuffle(rng);
    let mut parts: [Vec<Tile>; 5] = Default::default();
    for t in tiles {
        if rng.gen_bool(0.25) {
            continue;
        }
        let slot = rng.gen_range(0..5);
        let mut grown = parts[slot].clone();
        grown.push(t);
        let mut trial = parts.clone();
        trial[slot] = grown;
        if PDecomposition::new(hand, trial.clone()).is_ok() {
            parts = trial;
        }
    }
    PDecomposition::new(hand, parts).unwrap()
}

/// A complete hand moved `changes` random steps away.
pub fn near_complete_hand<R: Rng>(rng: &mut R, changes: usize) -> Hand {
    let mut h = loop {
        let mut counts = mjzero::tiles::TileCounts::new();
        for _ in 0..4 {
            let t = Tile::from_index(rng.gen_range(0..27)).unwrap();
            if rng.gen_bool(0.5) || t.number() > 7 {
                counts[t] += 3;
            } else {
                for d in 0..3 {
                    counts[t.offset(d).unwrap()] += 1;
                }
            }
        }
        counts[Tile::from_index(rng.gen_range(0..27)).unwrap()] += 2;
        if let Ok(h) = Hand::from_counts(counts) {
            break h;
        }
    };
    for _ in 0..changes {
        let ns = h.neighbours();
        h = ns[rng.gen_range(0..ns.len())].clone();
    }
    h
}

/// At most `size` available tiles, never more than the hand leaves unseen.
pub fn small_kb<R: Rng>(rng: &mut R, hand: &Hand, size: usize) -> mjzero::policy::KnowledgeBase {
    let full = mjzero::policy::KnowledgeBase::initial(hand);
    let mut pool: Vec<Tile> = Tile::all()
        .flat_map(|t| std::iter::repeat_n(t, full.get(t) as usize))
        .collect();
    pool.shuffle(rng);
    let mut counts = [0u8; 27];
    for t in pool.into_iter().take(size) {
        counts[t.index()] += 1;
    }
    mjzero::policy::KnowledgeBase::new(counts).unwrap()
}
