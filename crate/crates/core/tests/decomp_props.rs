mod common;

use common::{any_hand, random_pdecomposition, rng};
use mjzero::decomp::{
    complete_by_case_table, completions, cost, decompose, is_complete, is_saturated, saturate, Cost,
    PDecomposition,
};
use mjzero::deficiency::{deficiency, min_cost_without_empty_parts};
use mjzero::oracle;
use mjzero::tiles::{Hand, Suit, Tile, TileCounts};
use proptest::prelude::*;
use rand::Rng;

/// A complete hand from four random melds and an eye, if the copy limit allows.
fn random_complete<R: Rng>(rng: &mut R, suits: &[Suit]) -> Option<Hand> {
    let mut counts = TileCounts::new();
    let pick = |rng: &mut R| suits[rng.gen_range(0..suits.len())];
    for _ in 0..4 {
        let suit = pick(rng);
        if rng.gen_bool(0.5) {
            let t = Tile::new(suit, rng.gen_range(1..=9)).unwrap();
            counts[t] += 3;
        } else {
            let start = rng.gen_range(1..=7);
            for n in start..start + 3 {
                counts[Tile::new(suit, n).unwrap()] += 1;
            }
        }
    }
    counts[Tile::new(pick(rng), rng.gen_range(1..=9)).unwrap()] += 2;
    Hand::from_counts(counts).ok()
}

#[test]
fn case_table_agrees_on_constructed_complete_hands() {
    let mut r = rng(11);
    let suit_sets: [&[Suit]; 4] = [
        &[Suit::Bamboo],
        &[Suit::Bamboo, Suit::Character],
        &[Suit::Character, Suit::Dot],
        &Suit::ALL,
    ];
    let mut patterns = std::collections::BTreeSet::new();
    let mut checked = 0;
    while checked < 20_000 {
        let Some(h) = random_complete(&mut r, suit_sets[checked % 4]) else { continue };
        assert!(is_complete(&h), "{h}");
        assert!(complete_by_case_table(&h), "{h}");
        let (bcd, _) = h.to_bcd_type();
        patterns.insert(bcd.suit_split().counts);
        checked += 1;
    }
    // every suit-count pattern a complete hand can have
    assert_eq!(patterns.len(), 9, "{patterns:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn case_table_agrees_on_random_hands(h in any_hand()) {
        prop_assert_eq!(complete_by_case_table(&h), is_complete(&h));
        prop_assert_eq!(is_complete(&h), oracle::is_complete(h.counts()));
    }

    #[test]
    fn complete_iff_zero_cost_decomposition(h in any_hand()) {
        prop_assert_eq!(is_complete(&h), deficiency(&h).value == 0);
        if let Some(d) = decompose(&h) {
            prop_assert_eq!(cost(&h, &d.to_pdecomposition(&h)), Ok(Cost::Finite(0)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Filling the holes of a saturated p-decomposition costs exactly its
    /// cost in tile changes, whichever completion is chosen.
    #[test]
    fn saturated_completions_are_at_cost_distance(h in any_hand(), seed in any::<u64>()) {
        let pd = random_pdecomposition(&mut rng(seed), &h);
        prop_assume!(pd.is_completable() && pd.empty_parts() <= 1);
        let sat = saturate(&h, &pd).unwrap();
        prop_assert_eq!(is_saturated(&h, &sat), Ok(true));
        let Ok(Cost::Finite(c)) = cost(&h, &sat) else { panic!("saturation keeps completability") };
        let Ok(Cost::Finite(before)) = cost(&h, &pd) else { unreachable!() };
        let moved = (pd.remainder().len() - sat.remainder().len()) as u32;
        prop_assert_eq!(c + moved, before);
        for parts in sat.parts().iter().zip(pd.parts().iter()) {
            let (big, small) = parts;
            prop_assert!(TileCounts::from_tiles(big.iter().copied()).contains(&TileCounts::from_tiles(small.iter().copied())));
        }
        for s in completions(&sat) {
            prop_assert_eq!(h.distance(&s), c, "completion {}", s);
        }
    }

    /// With an empty slot and either four leftovers or a started eye, some
    /// p-decomposition with no empty slot is strictly cheaper.
    #[test]
    fn empty_slots_can_be_avoided(h in any_hand(), seed in any::<u64>()) {
        let pd = random_pdecomposition(&mut rng(seed), &h);
        let Ok(Cost::Finite(c)) = cost(&h, &pd) else { return Ok(()) };
        prop_assume!(pd.empty_parts() > 0 && (pd.remainder().len() >= 4 || !pd.part(4).is_empty()));
        let full = min_cost_without_empty_parts(&h).expect("a full p-decomposition exists");
        prop_assert_eq!(full.witness.empty_parts(), 0);
        prop_assert!(full.value < c, "{} has no full p-decomposition cheaper than {}", pd, c);
    }

    /// `n >= 2` empty slots can be traded for a saving of at least `n`.
    #[test]
    fn several_empty_slots_save_that_many(h in any_hand(), seed in any::<u64>(), cleared in 2usize..=5) {
        let mut r = rng(seed);
        let mut parts = random_pdecomposition(&mut r, &h).parts();
        for _ in 0..cleared {
            parts[r.gen_range(0..5)].clear();
        }
        let pd = PDecomposition::new(&h, parts).unwrap();
        let Ok(Cost::Finite(c)) = cost(&h, &pd) else { return Ok(()) };
        let n = pd.empty_parts() as u32;
        prop_assume!(n >= 2);
        prop_assert!(deficiency(&h).value + n <= c);
    }

    #[test]
    fn empty_decomposition_is_never_saturated(h in any_hand()) {
        prop_assert_eq!(is_saturated(&h, &PDecomposition::empty(&h)), Ok(false));
    }
}
