mod common;

use common::{any_hand, hand, rng};
use mjzero::decomp::{cost, Cost};
use mjzero::deficiency::{deficiency, deficiency_uncached, MAX_DEFICIENCY};
use mjzero::oracle::{bfs_deficiency, exhaustive_deficiency, BfsOutcome};
use mjzero::tiles::ColourPerm;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matches_exhaustive_overlap(h in any_hand()) {
        let d = deficiency(&h);
        prop_assert_eq!(d.value, exhaustive_deficiency(&h));
        prop_assert!(d.value <= MAX_DEFICIENCY);
        prop_assert_eq!(cost(&h, &d.witness), Ok(Cost::Finite(d.value)));
    }

    #[test]
    fn invariant_under_colour_permutation(h in any_hand(), p in 0usize..6) {
        let moved = h.permute_colours(&ColourPerm::all()[p]);
        prop_assert_eq!(deficiency(&moved).value, deficiency(&h).value);
        prop_assert_eq!(deficiency_uncached(&moved).value, deficiency(&h).value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// An incomplete hand is one change further than its best neighbour.
    #[test]
    fn one_more_than_best_neighbour(h in any_hand()) {
        let d = deficiency(&h).value;
        prop_assume!(d > 0);
        let best = h.neighbours().iter().map(|n| deficiency(n).value).min().unwrap();
        prop_assert_eq!(d, best + 1);
    }
}

#[test]
fn bfs_agrees_where_it_reaches() {
    let mut r = rng(5);
    for _ in 0..60 {
        let h = mjzero::sample::uniform_hand(&mut r);
        let d = deficiency(&h).value;
        match bfs_deficiency(&h, 2) {
            BfsOutcome::Exact(b) => assert_eq!(b, d, "{h}"),
            BfsOutcome::Unknown => assert!(d > 2, "{h}"),
        }
    }
}

#[test]
fn bfs_is_monotone_in_depth() {
    let t = hand("B1B1B2B2B2B2B3B3C1C2C8D2D2D8");
    let answers: Vec<BfsOutcome> = (0..=3).map(|d| bfs_deficiency(&t, d)).collect();
    assert_eq!(
        answers,
        [BfsOutcome::Unknown, BfsOutcome::Unknown, BfsOutcome::Exact(2), BfsOutcome::Exact(2)]
    );
}
