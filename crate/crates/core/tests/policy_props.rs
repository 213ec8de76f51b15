mod common;

use common::{near_complete_hand, rng, small_kb};
use mjzero::deficiency::deficiency;
use mjzero::oracle;
use mjzero::policy::{delta, discard1, Advisor, KnowledgeBase, Probability};
use mjzero::tiles::{ColourPerm, Hand, Tile};
use proptest::prelude::*;

/// Step values straight from the definition, with rationals throughout.
fn naive_hand(h: &Hand, kb: &[u8; 27], j: u32) -> Probability {
    if oracle::is_complete(h.counts()) {
        return Probability::from_integer(1);
    }
    let mut kinds = h.tiles().to_vec();
    kinds.dedup();
    kinds
        .into_iter()
        .map(|out| naive_discard(h, kb, out, j))
        .max()
        .unwrap_or_default()
}

fn naive_discard(h: &Hand, kb: &[u8; 27], out: Tile, j: u32) -> Probability {
    let n: u32 = kb.iter().map(|&c| c as u32).sum();
    if j == 0 || n == 0 {
        return Probability::from_integer(0);
    }
    let mut total = Probability::from_integer(0);
    for x in Tile::all() {
        let w = kb[x.index()];
        if w == 0 {
            continue;
        }
        let Ok(next) = h.exchange(out, x) else { continue };
        let mut rest = *kb;
        rest[x.index()] -= 1;
        let v = if oracle::is_complete(next.counts()) {
            Probability::from_integer(1)
        } else if j == 1 {
            Probability::from_integer(0)
        } else {
            naive_hand(&next, &rest, j - 1)
        };
        total += Probability::new(w as u128, n as u128) * v;
    }
    total
}

fn instance() -> impl Strategy<Value = (Hand, KnowledgeBase)> {
    (any::<u64>(), 1usize..=2, 1usize..=8).prop_map(|(seed, changes, size)| {
        let mut r = rng(seed);
        let h = near_complete_hand(&mut r, changes);
        let kb = small_kb(&mut r, &h, size);
        (h, kb)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn values_match_the_definition((h, kb) in instance()) {
        prop_assume!(!oracle::is_complete(h.counts()));
        let advisor = Advisor::default();
        for k in 1..=2 {
            let report = advisor.discard_k(&h, &kb, k);
            prop_assume!(report.is_ok());
            let report = report.unwrap();
            for (i, e) in report.entries.iter().enumerate() {
                prop_assert_eq!(e.value, naive_discard(&h, kb.counts(), h.tiles()[i], k));
                prop_assert_eq!(Ok(e.value), advisor.val_k(&h, &kb, i, k));
            }
        }
    }

    /// One draw completes exactly when it lowers deficiency 1 to 0, so the
    /// heuristic and the one-step value agree there; further away no single
    /// draw completes.
    #[test]
    fn one_step_value_and_delta((h, kb) in instance()) {
        let d = deficiency(&h).value;
        prop_assume!(d > 0 && kb.norm() > 0);
        let advisor = Advisor::default();
        let deltas = delta(&h, &kb);
        for (i, &di) in deltas.iter().enumerate() {
            let v = advisor.val_k(&h, &kb, i, 1).unwrap();
            if d == 1 {
                prop_assert_eq!(v * Probability::from_integer(kb.norm() as u128), Probability::from_integer(di as u128));
            } else {
                prop_assert_eq!(v, Probability::from_integer(0));
            }
        }
    }

    #[test]
    fn longer_horizons_never_hurt((h, kb) in instance()) {
        prop_assume!(!oracle::is_complete(h.counts()) && kb.norm() > 0);
        let advisor = Advisor::default();
        let one = advisor.discard_k(&h, &kb, 1).unwrap();
        let two = advisor.discard_k(&h, &kb, 2).unwrap();
        for (a, b) in one.entries.iter().zip(&two.entries) {
            prop_assert!(b.value >= a.value);
        }
    }

    #[test]
    fn identical_tiles_score_alike((h, kb) in instance()) {
        prop_assume!(!oracle::is_complete(h.counts()) && kb.norm() > 0);
        let report = Advisor::default().discard_k(&h, &kb, 2).unwrap();
        let deltas = delta(&h, &kb);
        for i in 1..14 {
            if h.tiles()[i] == h.tiles()[i - 1] {
                prop_assert_eq!(report.entries[i].value, report.entries[i - 1].value);
                prop_assert_eq!(deltas[i], deltas[i - 1]);
            }
        }
        let best = report.entries[report.recommended_index].value;
        prop_assert!(report.entries.iter().all(|e| e.value <= best));
        prop_assert!(report.entries[..report.recommended_index].iter().all(|e| e.value < best));
    }

    #[test]
    fn colour_permutation_carries_values((h, kb) in instance(), p in 0usize..6) {
        prop_assume!(!oracle::is_complete(h.counts()) && kb.norm() > 0);
        let perm = ColourPerm::all()[p];
        let (h2, kb2) = (h.permute_colours(&perm), kb.permute_colours(&perm));
        let advisor = Advisor::default();
        let a = advisor.discard_k(&h, &kb, 2).unwrap();
        let b = advisor.discard_k(&h2, &kb2, 2).unwrap();
        let a1 = discard1(&h, &kb).unwrap();
        let b1 = discard1(&h2, &kb2).unwrap();
        for (i, e) in a.entries.iter().enumerate() {
            let j = h2.tiles().iter().position(|&t| t == perm.apply(h.tiles()[i])).unwrap();
            prop_assert_eq!(e.value, b.entries[j].value);
            prop_assert_eq!(a1.entries[i].delta, b1.entries[j].delta);
        }
        prop_assert_eq!(b.entries[b.recommended_index].value, a.entries[a.recommended_index].value);
    }

    #[test]
    fn draw_weights_sum_to_one((_h, kb) in instance()) {
        prop_assume!(kb.norm() > 0);
        let n = kb.norm() as u128;
        let total: Probability = Tile::all()
            .filter(|&t| kb.get(t) > 0)
            .map(|t| Probability::new(kb.get(t) as u128, n))
            .sum();
        prop_assert_eq!(total, Probability::from_integer(1));
    }
}
