//! Property tests for β-sets, cores, quotients and hubs.

use std::collections::BTreeSet;

use akblocks::betaset::*;
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..8, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts(&v)
    })
}

fn beta() -> impl Strategy<Value = BetaSet> {
    (-6i64..6, prop::collection::btree_set(-4i64..14, 0..8))
        .prop_map(|(m, xs)| BetaSet::from_parts(m, xs))
}

fn as_set(b: &BetaSet, lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).filter(|&x| b.contains(x)).collect()
}

/// Literally slides beads up their runners until no bead can move.
fn slide_beads(b: &BetaSet, e: i64) -> (BetaSet, usize) {
    let lo = b.threshold() - 2 * e;
    let mut set = as_set(b, lo, b.max_element());
    let mut moves = 0;
    loop {
        let movable = set
            .iter()
            .copied()
            .find(|&x| x - e >= lo && !set.contains(&(x - e)));
        match movable {
            Some(x) => {
                set.remove(&x);
                set.insert(x - e);
                moves += 1;
            }
            None => break,
        }
    }
    (BetaSet::from_parts(lo, set), moves)
}

proptest! {
    #[test]
    fn beta_round_trips(p in partition(), t in -10i64..10, b in beta()) {
        prop_assert_eq!(beta_inverse(&beta_set(&p, t)), (p.clone(), t));
        let (q, s) = beta_inverse(&b);
        prop_assert_eq!(beta_set(&q, s), b);
    }

    #[test]
    fn core_matches_bead_sliding(b in beta(), e in 2usize..5) {
        let (core, wt) = e_core_and_weight(&b, e).unwrap();
        prop_assert_eq!(core.charge(), b.charge());
        let (slid, moves) = slide_beads(&b, e as i64);
        prop_assert_eq!(core, slid);
        prop_assert_eq!(wt, moves);
    }

    #[test]
    fn charge_difference_counts_set_difference(b in beta(), c in beta()) {
        let lo = b.threshold().min(c.threshold()) - 1;
        let hi = b.max_element().max(c.max_element()) + 1;
        let (sb, sc) = (as_set(&b, lo, hi), as_set(&c, lo, hi));
        let diff = sb.difference(&sc).count() as i64 - sc.difference(&sb).count() as i64;
        prop_assert_eq!(b.charge() - c.charge(), diff);
    }

    #[test]
    fn quotient_of_shift_rotates(b in beta(), e in 2usize..5) {
        let q = e_quotient(&b, e).unwrap().components;
        let q1 = e_quotient(&b.shift(1), e).unwrap().components;
        let mut expected = vec![q[e - 1].shift(1)];
        expected.extend(q[..e - 1].iter().cloned());
        prop_assert_eq!(q1, expected);
    }

    #[test]
    fn quotient_round_trip(b in beta(), e in 2usize..5) {
        let q = e_quotient(&b, e).unwrap();
        prop_assert_eq!(inverse_quotient(&q.components).unwrap(), b);
    }
}

#[test]
fn abacus_has_one_column_per_runner() {
    let b = beta_set(&Partition::from_parts(&[3, 1]), 0);
    let text = render_abacus(&b, 3).unwrap();
    assert!(text.lines().all(|l| l.split_whitespace().count() == 4));
}
