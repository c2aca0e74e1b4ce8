//! Property tests for the core model invariants.

use std::collections::BTreeSet;

use proptest::prelude::*;

use idtree::measures::ceil_log2;
use idtree::solvers;
use idtree::{BitVector, InstanceSet};

#[test]
fn shared_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<BitVector>();
    assert_send_sync::<InstanceSet>();
    assert_send_sync::<idtree::DecisionTree>();
    assert_send_sync::<idtree::lattice::HasseDiagram>();
    assert_send_sync::<idtree::Fraction>();
}

fn instance_strategy() -> impl Strategy<Value = InstanceSet> {
    (1usize..=6).prop_flat_map(|m| {
        prop::collection::btree_set(0u64..(1 << m), 1..=8).prop_map(move |codes| {
            let rows: Vec<BitVector> = codes
                .into_iter()
                .map(|c| BitVector::from_index(m, c))
                .collect();
            InstanceSet::new(m, rows).expect("distinct rows")
        })
    })
}

fn hypothesis_for(a: &InstanceSet, code: u64) -> BitVector {
    BitVector::from_index(a.width(), code & ((1 << a.width()) - 1))
}

proptest! {
    #[test]
    fn render_parse_roundtrip(a in instance_strategy()) {
        let again = InstanceSet::parse(&a.render()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn xor_shift_is_an_isometry(a in instance_strategy(), code in any::<u64>()) {
        let h = hypothesis_for(&a, code);
        let shifted = a.xor_shift(&h).unwrap();
        let back = shifted.xor_shift(&h).unwrap();
        prop_assert_eq!(back.rows(), a.rows());

        let distances = |s: &InstanceSet| -> BTreeSet<(usize, usize, usize)> {
            let mut d = BTreeSet::new();
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    d.insert((i, j, s.row(i).hamming(s.row(j))));
                }
            }
            d
        };
        prop_assert_eq!(distances(&a), distances(&shifted));
    }

    #[test]
    fn restrictions_partition_the_rows(a in instance_strategy(), j in 0usize..6) {
        let j = j % a.width();
        let zeros = a.restrict(j, false).unwrap();
        let ones = a.restrict(j, true).unwrap();
        prop_assert_eq!(zeros.len() + ones.len(), a.len());
        prop_assert!(zeros.iter().all(|r| !r.get(j)));
        prop_assert!(ones.iter().all(|r| r.get(j)));
    }

    #[test]
    fn greedy_trees_validate_and_meet_the_information_floor(a in instance_strategy()) {
        let tree = solvers::greedy_tree(&a);
        prop_assert!(tree.validates(&a));
        prop_assert!(tree.depth() >= ceil_log2(a.len()));
    }

    #[test]
    fn specifying_set_sizes_meet_inline_bounds(a in instance_strategy(), code in any::<u64>()) {
        let h = hypothesis_for(&a, code);
        let weak = idtree::measures::specifying_set_min(&a, &h, None).unwrap();
        let strong = idtree::measures::strong_specifying_set_min(&a, &h).unwrap();
        prop_assert!(weak.len() <= a.width().min(a.len() - 1) || a.len() == 1);
        prop_assert!(strong.len() <= a.width().min(a.len()));
        prop_assert!(weak.len() <= strong.len());
    }
}
