use proptest::prelude::*;

use fubini_park::bijections::{exceedances, gamma, phi, ExceedancePointer, Permutation};
use fubini_park::fubini::osp_to_fr;
use fubini_park::OrderedSetPartition;
use fubini_park_cli::{Meta, Object, OutputRecord};

fn osp() -> impl Strategy<Value = OrderedSetPartition> {
    (0..=8usize)
        .prop_flat_map(|n| prop::collection::vec(0..n.max(1), n))
        .prop_map(|labels| {
            let mut used = labels.clone();
            used.sort_unstable();
            used.dedup();
            let blocks = used
                .iter()
                .map(|&l| (1..=labels.len()).filter(|&x| labels[x - 1] == l).collect())
                .collect();
            OrderedSetPartition::new(blocks).unwrap()
        })
}

fn pointer() -> impl Strategy<Value = ExceedancePointer> {
    (2..=8usize)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_filter_map("has an exceedance", |v| {
            let perm = Permutation::new(v).unwrap();
            let j = *exceedances(&perm).last()?;
            ExceedancePointer::new(perm, j).ok()
        })
}

fn object() -> impl Strategy<Value = Object> {
    prop_oneof![
        osp().prop_map(|p| Object::Fr(osp_to_fr(&p))),
        osp().prop_map(|p| Object::Upf(phi(&osp_to_fr(&p)))),
        osp().prop_map(|p| Object::Pf(phi(&osp_to_fr(&p)))),
        osp().prop_map(Object::Osp),
        pointer().prop_map(Object::ExceedancePointer),
    ]
}

fn meta() -> impl Strategy<Value = Meta> {
    let list = || prop::option::of(prop::collection::vec(1..10usize, 0..5));
    (list(), list(), list(), list(), prop::option::of(0..10usize), list()).prop_map(
        |(block_sizes, block_minima, position_vector, lucky, num_blocks, exceedances)| Meta {
            block_sizes,
            block_minima,
            position_vector,
            lucky,
            num_blocks,
            exceedances,
        },
    )
}

proptest! {
    #[test]
    fn output_record_round_trips(object in object(), meta in meta()) {
        let rec = OutputRecord::with_meta(object, meta);
        let json = serde_json::to_string(&rec).unwrap();
        prop_assert_eq!(serde_json::from_str::<OutputRecord>(&json).unwrap(), rec);
    }

    #[test]
    fn gamma_records_round_trip(p in osp()) {
        prop_assume!(p.n() >= 2 && p.num_blocks() + 1 == p.n());
        let rec = OutputRecord::new(Object::ExceedancePointer(gamma(&p).unwrap()));
        let json = serde_json::to_string(&rec).unwrap();
        prop_assert_eq!(serde_json::from_str::<OutputRecord>(&json).unwrap(), rec);
    }
}
