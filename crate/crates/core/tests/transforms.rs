mod common;

use common::{any_tuple, checks};
use isets::discovery::{discover, Mode, Options};
use isets::transform::{iset_of, next_fresh};
use isets::{apply_transform, extract_isets, ISetName, Shape, TransformKind};
use proptest::prelude::*;

#[test]
fn deletion_satisfaction_table() {
    assert!(checks::deletion_table(5) > 0);
}

proptest! {
    #[test]
    fn edits_undo_each_other(t in any_tuple(5, 2, 2), pick in any::<prop::sample::Index>()) {
        prop_assume!(t.n_rules() > 0);
        let a = extract_isets(&t).unwrap();
        let names = a.names();
        prop_assume!(!names.is_empty());
        let name = ISetName::new(names[pick.index(names.len())] as u64, t.n_rules()).unwrap();
        let set = iset_of(&t, name).unwrap();
        let x = next_fresh(&t);
        if set.len() >= 2 {
            let added = apply_transform(&t, TransformKind::Add, name, None, Some(x)).unwrap();
            let back = apply_transform(&added, TransformKind::Delete, name, Some(x), None).unwrap();
            prop_assert_eq!(&back, &t);
        } else {
            let ext = apply_transform(&t, TransformKind::Extend, name, None, Some(x)).unwrap();
            let back = apply_transform(&ext, TransformKind::Reduce, name, Some(x), None).unwrap();
            prop_assert_eq!(&back, &t);
        }
        let a0 = set.first().unwrap();
        let there = apply_transform(&t, TransformKind::Replace, name, Some(a0), Some(x)).unwrap();
        let back = apply_transform(&there, TransformKind::Replace, name, Some(x), Some(a0)).unwrap();
        prop_assert_eq!(&back, &t);
    }
}

#[test]
fn preservation_on_discovered_tuples() {
    let mut edits = 0;
    for (shape, basic) in [
        ([0, 1, 0], true),
        ([0, 1, 1], false),
        ([1, 1, 0], false),
        ([0, 2, 1], false),
    ] {
        let shape = Shape::new(shape[0], shape[1], shape[2]).unwrap();
        let report = discover(shape, basic, Mode::Sound, &Options::default()).unwrap();
        edits += checks::preservation(&report.mgic, &report.mnse);
    }
    assert!(edits > 10_000, "{edits}");
}

#[test]
fn reducing_a_singleton_can_break_equivalence() {
    checks::singleton_reduction_breaks();
}

#[test]
fn reducing_a_singleton_can_restore_equivalence() {
    checks::singleton_reduction_restores();
}

#[test]
fn reducing_a_pair_can_restore_equivalence() {
    checks::pair_reduction();
}
