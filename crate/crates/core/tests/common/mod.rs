#![allow(dead_code)]

pub mod checks;

use isets::{Atom, AtomSet, Program, ProgramTuple, Rule};
use proptest::prelude::*;

pub fn set(bits: u128) -> AtomSet {
    AtomSet(bits)
}

pub fn rule(h: u128, p: u128, n: u128) -> Rule {
    Rule::new(AtomSet(h), AtomSet(p), AtomSet(n))
}

/// Every rule whose three sets lie inside the first `atoms` atoms.
pub fn all_rules(atoms: usize) -> impl Iterator<Item = Rule> {
    let top = 1u128 << atoms;
    (0..top).flat_map(move |h| (0..top).flat_map(move |p| (0..top).map(move |n| rule(h, p, n))))
}

pub fn atom_set(atoms: usize) -> impl Strategy<Value = AtomSet> {
    (0u128..(1u128 << atoms)).prop_map(AtomSet)
}

pub fn any_rule(atoms: usize) -> impl Strategy<Value = Rule> {
    (atom_set(atoms), atom_set(atoms), atom_set(atoms)).prop_map(|(h, p, n)| Rule::new(h, p, n))
}

pub fn any_program(atoms: usize, max_rules: usize) -> impl Strategy<Value = Program> {
    prop::collection::vec(any_rule(atoms), 0..=max_rules).prop_map(Program::new)
}

/// A tuple of `segments` programs with up to `per` rules each.
pub fn any_tuple(atoms: usize, segments: usize, per: usize) -> impl Strategy<Value = ProgramTuple> {
    prop::collection::vec(prop::collection::vec(any_rule(atoms), 0..=per), segments).prop_map(
        |segs| {
            let sizes = segs.iter().map(Vec::len).collect();
            ProgramTuple::from_parts(segs.into_iter().flatten().collect(), sizes).unwrap()
        },
    )
}

pub fn atoms(ids: &[u32]) -> AtomSet {
    ids.iter().map(|&i| Atom(i)).collect()
}
