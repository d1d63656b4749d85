//! Independent sets: atoms bucketed by their membership pattern across the
//! `3n` head/positive-body/negative-body sets of an `n`-rule tuple.
//!
//! A name is a `3n`-bit number read most-significant first: rule 1's head,
//! positive body and negative body bits come first. The octal digit of rule
//! `j` is its local index, `4` = head, `2` = positive body, `1` = negative body.

use std::collections::BTreeMap;
use std::fmt;

use crate::atoms::{AtomSet, SymbolTable};
use crate::error::{Error, Result};
use crate::program::{ProgramTuple, Rule};

/// Largest supported tuple length; names then fit in 30 bits.
pub const MAX_RULES: usize = 10;

pub const HEAD: u8 = 4;
pub const PBODY: u8 = 2;
pub const NBODY: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ISetName {
    value: u32,
    n_rules: usize,
}

impl ISetName {
    pub fn new(value: u64, n_rules: usize) -> Result<Self> {
        if n_rules > MAX_RULES {
            return Err(Error::TooManyRules {
                n_rules,
                max: MAX_RULES,
            });
        }
        if value == 0 {
            return Err(Error::ZeroName);
        }
        if value > name_count(n_rules) as u64 {
            return Err(Error::NameOutOfRange {
                name: value,
                n_rules,
            });
        }
        Ok(ISetName {
            value: value as u32,
            n_rules,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn n_rules(self) -> usize {
        self.n_rules
    }

    pub fn local(self, rule: usize) -> u8 {
        local_digit(self.value, rule, self.n_rules)
    }

    pub fn locals(self) -> Vec<u8> {
        locals_from_name(self)
    }
}

impl fmt::Display for ISetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I_{}", self.value)
    }
}

/// `|IS|` for an `n`-rule tuple, `2^{3n} − 1`.
pub fn name_count(n_rules: usize) -> u32 {
    assert!(n_rules <= MAX_RULES);
    (1u32 << (3 * n_rules)) - 1
}

pub fn local_digit(name: u32, rule: usize, n_rules: usize) -> u8 {
    ((name >> (3 * (n_rules - 1 - rule))) & 7) as u8
}

pub fn locals_from_name(name: ISetName) -> Vec<u8> {
    (0..name.n_rules).map(|j| name.local(j)).collect()
}

pub fn name_from_locals(locals: &[u8]) -> Result<ISetName> {
    let mut value = 0u64;
    for &d in locals {
        assert!(d < 8, "local index {d} out of range");
        value = value << 3 | d as u64;
    }
    ISetName::new(value, locals.len())
}

/// Which of head, positive body and negative body a local index stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalClass(pub u8);

impl LocalClass {
    pub fn in_head(self) -> bool {
        self.0 & HEAD != 0
    }

    pub fn in_pbody(self) -> bool {
        self.0 & PBODY != 0
    }

    pub fn in_nbody(self) -> bool {
        self.0 & NBODY != 0
    }

    /// The region of a rule this class covers, e.g. `(B+ ∩ B−) − H` for 3.
    pub fn region(self, rule: &Rule, universe: AtomSet) -> AtomSet {
        let mut region = universe;
        for (bit, set) in [(HEAD, rule.head), (PBODY, rule.pbody), (NBODY, rule.nbody)] {
            region = if self.0 & bit != 0 {
                region.intersection(set)
            } else {
                region.difference(set)
            };
        }
        region
    }
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = [(HEAD, "H"), (PBODY, "B+"), (NBODY, "B-")]
            .iter()
            .filter(|(bit, _)| self.0 & bit != 0)
            .map(|&(_, s)| s)
            .collect();
        let rest: Vec<&str> = [(HEAD, "H"), (PBODY, "B+"), (NBODY, "B-")]
            .iter()
            .filter(|(bit, _)| self.0 & bit == 0)
            .map(|&(_, s)| s)
            .collect();
        let inside = if parts.is_empty() {
            "U".to_string()
        } else {
            parts.join("∩")
        };
        if rest.is_empty() {
            f.write_str(&inside)
        } else {
            write!(f, "{inside} − ({})", rest.join("∪"))
        }
    }
}

pub fn classify_locals(name: ISetName) -> Vec<LocalClass> {
    name.locals().into_iter().map(LocalClass).collect()
}

/// Non-empty independent sets of a tuple, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ISAssignment {
    n_rules: usize,
    buckets: BTreeMap<u32, AtomSet>,
}

impl ISAssignment {
    pub fn new(n_rules: usize) -> Self {
        ISAssignment {
            n_rules,
            buckets: BTreeMap::new(),
        }
    }

    /// Builds an assignment, rejecting bad names and overlapping sets.
    /// Empty sets are dropped.
    pub fn from_buckets(
        n_rules: usize,
        buckets: impl IntoIterator<Item = (u32, AtomSet)>,
    ) -> Result<Self> {
        let mut out = ISAssignment::new(n_rules);
        for (name, set) in buckets {
            out.set(ISetName::new(name as u64, n_rules)?, set)?;
        }
        Ok(out)
    }

    pub fn n_rules(&self) -> usize {
        self.n_rules
    }

    pub fn get(&self, name: u32) -> AtomSet {
        self.buckets.get(&name).copied().unwrap_or_default()
    }

    /// Replaces the set stored under `name`.
    pub fn set(&mut self, name: ISetName, atoms: AtomSet) -> Result<()> {
        if name.n_rules != self.n_rules {
            return Err(Error::ShapeMismatch {
                expected: vec![self.n_rules],
                found: vec![name.n_rules],
            });
        }
        for (&other, &set) in &self.buckets {
            if other != name.value && set.intersects(atoms) {
                return Err(Error::OverlappingSets(other, name.value));
            }
        }
        if atoms.is_empty() {
            self.buckets.remove(&name.value);
        } else {
            self.buckets.insert(name.value, atoms);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, AtomSet)> + '_ {
        self.buckets.iter().map(|(&k, &v)| (k, v))
    }

    pub fn names(&self) -> Vec<u32> {
        self.buckets.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn atoms(&self) -> AtomSet {
        self.buckets
            .values()
            .fold(AtomSet::EMPTY, |acc, s| acc.union(*s))
    }
}

/// Membership name of every atom of `at(T)`.
pub fn extract_isets(t: &ProgramTuple) -> Result<ISAssignment> {
    let n = t.n_rules();
    if n > MAX_RULES {
        return Err(Error::TooManyRules {
            n_rules: n,
            max: MAX_RULES,
        });
    }
    let sets = t.sets();
    let mut buckets: BTreeMap<u32, AtomSet> = BTreeMap::new();
    for atom in t.atoms().iter() {
        let name = sets
            .iter()
            .fold(0u32, |acc, s| acc << 1 | s.contains(atom) as u32);
        buckets.entry(name).or_default().insert(atom);
    }
    Ok(ISAssignment {
        n_rules: n,
        buckets,
    })
}

/// Rebuilds the tuple whose independent sets are `assignment`.
pub fn reconstruct_tuple(segments: &[usize], assignment: &ISAssignment) -> Result<ProgramTuple> {
    let n: usize = segments.iter().sum();
    if n != assignment.n_rules {
        return Err(Error::ShapeMismatch {
            expected: segments.to_vec(),
            found: vec![assignment.n_rules],
        });
    }
    let mut sets = vec![AtomSet::EMPTY; 3 * n];
    for (name, atoms) in assignment.iter() {
        for (i, set) in sets.iter_mut().enumerate() {
            if name >> (3 * n - 1 - i) & 1 == 1 {
                *set = set.union(atoms);
            }
        }
    }
    let rules = sets
        .chunks(3)
        .map(|c| Rule::from_sets([c[0], c[1], c[2]]))
        .collect();
    ProgramTuple::from_parts(rules, segments.to_vec())
}

/// `I_3 = {c}, I_4 = {a, d}` style rendering.
pub fn render_assignment(assignment: &ISAssignment, symbols: &SymbolTable) -> String {
    let parts: Vec<String> = assignment
        .iter()
        .map(|(name, set)| format!("I_{name} = {}", symbols.render_set(set)))
        .collect();
    parts.join(", ")
}
