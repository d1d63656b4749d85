//! IS-conditions of k-m-n problems and their canonical tuples.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atoms::{Atom, AtomSet, SymbolTable};
use crate::error::{Error, Result};
use crate::isets::{name_count, reconstruct_tuple, ISAssignment, ISetName, MAX_RULES};
use crate::program::{ProgramTuple, Rule};

/// Rule counts `(k, m, n)` of the programs `K`, `M` and `N`; the question is
/// whether `K ∪ M` and `K ∪ N` are equivalent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 3]", into = "[usize; 3]")]
pub struct Shape {
    pub k: usize,
    pub m: usize,
    pub n: usize,
}

impl From<[usize; 3]> for Shape {
    fn from([k, m, n]: [usize; 3]) -> Self {
        Shape { k, m, n }
    }
}

impl From<Shape> for [usize; 3] {
    fn from(s: Shape) -> Self {
        [s.k, s.m, s.n]
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}-{}", self.k, self.m, self.n)
    }
}

impl Shape {
    pub fn new(k: usize, m: usize, n: usize) -> Result<Self> {
        let shape = Shape { k, m, n };
        if shape.n_rules() > MAX_RULES {
            return Err(Error::TooManyRules {
                n_rules: shape.n_rules(),
                max: MAX_RULES,
            });
        }
        Ok(shape)
    }

    pub fn n_rules(self) -> usize {
        self.k + self.m + self.n
    }

    pub fn segments(self) -> [usize; 3] {
        [self.k, self.m, self.n]
    }

    /// `|IS(k, m, n)|`.
    pub fn name_count(self) -> u32 {
        name_count(self.n_rules())
    }

    /// `IS(k, m, n)` in ascending order.
    pub fn names(self) -> impl Iterator<Item = u32> {
        1..=self.name_count()
    }

    pub fn local(self, name: u32, rule: usize) -> u8 {
        crate::isets::local_digit(name, rule, self.n_rules())
    }

    /// `(K ∪ M, K ∪ N)` of a tuple of this shape.
    pub fn programs(self, t: &ProgramTuple) -> (Vec<Rule>, Vec<Rule>) {
        let rules = t.rules();
        let (k, rest) = rules.split_at(self.k);
        let (m, n) = rest.split_at(self.m);
        let mut p = k.to_vec();
        p.extend_from_slice(m);
        let mut q = k.to_vec();
        q.extend_from_slice(n);
        (p, q)
    }
}

/// Which independent sets are non-empty (`nis`) and which of those are
/// singletons (`sis`). Every other name is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCondition")]
pub struct ISCondition {
    shape: Shape,
    nis: Vec<u32>,
    sis: Vec<u32>,
}

#[derive(Deserialize)]
struct RawCondition {
    shape: Shape,
    nis: Vec<u32>,
    sis: Vec<u32>,
}

impl TryFrom<RawCondition> for ISCondition {
    type Error = Error;

    fn try_from(raw: RawCondition) -> Result<Self> {
        ISCondition::new(raw.shape, raw.nis, raw.sis)
    }
}

/// Canonical order: fewer non-empty sets first, then by names.
impl Ord for ISCondition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.shape, self.nis.len(), &self.nis, &self.sis).cmp(&(
            other.shape,
            other.nis.len(),
            &other.nis,
            &other.sis,
        ))
    }
}

impl PartialOrd for ISCondition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ISCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nis={:?} sis={:?}", self.shape, self.nis, self.sis)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// Same non-empty sets, strictly more singletons on the left.
    Less,
    /// Both singleton conditions, left non-empty sets strictly contained.
    Subset,
    Incomparable,
}

impl ISCondition {
    pub fn new(
        shape: Shape,
        nis: impl IntoIterator<Item = u32>,
        sis: impl IntoIterator<Item = u32>,
    ) -> Result<Self> {
        let mut nis: Vec<u32> = nis.into_iter().collect();
        let mut sis: Vec<u32> = sis.into_iter().collect();
        nis.sort_unstable();
        nis.dedup();
        sis.sort_unstable();
        sis.dedup();
        let count = shape.name_count();
        for &name in &nis {
            if name == 0 {
                return Err(Error::ZeroName);
            }
            if name > count {
                return Err(Error::NameOutOfRange {
                    name: name as u64,
                    n_rules: shape.n_rules(),
                });
            }
        }
        if let Some(&bad) = sis.iter().find(|s| nis.binary_search(s).is_err()) {
            return Err(Error::NameOutOfRange {
                name: bad as u64,
                n_rules: shape.n_rules(),
            });
        }
        Ok(ISCondition { shape, nis, sis })
    }

    /// Every non-empty set is a singleton.
    pub fn singleton(shape: Shape, names: impl IntoIterator<Item = u32>) -> Result<Self> {
        let names: Vec<u32> = names.into_iter().collect();
        ISCondition::new(shape, names.clone(), names)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn nis(&self) -> &[u32] {
        &self.nis
    }

    pub fn sis(&self) -> &[u32] {
        &self.sis
    }

    pub fn is_singleton(&self) -> bool {
        self.nis == self.sis
    }

    /// Empty names, `IS − nis`.
    pub fn eis(&self) -> impl Iterator<Item = u32> + '_ {
        self.shape
            .names()
            .filter(|n| self.nis.binary_search(n).is_err())
    }

    pub fn is_nonempty(&self, name: u32) -> bool {
        self.nis.binary_search(&name).is_ok()
    }

    pub fn is_single(&self, name: u32) -> bool {
        self.sis.binary_search(&name).is_ok()
    }

    /// Atoms allotted to each non-empty name in the canonical tuple.
    fn sizes(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.nis
            .iter()
            .map(|&n| (n, if self.is_single(n) { 1 } else { 2 }))
    }

    pub fn canonical_atom_count(&self) -> usize {
        self.sizes().map(|(_, s)| s).sum()
    }

    /// The assignment behind [`canonical_tuple`]: atoms `x0, x1, ..` handed out
    /// in ascending name order.
    pub fn canonical_assignment(&self) -> ISAssignment {
        let mut next = 0u32;
        let buckets = self.sizes().map(|(name, size)| {
            let set: AtomSet = (next..next + size as u32).map(Atom).collect();
            next += size as u32;
            (name, set)
        });
        ISAssignment::from_buckets(self.shape.n_rules(), buckets.collect::<Vec<_>>())
            .expect("condition names are valid and atoms are fresh")
    }

    pub fn canonical_symbols(&self) -> SymbolTable {
        SymbolTable::fresh(self.canonical_atom_count())
    }
}

/// A tuple whose non-empty independent sets are exactly `nis`, with one atom
/// per singleton name and two per other non-empty name.
pub fn canonical_tuple(c: &ISCondition) -> ProgramTuple {
    reconstruct_tuple(&c.shape.segments(), &c.canonical_assignment())
        .expect("segment sizes match the shape")
}

fn strict_subset(a: &[u32], b: &[u32]) -> bool {
    a.len() < b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

pub fn relation(c1: &ISCondition, c2: &ISCondition) -> Result<Relation> {
    if c1.shape != c2.shape {
        return Err(Error::ShapeMismatch {
            expected: c1.shape.segments().to_vec(),
            found: c2.shape.segments().to_vec(),
        });
    }
    Ok(if c1.nis == c2.nis && c1.sis == c2.sis {
        Relation::Equal
    } else if c1.nis == c2.nis && strict_subset(&c2.sis, &c1.sis) {
        Relation::Less
    } else if c1.is_singleton() && c2.is_singleton() && strict_subset(&c1.nis, &c2.nis) {
        Relation::Subset
    } else {
        Relation::Incomparable
    })
}

/// `ISetName` handles for the non-empty names.
pub fn names_of(c: &ISCondition) -> Vec<ISetName> {
    c.nis
        .iter()
        .map(|&n| ISetName::new(n as u64, c.shape.n_rules()).expect("validated on construction"))
        .collect()
}
