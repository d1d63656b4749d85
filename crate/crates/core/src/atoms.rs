//! Ground atoms, bitset interpretations and the shared symbol table.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::Error;

/// Upper bound on the number of atoms in one universe.
pub const MAX_ATOMS: usize = 128;

/// Dense index of an atom inside its universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of atoms over a fixed universe, stored as a 128-bit mask.
///
/// Bit `i` stands for `Atom(i)`. Iteration is in ascending atom id.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(pub u128);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(atom: Atom) -> Self {
        AtomSet(1u128 << atom.0)
    }

    /// The first `n` atoms, `{0, .., n-1}`.
    pub fn prefix(n: usize) -> Self {
        assert!(n <= MAX_ATOMS, "universe of {n} atoms exceeds {MAX_ATOMS}");
        if n == MAX_ATOMS {
            AtomSet(u128::MAX)
        } else {
            AtomSet((1u128 << n) - 1)
        }
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, atom: Atom) -> bool {
        self.0 >> atom.0 & 1 == 1
    }

    pub fn insert(&mut self, atom: Atom) {
        self.0 |= 1u128 << atom.0;
    }

    pub fn remove(&mut self, atom: Atom) {
        self.0 &= !(1u128 << atom.0);
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: AtomSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Largest atom id plus one, i.e. the smallest prefix universe holding the set.
    pub fn span(self) -> usize {
        128 - self.0.leading_zeros() as usize
    }

    pub fn first(self) -> Option<Atom> {
        (self.0 != 0).then(|| Atom(self.0.trailing_zeros()))
    }

    pub fn iter(self) -> AtomIter {
        AtomIter(self.0)
    }

    /// All subsets of `self` in ascending numeric order of their masks.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

impl FromIterator<Atom> for AtomSet {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        let mut set = AtomSet::EMPTY;
        for atom in iter {
            set.insert(atom);
        }
        set
    }
}

pub struct AtomIter(u128);

impl Iterator for AtomIter {
    type Item = Atom;

    fn next(&mut self) -> Option<Atom> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Atom(tz))
    }
}

/// Submask enumeration in increasing order.
pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = AtomSet;

    fn next(&mut self) -> Option<AtomSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(AtomSet(cur))
    }
}

/// An interpretation is a set of atoms taken to be true.
pub type Interpretation = AtomSet;

/// Identity of a symbol table; programs parsed against different tables
/// cannot be combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniverseId(u64);

static NEXT_UNIVERSE: AtomicU64 = AtomicU64::new(1);

/// Bijection between atom names and dense ids.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    id: UniverseId,
    names: Vec<String>,
    index: HashMap<String, Atom>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolTable {
    pub fn new() -> Self {
        SymbolTable {
            id: UniverseId(NEXT_UNIVERSE.fetch_add(1, Ordering::Relaxed)),
            names: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// A table holding `x0, x1, .., x{n-1}`; the naming used for canonical tuples.
    pub fn fresh(n: usize) -> Self {
        let mut table = SymbolTable::new();
        for i in 0..n {
            table
                .intern(&format!("x{i}"))
                .expect("generated names are valid");
        }
        table
    }

    pub fn id(&self) -> UniverseId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn atoms(&self) -> AtomSet {
        AtomSet::prefix(self.names.len())
    }

    pub fn lookup(&self, name: &str) -> Option<Atom> {
        self.index.get(name).copied()
    }

    pub fn intern(&mut self, name: &str) -> Result<Atom, Error> {
        if let Some(&atom) = self.index.get(name) {
            return Ok(atom);
        }
        if !is_atom_name(name) {
            return Err(Error::InvalidAtomName(name.to_string()));
        }
        if self.names.len() >= MAX_ATOMS {
            return Err(Error::UniverseFull(MAX_ATOMS));
        }
        let atom = Atom(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), atom);
        Ok(atom)
    }

    /// Name of `atom`; atoms beyond the table fall back to `x<id>`.
    pub fn name(&self, atom: Atom) -> String {
        match self.names.get(atom.index()) {
            Some(name) => name.clone(),
            None => format!("x{}", atom.0),
        }
    }

    /// Makes sure every atom of `set` has a name, generating `x<id>` names as needed.
    pub fn cover(&mut self, set: AtomSet) -> Result<(), Error> {
        while self.names.len() < set.span() {
            let name = format!("x{}", self.names.len());
            if self.index.contains_key(&name) {
                return Err(Error::FreshCollision(name));
            }
            self.intern(&name)?;
        }
        Ok(())
    }

    pub fn render_set(&self, set: AtomSet) -> String {
        let names: Vec<String> = set.iter().map(|a| self.name(a)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

/// `[a-z][A-Za-z0-9_]*`
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
