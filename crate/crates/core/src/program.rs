//! Ground rules, programs and program tuples.

use crate::atoms::{AtomSet, UniverseId};
use crate::error::{Error, Result};

/// `head <- pbody, not nbody`, optionally weighted.
///
/// The three sets may overlap and may be empty. Weights are carried for
/// LP^MLN inputs but never consulted by the equivalence machinery.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Rule {
    pub head: AtomSet,
    pub pbody: AtomSet,
    pub nbody: AtomSet,
    pub weight: Option<f64>,
}

impl Rule {
    pub fn new(head: AtomSet, pbody: AtomSet, nbody: AtomSet) -> Self {
        Rule {
            head,
            pbody,
            nbody,
            weight: None,
        }
    }

    pub fn weighted(mut self, weight: f64) -> Self {
        self.weight = Some(weight);
        self
    }

    /// The unweighted rule.
    pub fn bare(self) -> Self {
        Rule {
            weight: None,
            ..self
        }
    }

    pub fn atoms(&self) -> AtomSet {
        self.head.union(self.pbody).union(self.nbody)
    }

    /// The three sets `(H, B+, B-)` in tuple order.
    pub fn sets(&self) -> [AtomSet; 3] {
        [self.head, self.pbody, self.nbody]
    }

    pub fn from_sets(sets: [AtomSet; 3]) -> Self {
        Rule::new(sets[0], sets[1], sets[2])
    }
}

/// An ordered list of rules; duplicates are allowed and order matters.
#[derive(Clone, Debug, Default)]
pub struct Program {
    pub rules: Vec<Rule>,
    universe: Option<UniverseId>,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules
    }
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        Program {
            rules: rules.into_iter().collect(),
            universe: None,
        }
    }

    pub(crate) fn in_universe(mut self, universe: UniverseId) -> Self {
        self.universe = Some(universe);
        self
    }

    pub fn universe(&self) -> Option<UniverseId> {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter()
    }

    pub fn atoms(&self) -> AtomSet {
        atoms_of_rules(&self.rules)
    }

    /// Rule list of `self` followed by `other`, as used for `K ∪ M`.
    pub fn union(&self, other: &Program) -> Program {
        let mut rules = self.rules.clone();
        rules.extend_from_slice(&other.rules);
        Program {
            rules,
            universe: self.universe.or(other.universe),
        }
    }
}

pub(crate) fn atoms_of_rules(rules: &[Rule]) -> AtomSet {
    rules
        .iter()
        .fold(AtomSet::EMPTY, |acc, r| acc.union(r.atoms()))
}

/// Concatenation of programs with the segment boundaries kept.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProgramTuple {
    rules: Vec<Rule>,
    segments: Vec<usize>,
}

impl ProgramTuple {
    /// Builds a tuple from a flat rule list and segment sizes.
    pub fn from_parts(rules: Vec<Rule>, segments: Vec<usize>) -> Result<Self> {
        let total: usize = segments.iter().sum();
        if total != rules.len() {
            return Err(Error::ShapeMismatch {
                expected: segments,
                found: vec![rules.len()],
            });
        }
        Ok(ProgramTuple { rules, segments })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn segment_sizes(&self) -> &[usize] {
        &self.segments
    }

    pub fn n_rules(&self) -> usize {
        self.rules.len()
    }

    pub fn segment(&self, index: usize) -> &[Rule] {
        let start: usize = self.segments[..index].iter().sum();
        &self.rules[start..start + self.segments[index]]
    }

    pub fn programs(&self) -> Vec<Program> {
        (0..self.segments.len())
            .map(|i| Program::new(self.segment(i).iter().copied()))
            .collect()
    }

    /// `TS(T)`: head, positive body and negative body of every rule in order.
    pub fn sets(&self) -> Vec<AtomSet> {
        self.rules.iter().flat_map(|r| r.sets()).collect()
    }

    pub fn atoms(&self) -> AtomSet {
        atoms_of_rules(&self.rules)
    }
}

/// Concatenates programs in order, keeping the segment sizes.
pub fn concat_tuple(programs: &[Program]) -> Result<ProgramTuple> {
    let mut universe = None;
    for p in programs {
        match (universe, p.universe()) {
            (Some(u), Some(v)) if u != v => return Err(Error::MixedUniverse),
            (None, Some(v)) => universe = Some(v),
            _ => {}
        }
    }
    let rules = programs
        .iter()
        .flat_map(|p| p.rules.iter().copied())
        .collect();
    let segments = programs.iter().map(Program::len).collect();
    Ok(ProgramTuple { rules, segments })
}

/// `at(T)`, the atoms occurring anywhere in the tuple.
pub fn atoms_of(tuple: &ProgramTuple) -> AtomSet {
    tuple.atoms()
}
