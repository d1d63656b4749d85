//! Equivalence without enumerating HT-interpretations.
//!
//! `(X, Y)` separates `P` from `Q` when it violates some rule of one side and
//! satisfies every rule of the other. Violation and satisfaction of a rule are
//! small disjunctions of set constraints on `X` and `Y`, so a separating pair
//! exists iff one choice of disjuncts is consistent. Each atom takes one of
//! three states (outside `Y`, in `Y − X`, in `X`); universal constraints narrow
//! the states every atom may take, existential ones need a single witness atom.

use super::{HtInterpretation, Semantics};
use crate::atoms::AtomSet;
use crate::program::Rule;

const OUT: u8 = 1;
const MID: u8 = 2;
const IN: u8 = 4;

#[derive(Clone, Copy, Debug)]
enum Lit {
    /// Every atom of the set has a state in the mask.
    All(AtomSet, u8),
    /// Some atom of the set has a state in the mask.
    Any(AtomSet, u8),
}

use Lit::{All, Any};

fn satisfied_options(r: &Rule, sem: Semantics) -> Vec<Vec<Lit>> {
    match sem {
        Semantics::Lpmln => vec![
            vec![All(r.head, OUT)],
            vec![Any(r.nbody, MID | IN)],
            vec![Any(r.pbody, OUT | MID)],
            vec![Any(r.head, IN)],
        ],
        Semantics::Asp => vec![
            vec![Any(r.nbody, MID | IN)],
            vec![Any(r.pbody, OUT)],
            vec![Any(r.head, MID | IN), Any(r.pbody, OUT | MID)],
            vec![Any(r.head, IN)],
        ],
    }
}

fn violated_options(r: &Rule, sem: Semantics) -> Vec<Vec<Lit>> {
    match sem {
        Semantics::Lpmln => vec![vec![
            Any(r.head, MID | IN),
            All(r.nbody, OUT),
            All(r.pbody, IN),
            All(r.head, OUT | MID),
        ]],
        Semantics::Asp => vec![
            vec![All(r.nbody, OUT), All(r.pbody, MID | IN), All(r.head, OUT)],
            vec![All(r.nbody, OUT), All(r.pbody, IN), All(r.head, OUT | MID)],
        ],
    }
}

/// Allowed states per atom, one bit plane per state.
#[derive(Clone, Copy)]
struct Domains {
    planes: [AtomSet; 3],
    scope: AtomSet,
}

impl Domains {
    fn new(scope: AtomSet) -> Self {
        Domains {
            planes: [scope; 3],
            scope,
        }
    }

    /// Atoms of `set` that may take some state in `mask`.
    fn can(&self, set: AtomSet, mask: u8) -> AtomSet {
        let mut out = AtomSet::EMPTY;
        for (i, plane) in self.planes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out = out.union(*plane);
            }
        }
        out.intersection(set)
    }

    fn restrict(&mut self, set: AtomSet, mask: u8) {
        for (i, plane) in self.planes.iter_mut().enumerate() {
            if mask >> i & 1 == 0 {
                *plane = plane.difference(set);
            }
        }
    }

    fn consistent(&self) -> bool {
        self.can(self.scope, OUT | MID | IN) == self.scope
    }

    fn witness(&self) -> HtInterpretation {
        let out = self.planes[0];
        let mid = self.planes[1].difference(out);
        let inside = self.planes[2].difference(out).difference(mid);
        HtInterpretation::new(inside, mid.union(inside)).expect("X ⊆ Y by construction")
    }
}

struct Search<'a> {
    sem: Semantics,
    others: &'a [Rule],
    scope: AtomSet,
}

impl Search<'_> {
    fn run(&self, violated: &Rule) -> Option<HtInterpretation> {
        for option in violated_options(violated, self.sem) {
            let mut dom = Domains::new(self.scope);
            let mut pending = Vec::new();
            if !apply(&mut dom, &mut pending, &option) {
                continue;
            }
            if let Some(w) = self.choose(0, dom, &mut pending) {
                return Some(w);
            }
        }
        None
    }

    fn choose(
        &self,
        idx: usize,
        dom: Domains,
        pending: &mut Vec<(AtomSet, u8)>,
    ) -> Option<HtInterpretation> {
        if idx == self.others.len() {
            return solve_existentials(dom, pending);
        }
        for option in satisfied_options(&self.others[idx], self.sem) {
            let mut next = dom;
            let mark = pending.len();
            if apply(&mut next, pending, &option) {
                if let Some(w) = self.choose(idx + 1, next, pending) {
                    return Some(w);
                }
            }
            pending.truncate(mark);
        }
        None
    }
}

fn apply(dom: &mut Domains, pending: &mut Vec<(AtomSet, u8)>, lits: &[Lit]) -> bool {
    for lit in lits {
        match *lit {
            All(set, mask) => dom.restrict(set, mask),
            Any(set, mask) => pending.push((set, mask)),
        }
    }
    dom.consistent()
        && pending
            .iter()
            .all(|&(set, mask)| !dom.can(set, mask).is_empty())
}

fn solve_existentials(dom: Domains, pending: &[(AtomSet, u8)]) -> Option<HtInterpretation> {
    fn go(dom: Domains, pending: &[(AtomSet, u8)]) -> Option<Domains> {
        let Some((&(set, mask), rest)) = pending.split_first() else {
            return Some(dom);
        };
        // already forced by an earlier choice
        let forced = set
            .iter()
            .any(|a| dom.can(AtomSet::singleton(a), !mask & 7).is_empty());
        if forced {
            return go(dom, rest);
        }
        for atom in dom.can(set, mask).iter() {
            let mut next = dom;
            next.restrict(AtomSet::singleton(atom), mask);
            if let Some(done) = go(next, rest) {
                return Some(done);
            }
        }
        None
    }
    go(dom, pending).map(|d| d.witness())
}

/// An HT-interpretation that is a model of exactly one of `p` and `q`, if any.
///
/// The witness is not the `(Y, X)`-least one; see [`super::equivalent`] for that.
pub fn separating(p: &[Rule], q: &[Rule], sem: Semantics) -> Option<HtInterpretation> {
    let scope = crate::program::atoms_of_rules(p).union(crate::program::atoms_of_rules(q));
    for (models, others) in [(p, q), (q, p)] {
        let search = Search {
            sem,
            others: models,
            scope,
        };
        for r in others {
            if let Some(w) = search.run(r) {
                return Some(w);
            }
        }
    }
    None
}

pub fn equivalent(p: &[Rule], q: &[Rule], sem: Semantics) -> bool {
    separating(p, q, sem).is_none()
}
