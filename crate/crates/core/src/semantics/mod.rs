//! Classical satisfaction, reducts, stable models and here-and-there models
//! for ASP and LP^MLN.
//!
//! The enumerating functions here are the reference implementation. The
//! [`symbolic`] submodule decides the same equivalence question without
//! enumerating interpretations and is what the discovery search uses.

pub mod symbolic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::atoms::{AtomSet, Interpretation};
use crate::error::{Error, Result};
use crate::program::{Program, Rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Asp,
    Lpmln,
}

impl Semantics {
    pub const ALL: [Semantics; 2] = [Semantics::Asp, Semantics::Lpmln];
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Asp => "asp",
            Semantics::Lpmln => "lpmln",
        })
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "asp" => Ok(Semantics::Asp),
            "lpmln" => Ok(Semantics::Lpmln),
            other => Err(format!(
                "unknown semantics `{other}` (expected asp or lpmln)"
            )),
        }
    }
}

/// Caps on brute-force enumeration, in atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Cap for `2^n` scans (stable models).
    pub interpretations: usize,
    /// Cap for `3^n` scans (HT-models, equivalence).
    pub ht_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            interpretations: 20,
            ht_pairs: 17,
        }
    }
}

/// A pair `(X, Y)` with `X ⊆ Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HtInterpretation {
    // field order gives the (Y, X) lexicographic ordering
    there: Interpretation,
    here: Interpretation,
}

impl HtInterpretation {
    pub fn new(here: Interpretation, there: Interpretation) -> Result<Self> {
        if !here.is_subset(there) {
            return Err(Error::NotHereThere {
                here: format!("{here:?}"),
                there: format!("{there:?}"),
            });
        }
        Ok(HtInterpretation { there, here })
    }

    pub fn total(y: Interpretation) -> Self {
        HtInterpretation { there: y, here: y }
    }

    pub fn here(&self) -> Interpretation {
        self.here
    }

    pub fn there(&self) -> Interpretation {
        self.there
    }

    pub fn is_total(&self) -> bool {
        self.here == self.there
    }
}

pub fn satisfies(x: Interpretation, r: &Rule) -> bool {
    x.intersects(r.head) || !r.pbody.is_subset(x) || r.nbody.intersects(x)
}

pub fn satisfies_all(x: Interpretation, rules: &[Rule]) -> bool {
    rules.iter().all(|r| satisfies(x, r))
}

pub fn gl_reduct(p: &Program, x: Interpretation) -> Program {
    Program::new(p.iter().filter(|r| !r.nbody.intersects(x)).map(|r| Rule {
        nbody: AtomSet::EMPTY,
        ..*r
    }))
}

pub fn lpmln_reduct(p: &Program, x: Interpretation) -> Program {
    Program::new(p.iter().filter(|r| satisfies(x, r)).copied())
}

fn check_cap(universe: AtomSet, cap: usize) -> Result<()> {
    if universe.len() > cap {
        return Err(Error::EnumerationCap {
            atoms: universe.len(),
            cap,
        });
    }
    Ok(())
}

fn is_asp_stable(p: &Program, x: Interpretation) -> bool {
    let reduct = gl_reduct(p, x);
    if !satisfies_all(x, &reduct.rules) {
        return false;
    }
    // the reduct is positive, so negative bodies play no role below
    x.subsets()
        .filter(|&z| z != x)
        .all(|z| !satisfies_all(z, &reduct.rules))
}

/// Stable models over `universe`, in ascending bit order.
pub fn stable_models(
    p: &Program,
    sem: Semantics,
    universe: AtomSet,
    limits: &Limits,
) -> Result<Vec<Interpretation>> {
    let universe = universe.union(p.atoms());
    check_cap(universe, limits.interpretations)?;
    Ok(universe
        .subsets()
        .filter(|&x| match sem {
            Semantics::Asp => is_asp_stable(p, x),
            Semantics::Lpmln => is_asp_stable(&lpmln_reduct(p, x), x),
        })
        .collect())
}

/// `exp` of the summed weights of the rules `x` satisfies.
pub fn weight_degree(p: &Program, x: Interpretation) -> Result<f64> {
    let mut total = 0.0;
    for (i, r) in p.iter().enumerate() {
        let w = r.weight.ok_or(Error::MissingWeight { rule: i })?;
        if satisfies(x, r) {
            total += w;
        }
    }
    Ok(total.exp())
}

/// HT-satisfaction of a single rule. LP^MLN reads the rule conditionally:
/// when `Y` does not satisfy it, the rule drops out of the reduct.
pub fn ht_satisfies(i: &HtInterpretation, r: &Rule, sem: Semantics) -> bool {
    let (x, y) = (i.here, i.there);
    let there_ok = satisfies(y, r);
    if !there_ok {
        return sem == Semantics::Lpmln;
    }
    r.nbody.intersects(y) || x.intersects(r.head) || !r.pbody.is_subset(x)
}

pub fn ht_satisfies_all(i: &HtInterpretation, rules: &[Rule], sem: Semantics) -> bool {
    rules.iter().all(|r| ht_satisfies(i, r, sem))
}

/// All HT-interpretations over `universe`, ordered by `(Y, X)`.
pub fn ht_pairs(universe: AtomSet) -> impl Iterator<Item = HtInterpretation> {
    universe.subsets().flat_map(|y| {
        y.subsets()
            .map(move |x| HtInterpretation { there: y, here: x })
    })
}

pub fn ht_models(
    p: &Program,
    universe: AtomSet,
    sem: Semantics,
    limits: &Limits,
) -> Result<Vec<HtInterpretation>> {
    let universe = universe.union(p.atoms());
    check_cap(universe, limits.ht_pairs)?;
    Ok(ht_pairs(universe)
        .filter(|i| ht_satisfies_all(i, &p.rules, sem))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub equivalent: bool,
    /// The `(Y, X)`-least HT-interpretation that is a model of exactly one side.
    pub witness: Option<HtInterpretation>,
}

/// Strong (ASP) or semi-strong (LP^MLN) equivalence by comparing HT-models
/// over `at(p) ∪ at(q)`.
pub fn equivalent(p: &Program, q: &Program, sem: Semantics, limits: &Limits) -> Result<Verdict> {
    let universe = p.atoms().union(q.atoms());
    check_cap(universe, limits.ht_pairs)?;
    let witness = ht_pairs(universe)
        .find(|i| ht_satisfies_all(i, &p.rules, sem) != ht_satisfies_all(i, &q.rules, sem));
    Ok(Verdict {
        equivalent: witness.is_none(),
        witness,
    })
}
