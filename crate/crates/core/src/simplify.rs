//! Compressing a set of SE-conditions into a disjunction of conjunctions.
//!
//! A clique with max member `T` is exactly the interval of conditions whose
//! non-empty sets lie between `CIS_n` and `nis(T)`, so maximal cliques of a
//! SIS-irrelevant subset are the prime implicants of its non-empty patterns.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::condition::{ISCondition, Shape};
use crate::discovery::space::bits;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CisKind {
    Empty,
    Nonempty,
}

/// Names empty (or non-empty) in every condition.
pub fn cis(conditions: &[ISCondition], kind: CisKind) -> Result<Vec<u32>> {
    let first = conditions.first().ok_or(Error::EmptyConditions)?;
    let shape = first.shape();
    if let Some(c) = conditions.iter().find(|c| c.shape() != shape) {
        return Err(Error::ShapeMismatch {
            expected: shape.segments().to_vec(),
            found: c.shape().segments().to_vec(),
        });
    }
    Ok(match kind {
        CisKind::Nonempty => first
            .nis()
            .iter()
            .copied()
            .filter(|&n| conditions.iter().all(|c| c.is_nonempty(n)))
            .collect(),
        CisKind::Empty => {
            let mut seen: Vec<u32> = conditions
                .iter()
                .flat_map(|c| c.nis().iter().copied())
                .collect();
            seen.sort_unstable();
            seen.dedup();
            shape
                .names()
                .filter(|n| seen.binary_search(n).is_err())
                .collect()
        }
    })
}

/// `IC_s`: every name that some condition requires to be a singleton.
fn singleton_names(mgic: &[ISCondition]) -> Vec<u32> {
    let mut out: Vec<u32> = mgic.iter().flat_map(|c| c.sis().iter().copied()).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn sis_matches(c: &ISCondition, ic_s: &[u32]) -> bool {
    let inter: Vec<u32> = c
        .nis()
        .iter()
        .copied()
        .filter(|n| ic_s.binary_search(n).is_ok())
        .collect();
    inter == c.sis()
}

/// The maximal SIS-irrelevant subsets: conditions without singletons, and
/// conditions whose singletons are exactly their non-empty names in `IC_s`.
/// The two may overlap; a subset equal to the other is reported once.
pub fn sis_irrelevant_partition(mgic: &[ISCondition]) -> Vec<Vec<ISCondition>> {
    let ic_s = singleton_names(mgic);
    let free: Vec<ISCondition> = mgic
        .iter()
        .filter(|c| c.sis().is_empty())
        .cloned()
        .collect();
    let bound: Vec<ISCondition> = mgic
        .iter()
        .filter(|c| sis_matches(c, &ic_s))
        .cloned()
        .collect();
    let mut out = Vec::new();
    if !free.is_empty() {
        out.push(free);
    }
    if !bound.is_empty() && !out.contains(&bound) {
        out.push(bound);
    }
    out
}

/// Conditions that belong to no SIS-irrelevant subset.
pub fn residual(mgic: &[ISCondition]) -> Vec<ISCondition> {
    let ic_s = singleton_names(mgic);
    mgic.iter()
        .filter(|c| !c.sis().is_empty() && !sis_matches(c, &ic_s))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clique {
    pub members: Vec<ISCondition>,
    pub max_member: ISCondition,
}

impl Clique {
    /// Checks both clique conditions.
    pub fn is_valid(&self) -> bool {
        let max = &self.max_member;
        let shape = max.shape();
        let inside = self.members.iter().all(|c| {
            c == max
                || (c.nis().len() < max.nis().len()
                    && c.nis().iter().all(|n| max.is_nonempty(*n))
                    && c.sis().iter().copied().eq(c
                        .nis()
                        .iter()
                        .copied()
                        .filter(|n| max.is_single(*n))))
        });
        let (Ok(n), Ok(e)) = (
            cis(&self.members, CisKind::Nonempty),
            cis(&self.members, CisKind::Empty),
        ) else {
            return false;
        };
        let x = shape.name_count() as usize - n.len() - e.len();
        inside && self.members.contains(max) && x < 64 && self.members.len() == 1usize << x
    }

    pub fn sim(&self) -> SimplifiedCondition {
        let nonempty = cis(&self.members, CisKind::Nonempty).expect("clique is not empty");
        let empty = cis(&self.members, CisKind::Empty).expect("clique is not empty");
        SimplifiedCondition {
            nonempty,
            empty,
            at_most_one: self.max_member.sis().to_vec(),
        }
    }
}

/// A product term `ones ∧ ¬zeros` over indexed names.
type Cube = (u64, u64);

fn covers(big: Cube, small: Cube) -> bool {
    big.0 & !small.0 == 0 && big.1 & !small.1 == 0
}

/// Prime implicants of the function true exactly on `f` (sorted, distinct,
/// inside `vars`).
fn primes(f: &[u64], vars: u64) -> Vec<Cube> {
    if f.is_empty() {
        return Vec::new();
    }
    let width = vars.count_ones();
    if width < 64 && f.len() as u64 == 1u64 << width {
        return vec![(0, 0)];
    }
    let x = split_variable(f, vars);
    let rest = vars & !x;
    let f0: Vec<u64> = f.iter().copied().filter(|m| m & x == 0).collect();
    let f1: Vec<u64> = f
        .iter()
        .copied()
        .filter(|m| m & x != 0)
        .map(|m| m & !x)
        .collect();
    let out = if f0 == f1 {
        primes(&f0, rest)
    } else {
        let both: Vec<u64> = intersect(&f0, &f1);
        let mut out = primes(&both, rest);
        let shared = out.len();
        for c in primes(&f0, rest) {
            if !out[..shared].iter().any(|&g| covers(g, c)) {
                out.push((c.0, c.1 | x));
            }
        }
        for c in primes(&f1, rest) {
            if !out[..shared].iter().any(|&g| covers(g, c)) {
                out.push((c.0 | x, c.1));
            }
        }
        out
    };
    out
}

/// The variable whose cofactors are most balanced.
fn split_variable(f: &[u64], vars: u64) -> u64 {
    let mut counts = [0usize; 64];
    for &m in f {
        for b in bits(m) {
            counts[b as usize] += 1;
        }
    }
    let half = f.len() / 2;
    let best = bits(vars)
        .min_by_key(|&b| counts[b as usize].abs_diff(half))
        .expect("vars is not empty");
    1 << best
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// All maximal cliques of a SIS-irrelevant subset.
pub fn find_max_cliques(subset: &[ISCondition]) -> Result<Vec<Clique>> {
    let mut alphabet: Vec<u32> = subset
        .iter()
        .flat_map(|c| c.nis().iter().copied())
        .collect();
    alphabet.sort_unstable();
    alphabet.dedup();
    if alphabet.len() > 64 {
        return Err(Error::SearchSpaceTooLarge {
            names: alphabet.len(),
            what: "clique search (at most 64 names)",
        });
    }
    let index: HashMap<u32, u32> = alphabet
        .iter()
        .enumerate()
        .map(|(i, &n)| (n, i as u32))
        .collect();
    let mask = |c: &ISCondition| c.nis().iter().fold(0u64, |m, n| m | 1 << index[n]);
    let by_mask: BTreeMap<u64, &ISCondition> = subset.iter().map(|c| (mask(c), c)).collect();
    let minterms: Vec<u64> = by_mask.keys().copied().collect();
    let all = if alphabet.len() == 64 {
        u64::MAX
    } else {
        (1u64 << alphabet.len()) - 1
    };

    let mut cliques: Vec<Clique> = primes(&minterms, all)
        .into_iter()
        .map(|(ones, zeros)| {
            let upper = all & !zeros;
            let members: Vec<ISCondition> = by_mask
                .range(ones..=upper)
                .filter(|(m, _)| ones & !**m == 0 && **m & !upper == 0)
                .map(|(_, c)| (*c).clone())
                .collect();
            Clique {
                members,
                max_member: by_mask[&upper].clone(),
            }
        })
        .collect();
    sort_cliques(&mut cliques);
    Ok(cliques)
}

/// Larger cliques first, then by max member and common non-empty names.
fn sort_cliques(cliques: &mut [Clique]) {
    cliques.sort_by_cached_key(|c| {
        let lower = cis(&c.members, CisKind::Nonempty).expect("clique is not empty");
        (
            std::cmp::Reverse(c.members.len()),
            c.max_member.clone(),
            lower,
        )
    });
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifiedCondition {
    pub nonempty: Vec<u32>,
    pub empty: Vec<u32>,
    pub at_most_one: Vec<u32>,
}

/// Size class of an independent set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetSize {
    Empty,
    Single,
    Many,
}

/// Sizes of the non-empty names; absent names are empty.
pub type SizeAssignment = BTreeMap<u32, SetSize>;

fn size(a: &SizeAssignment, name: u32) -> SetSize {
    a.get(&name).copied().unwrap_or(SetSize::Empty)
}

/// Whether the sets sized by `a` satisfy the condition.
pub fn condition_holds(c: &ISCondition, a: &SizeAssignment) -> bool {
    let nonempty = a
        .iter()
        .filter(|(_, s)| **s != SetSize::Empty)
        .map(|(n, _)| *n);
    nonempty.eq(c.nis().iter().copied()) && c.sis().iter().all(|&n| size(a, n) == SetSize::Single)
}

impl SimplifiedCondition {
    pub fn holds(&self, a: &SizeAssignment) -> bool {
        self.nonempty.iter().all(|&n| size(a, n) != SetSize::Empty)
            && self.empty.iter().all(|&n| size(a, n) == SetSize::Empty)
            && self
                .at_most_one
                .iter()
                .all(|&n| size(a, n) != SetSize::Many)
    }

    fn from_condition(c: &ISCondition) -> Self {
        SimplifiedCondition {
            nonempty: c.nis().to_vec(),
            empty: c.eis().collect(),
            at_most_one: c.sis().to_vec(),
        }
    }

    /// Every condition this one admits is admitted by `other`.
    fn implies(&self, other: &SimplifiedCondition) -> bool {
        let within = |a: &[u32], b: &[u32]| a.iter().all(|x| b.binary_search(x).is_ok());
        within(&other.nonempty, &self.nonempty)
            && within(&other.empty, &self.empty)
            && other.at_most_one.iter().all(|x| {
                self.at_most_one.binary_search(x).is_ok() || self.empty.binary_search(x).is_ok()
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Simplified {
    pub shape: Option<Shape>,
    pub disjuncts: Vec<SimplifiedCondition>,
    /// Disjuncts that came from cliques; the rest are residual conditions.
    pub cliques: usize,
}

impl Simplified {
    pub fn holds(&self, a: &SizeAssignment) -> bool {
        self.disjuncts.iter().any(|d| d.holds(a))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("simplified conditions serialize") + "\n"
    }

    /// Readable formula with the conjuncts shared by all disjuncts pulled out.
    pub fn formula(&self) -> String {
        let Some(shape) = self.shape else {
            return String::new();
        };
        let common = |f: fn(&SimplifiedCondition) -> &Vec<u32>| -> Vec<u32> {
            let first = f(&self.disjuncts[0]);
            first
                .iter()
                .copied()
                .filter(|x| self.disjuncts.iter().all(|d| f(d).binary_search(x).is_ok()))
                .collect()
        };
        let shared = SimplifiedCondition {
            nonempty: common(|d| &d.nonempty),
            empty: common(|d| &d.empty),
            at_most_one: common(|d| &d.at_most_one),
        };
        let strip = |v: &[u32], drop: &[u32]| -> Vec<u32> {
            v.iter()
                .copied()
                .filter(|x| drop.binary_search(x).is_err())
                .collect()
        };
        let mut parts = conjuncts(&shared, shape, true);
        if self.disjuncts.len() > 1 {
            let alts: Vec<String> = self
                .disjuncts
                .iter()
                .map(|d| {
                    let rest = SimplifiedCondition {
                        nonempty: strip(&d.nonempty, &shared.nonempty),
                        empty: strip(&d.empty, &shared.empty),
                        at_most_one: strip(&d.at_most_one, &shared.at_most_one),
                    };
                    let c = conjuncts(&rest, shape, false);
                    match c.len() {
                        0 => "⊤".to_string(),
                        1 => c[0].clone(),
                        _ => format!("({})", c.join(" ∧ ")),
                    }
                })
                .collect();
            parts.push(if parts.is_empty() {
                alts.join(" ∨ ")
            } else {
                format!("({})", alts.join(" ∨ "))
            });
        }
        if parts.is_empty() {
            "⊤".to_string()
        } else {
            parts.join(" ∧ ")
        }
    }
}

fn conjuncts(d: &SimplifiedCondition, shape: Shape, complement: bool) -> Vec<String> {
    let mut out = Vec::new();
    for n in &d.at_most_one {
        out.push(format!("|I_{n}| ≤ 1"));
    }
    for n in d
        .nonempty
        .iter()
        .filter(|n| d.at_most_one.binary_search(n).is_err())
    {
        out.push(format!("I_{n} ≠ ∅"));
    }
    let total = shape.name_count() as usize;
    if complement && d.empty.len() * 2 > total {
        let others: Vec<String> = shape
            .names()
            .filter(|n| d.empty.binary_search(n).is_err())
            .map(|n| n.to_string())
            .collect();
        out.push(format!("I_k = ∅ for k ∉ {{{}}}", others.join(", ")));
    } else {
        out.extend(d.empty.iter().map(|n| format!("I_{n} = ∅")));
    }
    out
}

/// Cliques of every SIS-irrelevant subset, then the remaining conditions
/// verbatim. Disjuncts implied by another one are dropped.
pub fn simplify(mgic: &[ISCondition]) -> Result<Simplified> {
    let shape = mgic.first().map(|c| c.shape());
    let mut cliques = Vec::new();
    for part in sis_irrelevant_partition(mgic) {
        cliques.extend(find_max_cliques(&part)?);
    }
    sort_cliques(&mut cliques);
    let mut disjuncts: Vec<SimplifiedCondition> = Vec::new();
    for sim in cliques.iter().map(Clique::sim) {
        if !disjuncts.iter().any(|d| sim.implies(d)) {
            disjuncts.push(sim);
        }
    }
    let n_cliques = disjuncts.len();
    for c in residual(mgic) {
        let d = SimplifiedCondition::from_condition(&c);
        if !disjuncts.iter().any(|e| d.implies(e)) {
            disjuncts.push(d);
        }
    }
    Ok(Simplified {
        shape,
        disjuncts,
        cliques: n_cliques,
    })
}

/// Every size assignment over `names` (others empty), in lexicographic order.
pub fn assignments(names: &[u32]) -> impl Iterator<Item = SizeAssignment> + '_ {
    let total = 3usize.pow(names.len() as u32);
    (0..total).map(move |mut code| {
        let mut a = SizeAssignment::new();
        for &n in names {
            match code % 3 {
                1 => {
                    a.insert(n, SetSize::Single);
                }
                2 => {
                    a.insert(n, SetSize::Many);
                }
                _ => {}
            }
            code /= 3;
        }
        a
    })
}

/// First assignment over `names` on which the simplification and the
/// original conditions disagree.
pub fn disagreement(
    mgic: &[ISCondition],
    simplified: &Simplified,
    names: &[u32],
) -> Option<SizeAssignment> {
    assignments(names).find(|a| simplified.holds(a) != mgic.iter().any(|c| condition_holds(c, a)))
}
