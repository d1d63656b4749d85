//! The five single-atom edits on one independent set.

use std::fmt;
use std::str::FromStr;

use crate::atoms::{Atom, AtomSet};
use crate::error::{Error, Result};
use crate::isets::{extract_isets, reconstruct_tuple, ISetName};
use crate::program::ProgramTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// Replace an atom of a non-empty set by a fresh atom.
    Replace,
    /// Delete an atom from a set of more than two atoms.
    Delete,
    /// Delete an atom from a set of one or two atoms.
    Reduce,
    /// Add a fresh atom to a set of at least two atoms.
    Add,
    /// Add a fresh atom to a set of at most one atom.
    Extend,
}

impl TransformKind {
    pub const ALL: [TransformKind; 5] = [
        TransformKind::Replace,
        TransformKind::Delete,
        TransformKind::Reduce,
        TransformKind::Add,
        TransformKind::Extend,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TransformKind::Replace => "S-RP",
            TransformKind::Delete => "S-DL",
            TransformKind::Reduce => "S-RD",
            TransformKind::Add => "S-AD",
            TransformKind::Extend => "S-EX",
        }
    }

    /// Whether the operation needs an atom of the set, and whether it needs a fresh one.
    pub fn operands(self) -> (bool, bool) {
        match self {
            TransformKind::Replace => (true, true),
            TransformKind::Delete | TransformKind::Reduce => (true, false),
            TransformKind::Add | TransformKind::Extend => (false, true),
        }
    }

    /// Checks the size guard for a set of `size` atoms.
    pub fn guard(self, name: u32, size: usize) -> Result<()> {
        let ok = match self {
            TransformKind::Replace => size > 0,
            TransformKind::Delete => size > 2,
            TransformKind::Reduce => size > 0 && size <= 2,
            TransformKind::Add => size >= 2,
            TransformKind::Extend => size <= 1,
        };
        if ok {
            return Ok(());
        }
        Err(match self {
            TransformKind::Replace => Error::ReplaceOnEmpty { name },
            TransformKind::Delete => Error::DeleteTooSmall { name, size },
            TransformKind::Reduce => Error::ReduceSize { name, size },
            TransformKind::Add => Error::AddTooSmall { name, size },
            TransformKind::Extend => Error::ExtendTooLarge { name, size },
        })
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TransformKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "s-rp" | "rp" => Ok(TransformKind::Replace),
            "s-dl" | "dl" => Ok(TransformKind::Delete),
            "s-rd" | "rd" => Ok(TransformKind::Reduce),
            "s-ad" | "ad" => Ok(TransformKind::Add),
            "s-ex" | "ex" => Ok(TransformKind::Extend),
            other => Err(format!("unknown transformation `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PreservationClass {
    pub se_preserving: bool,
    pub nse_preserving: bool,
}

/// Preservation of (non-)equivalence, the same for ASP and LP^MLN. S-RD and
/// S-EX split on the size of the set before the edit.
pub fn preservation_class(kind: TransformKind, size_before: usize) -> Result<PreservationClass> {
    kind.guard(0, size_before)
        .map_err(|_| Error::PreservationGuard {
            kind: kind.label().to_string(),
            size: size_before,
        })?;
    let (se, nse) = match (kind, size_before) {
        (TransformKind::Replace | TransformKind::Delete | TransformKind::Add, _) => (true, true),
        (TransformKind::Reduce, 2) => (true, false),
        (TransformKind::Reduce, _) => (false, false),
        (TransformKind::Extend, 1) => (false, true),
        (TransformKind::Extend, _) => (false, false),
    };
    Ok(PreservationClass {
        se_preserving: se,
        nse_preserving: nse,
    })
}

/// Applies `kind` to the independent set `name` of `t` and rebuilds the tuple.
pub fn apply_transform(
    t: &ProgramTuple,
    kind: TransformKind,
    name: ISetName,
    atom: Option<Atom>,
    fresh: Option<Atom>,
) -> Result<ProgramTuple> {
    if name.n_rules() != t.n_rules() {
        return Err(Error::NameOutOfRange {
            name: name.value() as u64,
            n_rules: t.n_rules(),
        });
    }
    let mut assignment = extract_isets(t)?;
    let set = assignment.get(name.value());
    kind.guard(name.value(), set.len())?;

    let (needs_atom, needs_fresh) = kind.operands();
    let mut next = set;
    if needs_atom {
        let a = atom.ok_or(Error::MissingOperand("an atom of the independent set"))?;
        if !set.contains(a) {
            return Err(Error::AtomNotInSet {
                atom: format!("#{}", a.0),
                name: name.value(),
            });
        }
        next.remove(a);
    }
    if needs_fresh {
        let x = fresh.ok_or(Error::MissingOperand("a fresh atom"))?;
        if t.atoms().contains(x) {
            return Err(Error::FreshAtomInUse(format!("#{}", x.0)));
        }
        next.insert(x);
    }
    assignment.set(name, next)?;
    reconstruct_tuple(t.segment_sizes(), &assignment)
}

/// The smallest atom id not used by `t`.
pub fn next_fresh(t: &ProgramTuple) -> Atom {
    Atom(t.atoms().span() as u32)
}

/// Atoms of `name`'s set in `t`.
pub fn iset_of(t: &ProgramTuple, name: ISetName) -> Result<AtomSet> {
    Ok(extract_isets(t)?.get(name.value()))
}
