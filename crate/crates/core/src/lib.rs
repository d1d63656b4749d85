//! Strong and semi-strong equivalence of ground ASP and LP^MLN programs, and
//! automatic discovery of syntactic equivalence conditions for k-m-n problems.

pub mod atoms;
pub mod condition;
pub mod discovery;
pub mod error;
pub mod isets;
pub mod program;
pub mod regress;
pub mod semantics;
pub mod simplify;
pub mod syntax;
pub mod transform;

pub use atoms::{Atom, AtomSet, Interpretation, SymbolTable};
pub use condition::{canonical_tuple, relation, ISCondition, Relation, Shape};
pub use discovery::{
    discover, discover_basic, discover_conjectural, discover_improved, Mode, SearchReport,
};
pub use error::{Error, Result};
pub use isets::{
    classify_locals, extract_isets, locals_from_name, name_from_locals, reconstruct_tuple,
    ISAssignment, ISetName, LocalClass,
};
pub use program::{atoms_of, concat_tuple, Program, ProgramTuple, Rule};
pub use semantics::{HtInterpretation, Limits, Semantics, Verdict};
pub use simplify::{simplify, Simplified, SimplifiedCondition};
pub use syntax::{parse_program, render_program, ParseError};
pub use transform::{apply_transform, preservation_class, PreservationClass, TransformKind};
