//! Checks shared by the module suites and the acceptance report. Each one
//! panics on the first violation and otherwise returns how many cases it saw.

use isets::discovery::{discover_improved, Options};
use isets::semantics::{equivalent, ht_pairs, ht_satisfies, stable_models, symbolic};
use isets::transform::{iset_of, next_fresh};
use isets::{
    apply_transform, canonical_tuple, concat_tuple, extract_isets, parse_program,
    reconstruct_tuple, render_program, AtomSet, HtInterpretation, ISCondition, ISetName, Limits,
    LocalClass, Program, ProgramTuple, Rule, Semantics, Shape, SymbolTable, TransformKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{all_rules, atoms};

fn random_set(atoms: usize, rng: &mut ChaCha8Rng) -> AtomSet {
    AtomSet(rng.gen_range(0..1u128 << atoms))
}

fn random_tuple(atoms: usize, rng: &mut ChaCha8Rng) -> ProgramTuple {
    let sizes: Vec<usize> = (0..rng.gen_range(1..=3))
        .map(|_| rng.gen_range(0..=2))
        .collect();
    let rules = (0..sizes.iter().sum())
        .map(|_| {
            Rule::new(
                random_set(atoms, rng),
                random_set(atoms, rng),
                random_set(atoms, rng),
            )
        })
        .collect();
    ProgramTuple::from_parts(rules, sizes).unwrap()
}

/// Extracting the independent sets of random tuples and rebuilding gives the
/// same tuple back.
pub fn round_trips(count: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < count {
        let t = random_tuple(5, &mut rng);
        if t.n_rules() == 0 {
            continue;
        }
        let a = extract_isets(&t).unwrap();
        assert_eq!(reconstruct_tuple(t.segment_sizes(), &a).unwrap(), t);
        done += 1;
    }
    done
}

/// Adding a fresh atom to the there-part, or to both parts, of an HT-model of
/// a rule keeps it a model.
pub fn fresh_atom_closure(n: usize) -> usize {
    let universe = AtomSet::prefix(n);
    let fresh = atoms(&[n as u32]);
    let mut cases = 0;
    for r in all_rules(n) {
        for sem in Semantics::ALL {
            for i in ht_pairs(universe).filter(|i| ht_satisfies(i, &r, sem)) {
                for j in [
                    HtInterpretation::new(i.here(), i.there().union(fresh)).unwrap(),
                    HtInterpretation::new(i.here().union(fresh), i.there().union(fresh)).unwrap(),
                ] {
                    assert!(ht_satisfies(&j, &r, sem), "{r:?} {sem} {j:?}");
                    cases += 1;
                }
            }
        }
    }
    cases
}

fn without(r: &Rule, a: AtomSet) -> Rule {
    Rule::new(
        r.head.difference(a),
        r.pbody.difference(a),
        r.nbody.difference(a),
    )
}

/// How deleting `a` from a set of local class `digit` in `r` relates the
/// LP^MLN satisfaction of `r` and of the reduced rule at `(x, y)`, `a ∉ y`.
pub fn row_holds(r: &Rule, digit: u8, a: AtomSet, x: AtomSet, y: AtomSet) -> bool {
    let sem = Semantics::Lpmln;
    let at = |x: AtomSet, y: AtomSet| ht_satisfies(&HtInterpretation::new(x, y).unwrap(), r, sem);
    let xy = at(x, y);
    let x_y1 = at(x, y.union(a));
    let x1_y1 = at(x.union(a), y.union(a));
    let reduced = ht_satisfies(&HtInterpretation::new(x, y).unwrap(), &without(r, a), sem);
    match digit {
        0 => reduced == xy && reduced == x_y1 && reduced == x1_y1,
        1 | 5 => reduced == xy && x_y1 && x1_y1,
        2 => xy && x_y1 && reduced == x1_y1,
        4 => reduced == xy && (!x_y1 || reduced) && x1_y1,
        _ => reduced && xy && x_y1 && x1_y1,
    }
}

/// Every single rule over `n` atoms, every class with at least three atoms.
pub fn deletion_table(n: usize) -> usize {
    let universe = AtomSet::prefix(n);
    let mut cases = 0;
    for r in all_rules(n) {
        for digit in 1..=7u8 {
            let set = LocalClass(digit).region(&r, r.atoms());
            if set.len() < 3 {
                continue;
            }
            for a in set.iter() {
                let a = AtomSet::singleton(a);
                for i in ht_pairs(universe.difference(a)) {
                    assert!(
                        row_holds(&r, digit, a, i.here(), i.there()),
                        "{r:?} class {digit} {i:?}"
                    );
                    cases += 1;
                }
            }
        }
    }
    // atoms outside the rule behave as class 0
    let outside = atoms(&[n as u32]);
    for r in all_rules(n - 1) {
        for i in ht_pairs(AtomSet::prefix(n)) {
            assert!(row_holds(&r, 0, outside, i.here(), i.there()));
            cases += 1;
        }
    }
    cases
}

fn verdict(shape: Shape, t: &ProgramTuple) -> bool {
    let (p, q) = shape.programs(t);
    symbolic::equivalent(&p, &q, Semantics::Lpmln)
}

/// Applies every edit whose class preserves `expected` to each non-empty set
/// of the canonical tuple of `c`. Sets of size one or two are first grown to
/// three by S-EX or S-AD so that S-AD and S-DL apply.
fn preserved(c: &ISCondition, expected: bool) -> usize {
    let shape = c.shape();
    let t = canonical_tuple(c);
    assert_eq!(verdict(shape, &t), expected, "{c}");
    let fresh = |t: &ProgramTuple| Some(next_fresh(t));
    let mut edits = 0;
    for &k in c.nis() {
        let name = ISetName::new(k as u64, shape.n_rules()).unwrap();
        let set = iset_of(&t, name).unwrap();
        let first = set.first();
        let mut check = |t2: ProgramTuple| {
            assert_eq!(verdict(shape, &t2), expected, "{c} after editing I_{k}");
            edits += 1;
            t2
        };
        check(apply_transform(&t, TransformKind::Replace, name, first, fresh(&t)).unwrap());
        let grown = if set.len() == 1 {
            if expected {
                continue;
            }
            check(apply_transform(&t, TransformKind::Extend, name, None, fresh(&t)).unwrap())
        } else {
            if expected {
                check(apply_transform(&t, TransformKind::Reduce, name, first, None).unwrap());
            }
            t.clone()
        };
        let big =
            check(apply_transform(&grown, TransformKind::Add, name, None, fresh(&grown)).unwrap());
        check(apply_transform(&big, TransformKind::Delete, name, first, None).unwrap());
    }
    edits
}

/// SE-tuples stay SE and NSE-tuples stay NSE under the edits that preserve them.
pub fn preservation(mgic: &[ISCondition], mnse: &[ISCondition]) -> usize {
    mgic.iter().map(|c| preserved(c, true)).sum::<usize>()
        + mnse.iter().map(|c| preserved(c, false)).sum::<usize>()
}

fn named(syms: &SymbolTable, names: &[&str]) -> AtomSet {
    names.iter().map(|n| syms.lookup(n).unwrap()).collect()
}

fn pair(syms: &SymbolTable, here: &[&str], there: &[&str]) -> HtInterpretation {
    HtInterpretation::new(named(syms, here), named(syms, there)).unwrap()
}

/// `a | c :- b, c.` is equivalent to nothing, but dropping `c` from `I_6`
/// gives `a :- b.`, which `({b}, {a, b})` separates from nothing.
pub fn singleton_reduction_breaks() {
    let lim = Limits::default();
    let mut syms = SymbolTable::new();
    let r = parse_program("a | c :- b, c.", &mut syms).unwrap();
    let empty = Program::default();
    assert!(
        equivalent(&r, &empty, Semantics::Lpmln, &lim)
            .unwrap()
            .equivalent
    );
    let t = concat_tuple(&[r]).unwrap();
    let name = ISetName::new(6, 1).unwrap();
    let c = syms.lookup("c").unwrap();
    assert_eq!(iset_of(&t, name).unwrap(), AtomSet::singleton(c));
    let reduced = apply_transform(&t, TransformKind::Reduce, name, Some(c), None).unwrap();
    let p = &reduced.programs()[0];
    assert_eq!(render_program(p, &syms), "a :- b.\n");
    assert!(
        !equivalent(p, &empty, Semantics::Lpmln, &lim)
            .unwrap()
            .equivalent
    );
    assert!(!ht_satisfies(
        &pair(&syms, &["b"], &["a", "b"]),
        &p.rules[0],
        Semantics::Lpmln
    ));
}

/// `⟨a | b., b.⟩` is separated by `({a}, {a, b})`; dropping `a` from `I_32`
/// makes the two programs equal.
pub fn singleton_reduction_restores() {
    let lim = Limits::default();
    let mut syms = SymbolTable::new();
    let p = parse_program("a | b.", &mut syms).unwrap();
    let q = parse_program("b.", &mut syms).unwrap();
    assert!(
        !equivalent(&p, &q, Semantics::Lpmln, &lim)
            .unwrap()
            .equivalent
    );
    let w = pair(&syms, &["a"], &["a", "b"]);
    assert!(ht_satisfies(&w, &p.rules[0], Semantics::Lpmln));
    assert!(!ht_satisfies(&w, &q.rules[0], Semantics::Lpmln));

    let t = concat_tuple(&[p, q]).unwrap();
    let name = ISetName::new(32, 2).unwrap();
    assert_eq!(iset_of(&t, name).unwrap(), named(&syms, &["a"]));
    let reduced = apply_transform(&t, TransformKind::Reduce, name, syms.lookup("a"), None).unwrap();
    let parts = reduced.programs();
    assert_eq!(render_program(&parts[0], &syms), "b.\n");
    assert!(
        equivalent(&parts[0], &parts[1], Semantics::Lpmln, &lim)
            .unwrap()
            .equivalent
    );
}

/// `{a | c. b.}` and `{a | b | c. a | c :- b. b :- a, c.}` are separated by
/// `({a}, {a, b})`; their only sets are `I_16674 = {a, c}` and
/// `I_2324 = {b}`, and dropping `c` from `I_16674` makes them equivalent.
pub fn pair_reduction() {
    let lim = Limits::default();
    let mut syms = SymbolTable::new();
    let p = parse_program("a | c.\nb.\n", &mut syms).unwrap();
    let q = parse_program("a | b | c.\na | c :- b.\nb :- a, c.\n", &mut syms).unwrap();
    let v = equivalent(&p, &q, Semantics::Lpmln, &lim).unwrap();
    assert!(!v.equivalent);
    assert_eq!(v.witness, Some(pair(&syms, &["a"], &["a", "b"])));

    let t = concat_tuple(&[p, q]).unwrap();
    let a = extract_isets(&t).unwrap();
    assert_eq!(a.names(), [2324, 16674]);
    assert_eq!(a.get(16674), named(&syms, &["a", "c"]));
    assert_eq!(a.get(2324), named(&syms, &["b"]));

    let name = ISetName::new(16674, 5).unwrap();
    let reduced = apply_transform(&t, TransformKind::Reduce, name, syms.lookup("c"), None).unwrap();
    let parts = reduced.programs();
    assert_eq!(render_program(&parts[0], &syms), "a.\nb.\n");
    assert_eq!(
        render_program(&parts[1], &syms),
        "a | b.\na :- b.\nb :- a.\n"
    );
    assert!(
        equivalent(&parts[0], &parts[1], Semantics::Lpmln, &lim)
            .unwrap()
            .equivalent
    );
}

/// Equivalent pairs taken from canonical tuples of discovered conditions with
/// at most `max_atoms` atoms, sampled down to `count`.
pub fn equivalent_pairs(
    sem: Semantics,
    max_atoms: usize,
    count: usize,
    seed: u64,
) -> Vec<(Program, Program)> {
    let mut pairs = Vec::new();
    for shape in [[0, 1, 1], [1, 1, 0], [0, 2, 1]] {
        let shape = Shape::new(shape[0], shape[1], shape[2]).unwrap();
        let report = discover_improved(shape, &Options::default()).unwrap();
        for c in &report.mgic {
            if c.canonical_atom_count() > max_atoms {
                continue;
            }
            let (p, q) = shape.programs(&canonical_tuple(c));
            let (p, q) = (Program::new(p), Program::new(q));
            if equivalent(&p, &q, sem, &Limits::default())
                .unwrap()
                .equivalent
            {
                pairs.push((p, q));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while pairs.len() > count {
        pairs.swap_remove(rng.gen_range(0..pairs.len()));
    }
    pairs
}

/// Every single rule over each pair of atoms of `universe`, then `random`
/// programs of one to three rules.
fn extensions(universe: AtomSet, random: usize, rng: &mut ChaCha8Rng) -> Vec<Program> {
    let ids: Vec<u32> = universe.iter().map(|a| a.0).collect();
    let mut out = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i..] {
            let both: Vec<u32> = if a == b { vec![a] } else { vec![a, b] };
            let spread = |s: AtomSet| -> AtomSet {
                both.iter()
                    .enumerate()
                    .filter(|(k, _)| s.0 >> k & 1 == 1)
                    .map(|(_, &x)| isets::Atom(x))
                    .collect()
            };
            for r in all_rules(both.len()) {
                out.push(Program::new([Rule::new(
                    spread(r.head),
                    spread(r.pbody),
                    spread(r.nbody),
                )]));
            }
        }
    }
    let pick = |rng: &mut ChaCha8Rng| -> AtomSet {
        ids.iter()
            .filter(|_| rng.gen_bool(0.3))
            .map(|&i| isets::Atom(i))
            .collect()
    };
    for _ in 0..random {
        let n = rng.gen_range(1..=3);
        out.push(Program::new(
            (0..n).map(|_| Rule::new(pick(rng), pick(rng), pick(rng))),
        ));
    }
    out
}

/// Equivalent programs keep the same stable models under every extension.
pub fn stable_model_oracle(pairs: &[(Program, Program)], sem: Semantics, seed: u64) -> usize {
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for (p, q) in pairs {
        let universe = p.atoms().union(q.atoms());
        for r in extensions(universe, 100, &mut rng) {
            let left = stable_models(&p.union(&r), sem, universe, &lim).unwrap();
            let right = stable_models(&q.union(&r), sem, universe, &lim).unwrap();
            assert_eq!(left, right, "{sem}: {p:?} vs {q:?} under {r:?}");
            checked += 1;
        }
    }
    checked
}
