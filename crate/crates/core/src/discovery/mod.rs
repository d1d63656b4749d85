//! Discovery of k-m-n SE-conditions.
//!
//! A condition is verified on its canonical tuple `⟨K, M, N⟩` by checking
//! `K ∪ M ≡ K ∪ N` under LP^MLN, then generalized by dropping every singleton
//! whose extension by a fresh atom keeps the pair equivalent.

mod checkpoint;
pub mod report;
pub mod space;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use crate::atoms::{Atom, MAX_ATOMS};
use crate::condition::{canonical_tuple, ISCondition, Shape};
use crate::error::{Error, Result};
use crate::isets::{ISetName, LocalClass};
use crate::program::Rule;
use crate::semantics::{symbolic, Semantics};
use crate::transform::{apply_transform, TransformKind};

pub use report::{Algorithm, Counts, LayerStats, Mode, SearchReport, Stats};
pub use space::Subspace;

use checkpoint::Checkpoint;
use space::{bits, bounded_subsets, subset};

/// Largest name universe the basic algorithm will enumerate subsets of.
pub const BASIC_MAX_NAMES: usize = 20;
/// Hard limit on layers, whatever `max_layer` says.
pub const LAYER_HARD_CAP: usize = 40;

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Worker threads; `None` uses one per logical core.
    pub jobs: Option<usize>,
    /// Stop after this layer even if the search has not terminated.
    pub max_layer: Option<usize>,
    /// Drop names with a local 5 digit; defaults to `k + m + n > 2`.
    pub drop_i5: Option<bool>,
    /// Append-only progress file for the layered search.
    pub checkpoint: Option<PathBuf>,
    /// Let the basic algorithm range over `IS′` instead of `IS`.
    pub basic_over_base: bool,
}

impl Options {
    fn drop_i5(&self, shape: Shape) -> bool {
        self.drop_i5.unwrap_or(shape.n_rules() > 2)
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            builder = builder.num_threads(j.max(1));
        }
        builder
            .build()
            .map_err(|e| Error::Checkpoint(format!("cannot start worker pool: {e}")))
    }
}

/// A single rule is semi-strongly equivalent to the empty program iff one of
/// `I_3`, `I_6`, `I_7` is non-empty or `I_4` is empty.
pub fn is_semi_valid(r: &Rule) -> bool {
    let u = r.atoms();
    let nonempty = |i: u8| !LocalClass(i).region(r, u).is_empty();
    nonempty(3) || !nonempty(4) || nonempty(6) || nonempty(7)
}

/// `IS′`: names with no local 3, 6 or 7 digit, and no 5 digit when `drop_i5`.
pub fn base_name_universe(shape: Shape, drop_i5: bool) -> Vec<u32> {
    let n = shape.n_rules();
    shape
        .names()
        .filter(|&name| {
            (0..n).all(|r| {
                let d = shape.local(name, r);
                !matches!(d, 3 | 6 | 7) && !(drop_i5 && d == 5)
            })
        })
        .collect()
}

/// Some rule has no non-empty head-only set, so that rule is semi-valid.
pub fn sic2_excluded(c: &ISCondition) -> bool {
    let shape = c.shape();
    (0..shape.n_rules()).any(|r| c.nis().iter().all(|&name| shape.local(name, r) != 4))
}

/// Singletons of `c` that must stay singletons, or `None` if `c` is not an
/// SE-condition.
fn generalize(c: &ISCondition) -> Result<Option<Vec<u32>>> {
    let shape = c.shape();
    let atoms = c.canonical_atom_count();
    if atoms + 1 > MAX_ATOMS {
        return Err(Error::EnumerationCap {
            atoms: atoms + 1,
            cap: MAX_ATOMS,
        });
    }
    let t = canonical_tuple(c);
    let (p, q) = shape.programs(&t);
    if !symbolic::equivalent(&p, &q, Semantics::Lpmln) {
        return Ok(None);
    }
    let fresh = Atom(atoms as u32);
    let mut kept = Vec::new();
    for &k in c.sis() {
        let name = ISetName::new(k as u64, shape.n_rules())?;
        let ext = apply_transform(&t, TransformKind::Extend, name, None, Some(fresh))?;
        let (p, q) = shape.programs(&ext);
        if !symbolic::equivalent(&p, &q, Semantics::Lpmln) {
            kept.push(k);
        }
    }
    Ok(Some(kept))
}

/// Verifies the condition `(is_n, is_s)` and returns its most general form.
pub fn verify_and_compute_mgse(
    shape: Shape,
    is_n: &[u32],
    is_s: &[u32],
) -> Result<Option<ISCondition>> {
    let c = ISCondition::new(shape, is_n.iter().copied(), is_s.iter().copied())?;
    Ok(generalize(&c)?
        .map(|kept| ISCondition::new(shape, is_n.iter().copied(), kept).expect("kept ⊆ sis")))
}

/// Adds a failed singleton condition, keeping the set minimal under `⊂`.
pub fn mnse_insert_minimal(mnse: &mut Vec<ISCondition>, c: ISCondition) {
    let below = |a: &ISCondition, b: &ISCondition| a.nis().iter().all(|x| b.is_nonempty(*x));
    if mnse.iter().any(|m| below(m, &c)) {
        return;
    }
    mnse.retain(|m| !below(&c, m));
    mnse.push(c);
}

fn insert_minimal_mask(mnse: &mut Vec<u64>, c: u64) {
    if mnse.iter().any(|&m| subset(m, c)) {
        return;
    }
    mnse.retain(|&m| !subset(c, m));
    mnse.push(c);
}

/// Names of an indexed alphabet.
struct Alphabet {
    shape: Shape,
    names: Vec<u32>,
}

impl Alphabet {
    fn mask_names(&self, mask: u64) -> Vec<u32> {
        bits(mask).map(|b| self.names[b as usize]).collect()
    }

    fn mask_of(&self, names: &[u32]) -> Result<u64> {
        names.iter().try_fold(0u64, |acc, n| {
            let i = self.names.iter().position(|x| x == n).ok_or_else(|| {
                Error::Checkpoint(format!("name {n} is not in the search alphabet"))
            })?;
            Ok(acc | 1 << i)
        })
    }

    fn singleton(&self, mask: u64) -> ISCondition {
        ISCondition::singleton(self.shape, self.mask_names(mask)).expect("alphabet names are valid")
    }

    fn condition(&self, nis: u64, sis: u64) -> ISCondition {
        ISCondition::new(self.shape, self.mask_names(nis), self.mask_names(sis))
            .expect("alphabet names are valid")
    }

    /// Verifies a singleton condition; `Some(retained singletons)` on success.
    fn verify(&self, mask: u64) -> Result<Option<u64>> {
        match generalize(&self.singleton(mask))? {
            None => Ok(None),
            Some(kept) => Ok(Some(self.mask_of(&kept)?)),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    alphabet: &Alphabet,
    mode: Mode,
    algorithm: Algorithm,
    mgic: &[(u64, u64)],
    mnse: &[u64],
    tr: usize,
    partial: bool,
    stats: Stats,
    started: Instant,
) -> SearchReport {
    let mut mgic: Vec<ISCondition> = mgic
        .iter()
        .map(|&(n, s)| alphabet.condition(n, s))
        .collect();
    mgic.sort();
    mgic.dedup();
    let mut mnse: Vec<ISCondition> = mnse.iter().map(|&m| alphabet.singleton(m)).collect();
    mnse.sort();
    let max_nse = mnse.iter().map(|c| c.sis().len()).max().unwrap_or(0);
    SearchReport {
        shape: alphabet.shape,
        mode,
        algorithm,
        mgic,
        mnse,
        tr,
        max_nse,
        partial,
        stats,
        elapsed: started.elapsed(),
    }
}

/// Verifies every subset of the name universe, each read as a singleton condition.
pub fn discover_basic(shape: Shape, opts: &Options) -> Result<SearchReport> {
    let started = Instant::now();
    let names = if opts.basic_over_base {
        base_name_universe(shape, opts.drop_i5(shape))
    } else {
        shape.names().collect()
    };
    if names.len() > BASIC_MAX_NAMES {
        return Err(Error::SearchSpaceTooLarge {
            names: names.len(),
            what: "the basic algorithm",
        });
    }
    let alphabet = Alphabet { shape, names };
    let n = alphabet.names.len();
    let masks: Vec<u64> = (0..1u64 << n).collect();
    let results: Vec<Result<Option<u64>>> = opts
        .pool()?
        .install(|| masks.par_iter().map(|&m| alphabet.verify(m)).collect());

    let mut mgic = Vec::new();
    let mut mnse = Vec::new();
    let mut layers: Vec<LayerStats> = (0..=n)
        .map(|layer| LayerStats {
            layer,
            candidates: 0,
            assumed: 0,
            se: 0,
            nse: 0,
        })
        .collect();
    for (&mask, res) in masks.iter().zip(results) {
        let layer = &mut layers[mask.count_ones() as usize];
        layer.candidates += 1;
        match res? {
            Some(kept) => {
                layer.se += 1;
                mgic.push((mask, kept));
            }
            None => {
                layer.nse += 1;
                insert_minimal_mask(&mut mnse, mask);
            }
        }
    }
    let stats = Stats {
        names: shape.name_count() as usize,
        base_names: opts.basic_over_base.then_some(n),
        viable_names: None,
        verified: masks.len(),
        layers,
    };
    Ok(finish(
        &alphabet,
        Mode::Sound,
        Algorithm::Basic,
        &mgic,
        &mnse,
        n,
        false,
        stats,
        started,
    ))
}

struct Layered {
    alphabet: Alphabet,
    /// Names with a local 4 digit somewhere.
    is4: u64,
    is4bar: u64,
    /// Per rule, names with local 4 at that rule.
    cover: Vec<u64>,
}

impl Layered {
    fn new(shape: Shape, viable: Vec<u32>) -> Result<Self> {
        if viable.len() > 64 {
            return Err(Error::SearchSpaceTooLarge {
                names: viable.len(),
                what: "the layered search (at most 64 viable names)",
            });
        }
        let n = shape.n_rules();
        let mut cover = vec![0u64; n];
        for (i, &name) in viable.iter().enumerate() {
            for (r, c) in cover.iter_mut().enumerate() {
                if shape.local(name, r) == 4 {
                    *c |= 1 << i;
                }
            }
        }
        let is4 = cover.iter().fold(0, |a, c| a | c);
        let all = if viable.len() == 64 {
            u64::MAX
        } else {
            (1u64 << viable.len()) - 1
        };
        Ok(Layered {
            alphabet: Alphabet {
                shape,
                names: viable,
            },
            is4,
            is4bar: all & !is4,
            cover,
        })
    }

    /// Head-only sets cover every rule.
    fn covers(&self, isl: u64) -> bool {
        self.cover.iter().all(|&c| c & isl != 0)
    }

    /// Layer-`i` subspaces built from the I-4 part, before pruning.
    pub fn subspaces(&self, i: usize, mnse: &[u64]) -> Vec<Subspace> {
        bounded_subsets(self.is4, i, mnse)
            .into_iter()
            .filter(|&isl| self.covers(isl))
            .map(|isl| Subspace::new(isl, self.is4bar, i - isl.count_ones() as usize))
            .filter(|sp| !sp.is_empty())
            .collect()
    }

    /// Layer-`i` conditions that survive pruning against `mnse`.
    fn candidates(&self, i: usize, mnse: &[u64]) -> Vec<u64> {
        self.subspaces(i, mnse)
            .iter()
            .flat_map(|sp| sp.conditions_avoiding(mnse))
            .collect()
    }
}

/// Layers computed so far.
struct Progress {
    mgic: Vec<(u64, u64)>,
    mnse: Vec<u64>,
    layers: Vec<LayerStats>,
    terminated: bool,
}

fn filter_viable(shape: Shape, base: &[u32], pool: &rayon::ThreadPool) -> Result<Vec<u32>> {
    let verdicts: Vec<Result<bool>> = pool.install(|| {
        base.par_iter()
            .map(|&x| {
                let c = ISCondition::singleton(shape, [x])?;
                Ok(generalize(&c)?.is_some())
            })
            .collect()
    });
    let mut viable = Vec::new();
    for (&x, ok) in base.iter().zip(verdicts) {
        if ok? {
            viable.push(x);
        }
    }
    Ok(viable)
}

fn discover_layered(shape: Shape, mode: Mode, opts: &Options) -> Result<SearchReport> {
    let started = Instant::now();
    let pool = opts.pool()?;
    let drop_i5 = opts.drop_i5(shape);
    let base = base_name_universe(shape, drop_i5);

    let mut ckpt = match &opts.checkpoint {
        Some(path) => Some(Checkpoint::open(path, shape, mode, drop_i5)?),
        None => None,
    };
    let viable = match ckpt.as_ref().and_then(|c| c.viable.clone()) {
        Some(v) => v,
        None => {
            let v = filter_viable(shape, &base, &pool)?;
            if let Some(c) = ckpt.as_mut() {
                c.write_header(&v)?;
            }
            v
        }
    };
    let search = Layered::new(shape, viable)?;
    let mut progress = Progress {
        mgic: Vec::new(),
        mnse: Vec::new(),
        layers: Vec::new(),
        terminated: false,
    };
    if let Some(c) = &ckpt {
        for entry in &c.layers {
            progress.layers.push(entry.stats.clone());
            for m in &entry.mgic {
                let nis = search.alphabet.mask_of(m.nis())?;
                let sis = search.alphabet.mask_of(m.sis())?;
                progress.mgic.push((nis, sis));
            }
            for m in &entry.mnse {
                insert_minimal_mask(&mut progress.mnse, search.alphabet.mask_of(m.nis())?);
            }
            progress.terminated = entry.stats.se == 0;
        }
    }

    let n_viable = search.alphabet.names.len();
    let last = opts
        .max_layer
        .unwrap_or(n_viable)
        .min(n_viable)
        .min(LAYER_HARD_CAP);
    let verified_layers = shape.n_rules();
    // SIS for the conjectural layers: singletons kept by layer-2 conditions.
    let sis_pool = |mgic: &[(u64, u64)]| {
        mgic.iter()
            .filter(|(n, _)| n.count_ones() == 2)
            .fold(0u64, |acc, (_, s)| acc | s)
    };

    let mut layer = progress.layers.len() + 1;
    while !progress.terminated && layer <= last {
        let cands = search.candidates(layer, &progress.mnse);
        let assume = mode == Mode::Conjectural && layer > verified_layers;
        let mut stats = LayerStats {
            layer,
            candidates: cands.len(),
            assumed: 0,
            se: 0,
            nse: 0,
        };
        let mut mgic_delta = Vec::new();
        let mut mnse_delta = Vec::new();
        if assume {
            let sis = sis_pool(&progress.mgic);
            stats.assumed = cands.len();
            stats.se = cands.len();
            mgic_delta.extend(cands.iter().map(|&c| (c, c & sis)));
        } else {
            let results: Vec<Result<Option<u64>>> = pool.install(|| {
                cands
                    .par_iter()
                    .map(|&c| search.alphabet.verify(c))
                    .collect()
            });
            for (&c, res) in cands.iter().zip(results) {
                match res? {
                    Some(kept) => {
                        stats.se += 1;
                        mgic_delta.push((c, kept));
                    }
                    None => {
                        stats.nse += 1;
                        mnse_delta.push(c);
                    }
                }
            }
        }
        for &m in &mnse_delta {
            insert_minimal_mask(&mut progress.mnse, m);
        }
        progress.mgic.extend_from_slice(&mgic_delta);
        progress.terminated = stats.se == 0;
        if let Some(c) = ckpt.as_mut() {
            let mgic: Vec<ISCondition> = mgic_delta
                .iter()
                .map(|&(n, s)| search.alphabet.condition(n, s))
                .collect();
            let mnse: Vec<ISCondition> = mnse_delta
                .iter()
                .map(|&m| search.alphabet.singleton(m))
                .collect();
            c.write_layer(&stats, &mgic, &mnse)?;
        }
        progress.layers.push(stats);
        layer += 1;
    }

    let tr = progress.layers.last().map_or(0, |l| l.layer);
    let candidates: usize = progress
        .layers
        .iter()
        .map(|l| l.candidates - l.assumed)
        .sum();
    let stats = Stats {
        names: shape.name_count() as usize,
        base_names: Some(base.len()),
        viable_names: Some(n_viable),
        verified: base.len() + candidates,
        layers: progress.layers,
    };
    let partial = !progress.terminated && tr < n_viable;
    let mut report = finish(
        &search.alphabet,
        mode,
        Algorithm::Layered,
        &progress.mgic,
        &progress.mnse,
        tr,
        partial,
        stats,
        started,
    );
    // singletons dropped by the filter are minimal failures too
    for &x in base.iter().filter(|x| !search.alphabet.names.contains(x)) {
        report.mnse.push(ISCondition::singleton(shape, [x])?);
    }
    report.mnse.sort();
    report.max_nse = report.mnse.iter().map(|c| c.sis().len()).max().unwrap_or(0);
    Ok(report)
}

/// Filtered, layered search with pruning and early termination. Problems of
/// at most one rule have no head-only coverage to exploit and go through the
/// basic algorithm.
pub fn discover_improved(shape: Shape, opts: &Options) -> Result<SearchReport> {
    if shape.n_rules() <= 1 {
        return discover_basic(shape, opts);
    }
    discover_layered(shape, Mode::Sound, opts)
}

/// Like [`discover_improved`] but verifies only layers up to `k + m + n`; every
/// deeper unpruned condition is taken to be an SE-condition. Relies on
/// observed, unproven regularities of the verified problems.
pub fn discover_conjectural(shape: Shape, opts: &Options) -> Result<SearchReport> {
    if shape.n_rules() <= 1 {
        let mut report = discover_basic(shape, opts)?;
        report.mode = Mode::Conjectural;
        return Ok(report);
    }
    discover_layered(shape, Mode::Conjectural, opts)
}

pub fn discover(shape: Shape, basic: bool, mode: Mode, opts: &Options) -> Result<SearchReport> {
    match (basic, mode) {
        (true, Mode::Sound) => discover_basic(shape, opts),
        (true, Mode::Conjectural) => {
            let mut r = discover_basic(shape, opts)?;
            r.mode = Mode::Conjectural;
            Ok(r)
        }
        (false, Mode::Sound) => discover_improved(shape, opts),
        (false, Mode::Conjectural) => discover_conjectural(shape, opts),
    }
}
