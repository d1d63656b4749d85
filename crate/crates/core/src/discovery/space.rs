//! Search subspaces over an indexed name alphabet.
//!
//! Names are referred to by their position in a fixed list (at most 64), so a
//! set of names is a `u64` mask.

use serde::{Deserialize, Serialize};

#[inline]
pub(crate) fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Conditions `fixed ∪ R` with `R ⊆ free` and `|R| = budget`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    pub fixed: u64,
    pub free: u64,
    pub budget: usize,
}

impl Subspace {
    pub fn new(fixed: u64, free: u64, budget: usize) -> Self {
        debug_assert_eq!(fixed & free, 0);
        Subspace {
            fixed,
            free,
            budget,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.budget > self.free.count_ones() as usize
    }

    /// Removes every condition containing `nse`. Conditions that keep only a
    /// proper part `L` of `nse − fixed` move into `⟨fixed ∪ L, free − (nse − fixed), budget − |L|⟩`.
    pub fn split(&self, nse: u64) -> Vec<Subspace> {
        let missing = nse & !self.fixed;
        if !subset(missing, self.free) {
            return vec![*self];
        }
        let mut out = Vec::new();
        let mut part = 0u64;
        loop {
            // proper submasks of `missing`, ascending
            if part != missing && (part.count_ones() as usize) <= self.budget {
                out.push(Subspace::new(
                    self.fixed | part,
                    self.free & !missing,
                    self.budget - part.count_ones() as usize,
                ));
            }
            if part == missing {
                break;
            }
            part = (part | !missing).wrapping_add(1) & missing;
        }
        out.retain(|s| !s.is_empty());
        out
    }

    /// All conditions of the subspace, ascending by the order of first choice.
    pub fn conditions(&self) -> Vec<u64> {
        self.conditions_avoiding(&[])
    }

    /// Conditions of the subspace that contain no element of `nse`.
    pub fn conditions_avoiding(&self, nse: &[u64]) -> Vec<u64> {
        let mut out = Vec::new();
        if nse.iter().any(|&m| subset(m, self.fixed)) {
            return out;
        }
        let relevant: Vec<u64> = nse
            .iter()
            .copied()
            .filter(|&m| subset(m, self.fixed | self.free))
            .collect();
        let free: Vec<u32> = bits(self.free).collect();
        extend(self.fixed, &free, self.budget, &relevant, &mut out);
        out
    }
}

fn extend(cur: u64, free: &[u32], budget: usize, nse: &[u64], out: &mut Vec<u64>) {
    if budget == 0 {
        out.push(cur);
        return;
    }
    if free.len() < budget {
        return;
    }
    for (i, &bit) in free.iter().enumerate() {
        if free.len() - i < budget {
            break;
        }
        let next = cur | 1 << bit;
        if nse.iter().any(|&m| m >> bit & 1 == 1 && subset(m, next)) {
            continue;
        }
        extend(next, &free[i + 1..], budget - 1, nse, out);
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = u32> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros();
        m &= m - 1;
        Some(b)
    })
}

/// Subsets of `pool` with at most `max` elements that contain no element of
/// `nse`, in depth-first order.
pub(crate) fn bounded_subsets(pool: u64, max: usize, nse: &[u64]) -> Vec<u64> {
    fn go(cur: u64, rest: &[u32], max: usize, nse: &[u64], out: &mut Vec<u64>) {
        out.push(cur);
        if cur.count_ones() as usize == max {
            return;
        }
        for (i, &bit) in rest.iter().enumerate() {
            let next = cur | 1 << bit;
            if nse.iter().any(|&m| m >> bit & 1 == 1 && subset(m, next)) {
                continue;
            }
            go(next, &rest[i + 1..], max, nse, out);
        }
    }
    let pool_bits: Vec<u32> = bits(pool).collect();
    let mut out = Vec::new();
    if nse.contains(&0) {
        return out;
    }
    go(0, &pool_bits, max, nse, &mut out);
    out
}
