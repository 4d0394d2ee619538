//! Leray numbers, Hochster Betti tables and regularity.
//!
//! Every quantity here is a sweep over the `2^n` vertex windows `W`, reading
//! reduced homology of the induced subcomplexes `X[W]`. Windows are split
//! across workers and merged deterministically, so results do not depend on
//! the thread count.

use std::collections::BTreeMap;

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::homology::FaceTable;
use crate::par;

/// Largest universe the window sweeps accept.
pub const MAX_WINDOW_VERTICES: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LerayWitness {
    pub leray: usize,
    /// Smallest window (by numeric value) carrying the top homology.
    pub witness_set: Option<VertexSet>,
    pub witness_dim: Option<usize>,
}

/// Graded Betti numbers `β_{i,i+j}` of the Stanley-Reisner ideal, keyed by
/// `(i, j)`; zero entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, usize), u64>,
    pub num_vars: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Height of the table: `max j` with a nonzero entry.
    pub fn max_j(&self) -> Option<usize> {
        self.entries.keys().map(|&(_, j)| j).max()
    }
}

pub(crate) fn window_range(x: &SimplicialComplex) -> Result<std::ops::Range<u64>> {
    let n = x.num_vertices();
    if n > MAX_WINDOW_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    Ok(0..1u64 << n)
}

/// Highest `i` with `β̃_i(table) != 0`, looking only above `floor`.
fn top_nonzero_above(table: &FaceTable, floor: Option<usize>) -> Option<usize> {
    let dim = table.dim();
    if dim < 0 {
        return None;
    }
    let lowest = floor.map_or(0, |f| f + 1);
    (lowest..=dim as usize).rev().find(|&i| table.betti(i) != 0)
}

fn better(a: Option<(usize, u64)>, b: Option<(usize, u64)>) -> Option<(usize, u64)> {
    match (a, b) {
        (Some((ia, wa)), Some((ib, wb))) => Some(if ib > ia || (ib == ia && wb < wa) { (ib, wb) } else { (ia, wa) }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// The Leray number `L(X)`: zero for a simplex, otherwise one more than the
/// largest `i` with `β̃_i(X[W]) != 0` for some window `W`.
pub fn leray_number(x: &SimplicialComplex) -> Result<LerayWitness> {
    x.require_non_void()?;
    let range = window_range(x)?;
    let table = FaceTable::of(x);
    let best = par::fold_range(
        range,
        || None,
        |acc: Option<(usize, u64)>, w| {
            let sub = table.restrict(VertexSet::from_bits(w));
            // a window cannot beat the current best unless its dimension is higher
            if acc.is_some_and(|(i, _)| sub.dim() <= i as i32) {
                return acc;
            }
            match top_nonzero_above(&sub, acc.map(|(i, _)| i)) {
                Some(i) => Some((i, w)),
                None => acc,
            }
        },
        better,
    );
    Ok(match best {
        None => LerayWitness { leray: 0, witness_set: None, witness_dim: None },
        Some((i, w)) => {
            LerayWitness { leray: i + 1, witness_set: Some(VertexSet::from_bits(w)), witness_dim: Some(i) }
        }
    })
}

/// Hochster's formula: `β_{i,i+j} = Σ_{|W| = i+j} β̃_{j-2}(X[W])` for `j >= 2`.
pub fn hochster_table(x: &SimplicialComplex) -> Result<BettiTable> {
    x.require_non_void()?;
    let range = window_range(x)?;
    let table = FaceTable::of(x);
    let entries = par::fold_range(
        range,
        BTreeMap::new,
        |mut acc: BTreeMap<(usize, usize), u64>, w| {
            let window = VertexSet::from_bits(w);
            let size = window.len();
            let sub = table.restrict(window);
            for (h, b) in sub.all_betti().into_iter().enumerate() {
                let j = h + 2;
                if b > 0 && size >= j {
                    *acc.entry((size - j, j)).or_insert(0) += b as u64;
                }
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    Ok(BettiTable { entries, num_vars: x.num_vertices() })
}

/// `reg(I_X) = L(X) + 1`. A simplex has the zero ideal and no regularity here.
pub fn regularity(x: &SimplicialComplex) -> Result<usize> {
    if x.is_simplex()? {
        return Err(Error::Simplex("zero ideal has no regularity in this scope"));
    }
    let reg = leray_number(x)?.leray + 1;
    debug_assert_eq!(hochster_table(x).ok().and_then(|t| t.max_j()), Some(reg));
    Ok(reg)
}
