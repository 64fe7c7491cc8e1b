//! Admissible index tuples and the intertwining relation.
//!
//! An index tuple is a strictly increasing (d+1)-subset of the cyclic vertex
//! set {0, ..., m-1} in which no two chosen vertices are cyclically
//! consecutive. Each such tuple labels one indecomposable object; the whole
//! set of tuples is in bijection with the internal d-simplices of an even
//! dimensional cyclic polytope on m vertices.
//!
//! Two tuples intertwine when their merged listing strictly alternates
//! (i0 < j0 < i1 < ... < i_d < j_d or the same with the roles swapped). Any
//! shared vertex kills alternation. Intertwining is exactly the obstruction
//! to two objects living in a common rigid collection, and geometrically it
//! is transversal crossing of the two simplices.
//!
//! Both tuples being sorted inside one fundamental window [0, m) makes the
//! cyclic alternation test equal to the linear one, which is what
//! [`intertwines`] implements.

use itertools::Itertools;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Sorted (d+1)-subset of {0, ..., m-1}, no two entries cyclically adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    entries: Vec<u32>,
}

impl IndexTuple {
    /// Validates shape and cyclic non-adjacency.
    pub fn new(entries: Vec<u32>, p: &ModelParams) -> Result<Self> {
        if !is_admissible(&entries, p)? {
            return Err(Error::Validation(format!(
                "tuple {} has two cyclically consecutive entries (mod {})",
                entries.iter().join(","),
                p.m()
            )));
        }
        Ok(IndexTuple { entries })
    }

    /// Sorts raw entries first; used where admissibility is already known or
    /// about to be checked by the caller.
    pub(crate) fn from_unsorted(mut entries: Vec<u32>) -> Self {
        entries.sort_unstable();
        IndexTuple { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Parses the textual form "0,2,4,6".
    pub fn parse(s: &str, p: &ModelParams) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Validation(format!("bad tuple entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(entries, p)
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

/// True iff no entry has its cyclic successor (entry+1 mod m) also present.
/// Malformed input (wrong length, out of range, unsorted or repeated entries)
/// is a validation error, not `false`.
pub fn is_admissible(entries: &[u32], p: &ModelParams) -> Result<bool> {
    if entries.len() != p.tuple_len() {
        return Err(Error::Validation(format!(
            "expected {} entries, got {}",
            p.tuple_len(),
            entries.len()
        )));
    }
    if let Some(&e) = entries.iter().find(|&&e| e >= p.m()) {
        return Err(Error::Validation(format!(
            "entry {e} out of range 0..{}",
            p.m()
        )));
    }
    if entries.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation(format!(
            "entries must be strictly increasing, got {}",
            entries.iter().join(",")
        )));
    }
    Ok(admissible_sorted(entries, p))
}

/// Adjacency test only; assumes sorted, distinct, in-range entries.
pub(crate) fn admissible_sorted(entries: &[u32], p: &ModelParams) -> bool {
    if entries.windows(2).any(|w| w[1] == w[0] + 1) {
        return false;
    }
    // Wrap: m-1 and 0 are cyclically adjacent.
    !(entries[0] == 0 && *entries.last().unwrap() == p.m() - 1)
}

/// All admissible tuples in lexicographic order.
pub fn enumerate_objects(p: &ModelParams) -> Vec<IndexTuple> {
    (0..p.m())
        .combinations(p.tuple_len())
        .filter(|c| admissible_sorted(c, p))
        .map(|entries| IndexTuple { entries })
        .collect()
}

/// Strict alternation of two sorted sequences: every x[k] < y[k] and
/// y[k] < x[k+1]. Equal values anywhere break alternation.
fn alternates_from<T: PartialOrd>(x: &[T], y: &[T]) -> bool {
    debug_assert_eq!(x.len(), y.len());
    (0..x.len()).all(|k| x[k] < y[k] && (k + 1 == x.len() || y[k] < x[k + 1]))
}

pub(crate) fn alternates<T: PartialOrd>(a: &[T], b: &[T]) -> bool {
    alternates_from(a, b) || alternates_from(b, a)
}

/// Whether the two tuples strictly alternate cyclically. Symmetric; false on
/// any shared vertex; invariant under simultaneous suspension.
pub fn intertwines(a: &IndexTuple, b: &IndexTuple, p: &ModelParams) -> bool {
    debug_assert_eq!(a.entries.len(), p.tuple_len());
    debug_assert_eq!(b.entries.len(), p.tuple_len());
    alternates(&a.entries, &b.entries)
}

/// Entrywise subtraction of k mod m, then re-sort. Negative k inverts.
/// Admissibility is preserved: rotation respects cyclic adjacency.
pub fn suspend(i: &IndexTuple, p: &ModelParams, k: i64) -> IndexTuple {
    let m = p.m() as i64;
    let t = IndexTuple::from_unsorted(
        i.entries
            .iter()
            .map(|&e| (e as i64 - k).rem_euclid(m) as u32)
            .collect(),
    );
    debug_assert!(admissible_sorted(&t.entries, p));
    t
}

/// Dimension of the morphism space toward the d-th suspension: 1 iff the
/// tuples intertwine, else 0. A collection is rigid iff this vanishes
/// pairwise; a tuple never intertwines itself.
pub fn hom_to_suspension_dim(a: &IndexTuple, b: &IndexTuple, p: &ModelParams) -> u8 {
    intertwines(a, b, p) as u8
}
