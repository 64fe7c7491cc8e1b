//! Middle terms of the two exchange angles at a mutable summand.
//!
//! The frame B lists the 2d+2 vertices of the exchanged pair R, R* in cyclic
//! order, alternating between the two. The middle terms of the left angle are
//! indexed by nonempty proper subsets of R's positions: replace each selected
//! entry of R by its cyclic successor in B and keep the result when it is
//! admissible. Grouping by subset size j gives the term multisets T^1, ...,
//! T^d, at most C(d+1, j) members each; inadmissible corners are boundary
//! faces and contribute nothing. The right angle does the same with cyclic
//! predecessors. Replacing all d+1 entries reproduces R* on both sides, so
//! the two extremes of the cube are the exchanged pair itself.
//!
//! Every retained middle term must already be a summand of the collection
//! (and is neither R nor R*). A violation means the extrapolated rule, not
//! the assertion, is wrong, and surfaces as an invariant error.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::tilting::{ClusterTilting, ExchangeFrame};
use crate::tuple::{admissible_sorted, IndexTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeAngles {
    /// left_middles[j-1] holds the j-fold successor replacements.
    pub left_middles: Vec<Vec<IndexTuple>>,
    /// right_middles[j-1] holds the j-fold predecessor replacements.
    pub right_middles: Vec<Vec<IndexTuple>>,
    pub outgoing: IndexTuple,
    pub incoming: IndexTuple,
}

#[derive(Clone, Copy)]
pub(crate) enum Side {
    Left,
    Right,
}

/// Raw cube rule: j-fold replacements on one side, admissibility filtered,
/// no membership check. Subsets enumerated in lexicographic order.
pub(crate) fn middles_for(
    t: &ClusterTilting,
    frame: &ExchangeFrame,
    side: Side,
) -> Vec<Vec<IndexTuple>> {
    let p = t.params();
    let d = p.d() as usize;
    let b = frame.b();
    let len = b.len();
    let r_pos = frame.r_positions();
    let mut out = Vec::with_capacity(d);
    for j in 1..=d {
        let mut layer = Vec::new();
        for subset in (0..=d).combinations(j) {
            let entries: Vec<u32> = (0..=d)
                .map(|idx| {
                    if subset.contains(&idx) {
                        let shifted = match side {
                            Side::Left => (r_pos[idx] + 1) % len,
                            Side::Right => (r_pos[idx] + len - 1) % len,
                        };
                        b[shifted]
                    } else {
                        b[r_pos[idx]]
                    }
                })
                .collect();
            let candidate = IndexTuple::from_unsorted(entries);
            debug_assert!(candidate
                .entries()
                .windows(2)
                .all(|w| w[0] < w[1]));
            if admissible_sorted(candidate.entries(), &p) {
                layer.push(candidate);
            }
        }
        out.push(layer);
    }
    out
}

/// Computes both term multisets and checks each member against the
/// collection: a middle term outside it falsifies the rule.
pub fn exchange_angles(t: &ClusterTilting, frame: &ExchangeFrame) -> Result<ExchangeAngles> {
    let outgoing = frame.outgoing();
    let incoming = frame.incoming();
    let left_middles = middles_for(t, frame, Side::Left);
    let right_middles = middles_for(t, frame, Side::Right);
    for layer in left_middles.iter().chain(&right_middles) {
        for mid in layer {
            if *mid == outgoing || *mid == incoming || t.position_of(mid).is_none() {
                return Err(Error::Invariant(format!(
                    "middle term {mid} of the exchange at {outgoing} is not a summand of {}",
                    t.label()
                )));
            }
        }
    }
    Ok(ExchangeAngles {
        left_middles,
        right_middles,
        outgoing,
        incoming,
    })
}
