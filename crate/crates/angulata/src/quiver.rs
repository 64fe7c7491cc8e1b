//! Quiver exchange matrix of a polygon triangulation (d = 1 only).
//!
//! Each triangle of the triangulation contributes a 3-cycle of arrows among
//! its edges, oriented with the polygon: for a triangle on vertices
//! u < v < w the arrows run (u,v) -> (u,w) -> (v,w) -> (u,v). Only arrows
//! whose both endpoints are diagonals of the triangulation are kept; boundary
//! edges carry nothing. The matrix entry is
//! b_{jk} = #(arrows k -> j) - #(arrows j -> k),
//! indexed by the collection's slot order. The orientation is the one pinned
//! by the d=1 bridge test in [`crate::tropical`]: predecessor-side middle
//! terms match the positive parts of the mutated row.

use crate::error::{Error, Result};
use crate::tilting::ClusterTilting;
use crate::tropical::SkewMatrix;

pub fn quiver_b_matrix_d1(t: &ClusterTilting) -> Result<SkewMatrix> {
    let p = t.params();
    if p.d() != 1 {
        return Err(Error::UnsupportedDimension(format!(
            "quiver matrix is defined for d = 1, got d = {}",
            p.d()
        )));
    }
    let m = p.m();
    let n = t.summands().len();
    // Edge is a diagonal slot index, a boundary edge, or absent.
    let slot_of = |a: u32, b: u32| -> Option<usize> {
        t.summands()
            .iter()
            .position(|s| s.entries() == [a.min(b), a.max(b)])
    };
    let is_boundary = |a: u32, b: u32| -> bool {
        (a + 1) % m == b || (b + 1) % m == a
    };
    let edge_present = |a: u32, b: u32| -> bool { is_boundary(a, b) || slot_of(a, b).is_some() };

    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for u in 0..m {
        for v in u + 1..m {
            for w in v + 1..m {
                if !(edge_present(u, v) && edge_present(v, w) && edge_present(u, w)) {
                    continue;
                }
                for (from, to) in [((u, v), (u, w)), ((u, w), (v, w)), ((v, w), (u, v))] {
                    if let (Some(f), Some(g)) = (slot_of(from.0, from.1), slot_of(to.0, to.1)) {
                        arrows.push((f, g));
                    }
                }
            }
        }
    }

    let mut rows = vec![vec![0i64; n]; n];
    for (f, g) in arrows {
        // One arrow f -> g adds to b_{gf} and subtracts from b_{fg}.
        rows[g][f] += 1;
        rows[f][g] -= 1;
    }
    SkewMatrix::new(rows)
        .map_err(|_| Error::Invariant("triangle arrow count broke skew-symmetry".into()))
}
