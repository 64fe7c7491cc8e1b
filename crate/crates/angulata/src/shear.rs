//! Shear coordinates of rational arcs against a tilting basis.
//!
//! Each slot of a collection carries an exchange frame, and the frame cuts
//! the circle into the open intervals between consecutive frame vertices.
//! The local shear of an arc at a slot is -1 when the arc has a coordinate
//! strictly inside every interval hanging below a vertex of the outgoing
//! summand, +1 when it hits every interval above one, and 0 otherwise. The
//! whole shear vector is computed along an independent route, as the index
//! of the rounded-down arc; the two routes are reconciled by the test
//! suite, not by construction.

use crate::arc::{round_down, Arc, Lamination, Rat, Rounded};
use crate::error::{Error, Result};
use crate::index::{compute_index, IndexVector};
use crate::tilting::{find_replacement, ClusterTilting, ExchangeFrame};

fn hits_open_cyclic(coords: &[Rat], lo: u32, hi: u32, m: u32) -> bool {
    let lo = Rat::from_integer(i64::from(lo));
    let hi = Rat::from_integer(i64::from(hi));
    let wrap = lo > hi;
    let m = Rat::from_integer(i64::from(m));
    coords.iter().any(|&x| {
        if wrap {
            (x > lo && x < m) || x < hi
        } else {
            x > lo && x < hi
        }
    })
}

/// The single shear coordinate of `arc` at one slot, read off the exchange
/// frame of that slot.
pub fn local_shear(t: &ClusterTilting, pos: usize, arc: &Arc) -> Result<i64> {
    let p = t.params();
    let incoming = find_replacement(t, pos)?.ok_or(Error::NotMutable { pos })?;
    let outgoing = &t.summands()[pos];
    let frame = ExchangeFrame::build(&p, outgoing, &incoming)?;
    let b = frame.b();
    let below_all = frame.r_positions().iter().all(|&k| {
        let lo = b[(k + b.len() - 1) % b.len()];
        hits_open_cyclic(arc.coords(), lo, b[k], p.m())
    });
    let above_all = frame.r_positions().iter().all(|&k| {
        let hi = b[(k + 1) % b.len()];
        hits_open_cyclic(arc.coords(), b[k], hi, p.m())
    });
    Ok(match (below_all, above_all) {
        (true, false) => -1,
        (false, true) => 1,
        (false, false) => 0,
        (true, true) => {
            return Err(Error::Invariant(format!(
                "arc {arc} sits below and above summand {outgoing} at once"
            )))
        }
    })
}

/// The shear vector of an arc over `t`: zero when the arc rounds down to
/// nothing, otherwise the index of the rounded object.
pub fn shear_vector(t: &ClusterTilting, arc: &Arc) -> Result<IndexVector> {
    let p = t.params();
    match round_down(arc, &p) {
        Rounded::Zero => IndexVector::new(t.clone(), vec![0; t.summands().len()]),
        Rounded::Object(j) => compute_index(t, &j),
    }
}

/// The summed shear vector of a lamination.
pub fn shear_lamination(t: &ClusterTilting, lam: &Lamination) -> Result<IndexVector> {
    let mut coeffs = vec![0i64; t.summands().len()];
    for arc in lam.arcs() {
        let v = shear_vector(t, arc)?;
        for (acc, c) in coeffs.iter_mut().zip(v.coeffs()) {
            *acc += c;
        }
    }
    IndexVector::new(t.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ModelParams;
    use crate::tuple::IndexTuple;

    fn p(d: u32, n: u32) -> ModelParams {
        ModelParams::new(d, n).unwrap()
    }

    fn tilting(rows: &[&[u32]], p: &ModelParams) -> ClusterTilting {
        ClusterTilting::new(
            *p,
            rows.iter()
                .map(|r| IndexTuple::new(r.to_vec(), p).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn arc(s: &str, p: &ModelParams) -> Arc {
        Arc::parse(s, p).unwrap()
    }

    #[test]
    fn fan_hexagon_local_shears() {
        let p6 = p(1, 3);
        let fan = tilting(&[&[0, 2], &[0, 3], &[0, 4]], &p6);
        assert_eq!(local_shear(&fan, 1, &arc("1/2,7/2", &p6)).unwrap(), 1);
        assert_eq!(local_shear(&fan, 1, &arc("5/2,9/2", &p6)).unwrap(), -1);
        assert_eq!(local_shear(&fan, 1, &arc("1/2,5/2", &p6)).unwrap(), 0);
        assert_eq!(local_shear(&fan, 0, &arc("5/2,9/2", &p6)).unwrap(), 0);
        assert_eq!(local_shear(&fan, 2, &arc("5/2,9/2", &p6)).unwrap(), 1);
    }

    #[test]
    fn shear_vector_routes_through_rounding() {
        let p6 = p(1, 3);
        let fan = tilting(&[&[0, 2], &[0, 3], &[0, 4]], &p6);
        let v = shear_vector(&fan, &arc("5/2,9/2", &p6)).unwrap();
        assert_eq!(v.coeffs(), &[0, -1, 1]);

        // An arc rounding down onto a summand is that summand's unit vector.
        let v = shear_vector(&fan, &arc("0.5,3.5", &p6)).unwrap();
        assert_eq!(v.coeffs(), &[0, 1, 0]);

        // Rounds down to a repeated vertex: zero.
        let v = shear_vector(&fan, &arc("1.2,1.8", &p6)).unwrap();
        assert_eq!(v.coeffs(), &[0, 0, 0]);
    }

    #[test]
    fn local_shears_match_the_vector_on_the_fan() {
        let p6 = p(1, 3);
        let fan = tilting(&[&[0, 2], &[0, 3], &[0, 4]], &p6);
        for a in ["1/2,7/2", "5/2,9/2", "3/2,11/2", "1/2,5/2", "7/2,11/2"] {
            let a = arc(a, &p6);
            let v = shear_vector(&fan, &a).unwrap();
            for pos in 0..3 {
                assert_eq!(
                    local_shear(&fan, pos, &a).unwrap(),
                    v.coeffs()[pos],
                    "arc {a} at slot {pos}"
                );
            }
        }
    }

    #[test]
    fn lamination_shear_adds_up() {
        let p6 = p(1, 3);
        let fan = tilting(&[&[0, 2], &[0, 3], &[0, 4]], &p6);
        let arcs = vec![arc("5/2,9/2", &p6), arc("5/2,11/2", &p6)];
        let lam = Lamination::new(arcs.clone(), &p6).unwrap();
        let total = shear_lamination(&fan, &lam).unwrap();
        let by_hand: Vec<i64> = arcs
            .iter()
            .map(|a| shear_vector(&fan, a).unwrap().coeffs().to_vec())
            .fold(vec![0; 3], |acc, v| {
                acc.iter().zip(&v).map(|(x, y)| x + y).collect()
            });
        assert_eq!(total.coeffs(), &by_hand[..]);
    }

    #[test]
    fn higher_d_shears_read_the_frame() {
        let p8 = p(3, 1);
        let basis = tilting(&[&[0, 2, 4, 6]], &p8);
        // Sits above every vertex of the lone summand and rounds down onto
        // it; both routes give +1.
        let a = arc("1/2,5/2,9/2,13/2", &p8);
        assert_eq!(local_shear(&basis, 0, &a).unwrap(), 1);
        let v = shear_vector(&basis, &a).unwrap();
        assert_eq!(v.coeffs(), &[1]);

        // Shifted below instead: rounds down onto the replacement.
        let a = arc("3/2,7/2,11/2,15/2", &p8);
        assert_eq!(local_shear(&basis, 0, &a).unwrap(), -1);
        let v = shear_vector(&basis, &a).unwrap();
        assert_eq!(v.coeffs(), &[-1]);
    }
}
