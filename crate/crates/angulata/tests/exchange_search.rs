//! The bundled before/after table stores coefficient rows only; it never
//! names the summands behind its ten slots. This search closes that gap: it
//! scans every exchange in the (3,3) model for a slot whose pair of exchange
//! vectors carries, off the exchanged slot, exactly the coefficient-pair
//! multiset of the bundled vectors. Finding one shows the table's auxiliary
//! vectors are what the angle machinery produces for a genuine exchange, with
//! no labeling guessed or hard-coded.

use angulata::fixture::MutationFixture;
use angulata::index::index_exchange_objects;
use angulata::tilting::enumerate_tiltings;
use angulata::{Budget, Error, ModelParams};

fn pair_multiset(sigma: &[i64], estar: &[i64], skip: usize) -> Vec<(i64, i64)> {
    let mut pairs: Vec<(i64, i64)> = sigma
        .iter()
        .zip(estar)
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, (&s, &e))| (s, e))
        .collect();
    pairs.sort_unstable();
    pairs
}

#[test]
fn bundled_table_vectors_arise_from_a_real_exchange() {
    let fx = MutationFixture::load().unwrap();
    assert_eq!((fx.d, fx.n), (3, 3));
    let target = pair_multiset(&fx.sigma_estar, &fx.estar, fx.pos);

    let p = ModelParams::new(fx.d, fx.n).unwrap();
    let tiltings = enumerate_tiltings(&p, &Budget::default()).unwrap();
    assert!(!tiltings.truncated);

    let mut witnesses = Vec::new();
    for t in &tiltings.tiltings {
        for pos in 0..t.summands().len() {
            let ex = match index_exchange_objects(t, pos) {
                Ok(ex) => ex,
                Err(Error::NotMutable { .. }) => continue,
                Err(e) => panic!("unexpected error: {e}"),
            };
            assert_eq!(ex.sigma_estar[pos], 1);
            assert_eq!(ex.estar[pos], -1);
            if pair_multiset(&ex.sigma_estar, &ex.estar, pos) == target {
                witnesses.push((t.label(), pos, ex.outgoing.clone(), ex.incoming.clone()));
            }
        }
    }

    assert!(
        !witnesses.is_empty(),
        "no exchange in the (3,3) model realizes the bundled vector pair"
    );
    println!(
        "{} exchanges realize the bundled vector pair, e.g. {} at slot {} ({} -> {})",
        witnesses.len(),
        witnesses[0].0,
        witnesses[0].1,
        witnesses[0].2,
        witnesses[0].3
    );
}
