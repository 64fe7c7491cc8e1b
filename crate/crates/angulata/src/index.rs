//! Integer index vectors over an ordered tilting basis and their transport
//! along mutation.
//!
//! An index vector assigns one integer per slot of a cluster tilting
//! collection. Mutating the collection at a slot rewrites the vector by a
//! piecewise-linear substitution whose two linear branches are spanned by
//! the exchange vectors of that slot. For odd d the branch is selected by
//! the sign of the tracked coefficient; the general form takes an explicit
//! selector and rejects choices whose residual does not cancel. Transport
//! along a mutation path assigns every object an index over any chosen
//! basis; path independence of the result is checked by the test suite,
//! not assumed here.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::angles::{middles_for, Side};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::tilting::{
    complete_to_tilting, enumerate_tiltings, find_replacement, find_replacement_with, mutate,
    ClusterTilting, Compat, ExchangeFrame,
};
use crate::tuple::{intertwines, IndexTuple};

/// One integer coefficient per slot of an ordered tilting basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexVector {
    basis: ClusterTilting,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct IndexVectorRaw {
    basis: Vec<String>,
    coeffs: Vec<i64>,
}

impl IndexVector {
    pub fn new(basis: ClusterTilting, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != basis.summands().len() {
            return Err(Error::Validation(format!(
                "{} coefficients for a basis of {} slots",
                coeffs.len(),
                basis.summands().len()
            )));
        }
        Ok(IndexVector { basis, coeffs })
    }

    /// The unit vector supported on one slot.
    pub fn unit(basis: &ClusterTilting, pos: usize) -> Result<Self> {
        if pos >= basis.summands().len() {
            return Err(Error::Validation(format!(
                "position {pos} out of range for {} summands",
                basis.summands().len()
            )));
        }
        let mut coeffs = vec![0; basis.summands().len()];
        coeffs[pos] = 1;
        Ok(IndexVector {
            basis: basis.clone(),
            coeffs,
        })
    }

    pub fn basis(&self) -> &ClusterTilting {
        &self.basis
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Re-expresses the vector over a basis holding the same summands in a
    /// possibly different slot order.
    pub fn rebase(&self, target: &ClusterTilting) -> Result<IndexVector> {
        if !self.basis.same_set(target) {
            return Err(Error::BasisMismatch(format!(
                "cannot rebase from {} to {}",
                self.basis.label(),
                target.label()
            )));
        }
        let coeffs = target
            .summands()
            .iter()
            .map(|s| {
                let i = self
                    .basis
                    .position_of(s)
                    .expect("same_set guarantees membership");
                self.coeffs[i]
            })
            .collect();
        Ok(IndexVector {
            basis: target.clone(),
            coeffs,
        })
    }

    pub fn from_json_str(s: &str, p: &ModelParams) -> Result<Self> {
        let raw: IndexVectorRaw = serde_json::from_str(s)
            .map_err(|e| Error::Validation(format!("malformed index vector file: {e}")))?;
        let summands = raw
            .basis
            .iter()
            .map(|t| IndexTuple::parse(t, p))
            .collect::<Result<Vec<_>>>()?;
        let basis = ClusterTilting::new(*p, summands)?;
        IndexVector::new(basis, raw.coeffs)
    }

    pub fn to_json_string(&self) -> String {
        let raw = IndexVectorRaw {
            basis: self
                .basis
                .summands()
                .iter()
                .map(|s| s.to_string())
                .collect(),
            coeffs: self.coeffs.clone(),
        };
        serde_json::to_string(&raw).expect("index vector serializes")
    }
}

/// The index of a summand over its own collection: the unit vector at its
/// slot.
pub fn index_of_summand(t: &ClusterTilting, j: &IndexTuple) -> Result<IndexVector> {
    let pos = t.position_of(j).ok_or_else(|| {
        Error::Validation(format!("{j} is not a summand of {}", t.label()))
    })?;
    IndexVector::unit(t, pos)
}

/// The two operator vectors of the exchange at one slot, expressed over the
/// slots of the source collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeIndexVectors {
    /// +1 at the exchanged slot, (-1)^j on each right middle term of layer j.
    pub sigma_estar: Vec<i64>,
    /// (-1)^d at the exchanged slot, (-1)^(d-j) on each left middle term of
    /// layer j.
    pub estar: Vec<i64>,
    pub outgoing: IndexTuple,
    pub incoming: IndexTuple,
}

pub fn index_exchange_objects(t: &ClusterTilting, pos: usize) -> Result<ExchangeIndexVectors> {
    let p = t.params();
    let d = p.d() as usize;
    let incoming = find_replacement(t, pos)?.ok_or(Error::NotMutable { pos })?;
    let outgoing = t.summands()[pos].clone();
    let frame = ExchangeFrame::build(&p, &outgoing, &incoming)?;
    let slots = t.summands().len();

    let slot_of = |mid: &IndexTuple| -> Result<usize> {
        t.position_of(mid).ok_or_else(|| {
            Error::Invariant(format!(
                "middle term {mid} of the exchange at {outgoing} is not a summand of {}",
                t.label()
            ))
        })
    };

    let mut sigma_estar = vec![0i64; slots];
    sigma_estar[pos] = 1;
    for (layer, mids) in middles_for(t, &frame, Side::Right).iter().enumerate() {
        let j = layer + 1;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        for mid in mids {
            sigma_estar[slot_of(mid)?] += sign;
        }
    }

    let mut estar = vec![0i64; slots];
    estar[pos] = if d % 2 == 0 { 1 } else { -1 };
    for (layer, mids) in middles_for(t, &frame, Side::Left).iter().enumerate() {
        let j = layer + 1;
        let sign = if (d - j) % 2 == 0 { 1 } else { -1 };
        for mid in mids {
            estar[slot_of(mid)?] += sign;
        }
    }

    Ok(ExchangeIndexVectors {
        sigma_estar,
        estar,
        outgoing,
        incoming,
    })
}

/// Which exchange vector rewrites the tracked coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseSelector {
    /// Use the left-supported vector `estar`.
    AtTop,
    /// Use the right-supported vector `sigma_estar`.
    AtBottom,
}

/// Substitution with an explicit branch. The residual at the exchanged slot
/// must cancel exactly; a nonzero residual means the selector does not match
/// the vector and the call is rejected. The result lives over the mutated
/// collection, same slot order.
pub fn apply_index_substitution_general(
    v: &IndexVector,
    pos: usize,
    selector: CaseSelector,
) -> Result<IndexVector> {
    let t = v.basis();
    if pos >= t.summands().len() {
        return Err(Error::Validation(format!(
            "position {pos} out of range for {} summands",
            t.summands().len()
        )));
    }
    let c = v.coeffs()[pos];
    let ex = index_exchange_objects(t, pos)?;
    let op = match selector {
        CaseSelector::AtBottom => &ex.sigma_estar,
        CaseSelector::AtTop => &ex.estar,
    };
    let mag = c.abs();
    let mut w: Vec<i64> = v
        .coeffs()
        .iter()
        .zip(op)
        .map(|(a, o)| a - mag * o)
        .collect();
    if w[pos] != 0 {
        return Err(Error::Validation(format!(
            "selector {selector:?} leaves residual {} at position {pos} for coefficient {c}",
            w[pos]
        )));
    }
    let d = t.params().d();
    w[pos] = if d % 2 == 0 { c } else { -c };
    let (basis, _) = mutate(t, pos)?;
    IndexVector::new(basis, w)
}

/// Substitution with the branch chosen by the sign of the tracked
/// coefficient. Well defined for odd d only, where each sign admits exactly
/// one cancelling branch.
pub fn apply_index_substitution(v: &IndexVector, pos: usize) -> Result<IndexVector> {
    let p = v.basis().params();
    if p.d() % 2 == 0 {
        return Err(Error::UnsupportedDimension(format!(
            "sign-driven substitution needs odd d, got d = {}",
            p.d()
        )));
    }
    if pos >= v.coeffs().len() {
        return Err(Error::Validation(format!(
            "position {pos} out of range for {} summands",
            v.coeffs().len()
        )));
    }
    let selector = if v.coeffs()[pos] >= 0 {
        CaseSelector::AtBottom
    } else {
        CaseSelector::AtTop
    };
    apply_index_substitution_general(v, pos, selector)
}

/// The odd-d substitution rule on bare coefficient rows, for callers that
/// carry the exchange vectors themselves. `sigma_estar` must hold +1 and
/// `estar` -1 at the exchanged position.
pub fn substitute_index_coeffs(
    coeffs: &[i64],
    pos: usize,
    sigma_estar: &[i64],
    estar: &[i64],
) -> Result<Vec<i64>> {
    if coeffs.len() != sigma_estar.len() || coeffs.len() != estar.len() || pos >= coeffs.len() {
        return Err(Error::Validation(
            "coefficient rows and exchange vectors must share one length covering pos".into(),
        ));
    }
    if sigma_estar[pos] != 1 || estar[pos] != -1 {
        return Err(Error::Validation(format!(
            "exchange vectors must carry +1 and -1 at position {pos}, got {} and {}",
            sigma_estar[pos], estar[pos]
        )));
    }
    let c = coeffs[pos];
    let op = if c >= 0 { sigma_estar } else { estar };
    let mag = c.abs();
    let mut w: Vec<i64> = coeffs.iter().zip(op).map(|(a, o)| a - mag * o).collect();
    w[pos] = -c;
    Ok(w)
}

/// All tiltings of one model with their mutation adjacency, built once per
/// parameter set and shared.
struct Snapshot {
    objects: Vec<IndexTuple>,
    /// Sorted object-id rows, lexicographic.
    tiltings: Vec<Vec<usize>>,
    tid_of: HashMap<Vec<usize>, usize>,
    /// neighbors[tid][slot] = (neighbor tid, incoming object id), slot
    /// indexing the sorted row.
    neighbors: Vec<Vec<Option<(usize, usize)>>>,
    truncated: bool,
}

fn snapshot(p: &ModelParams) -> Result<Arc<Snapshot>> {
    static CACHE: OnceLock<Mutex<HashMap<ModelParams, Arc<Snapshot>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("snapshot cache lock");
    if let Some(s) = guard.get(p) {
        return Ok(s.clone());
    }
    let compat = Compat::build(p);
    let enumeration = enumerate_tiltings(p, &Budget::default())?;
    let mut tiltings = Vec::with_capacity(enumeration.tiltings.len());
    let mut tid_of = HashMap::new();
    for t in &enumeration.tiltings {
        let mut ids: Vec<usize> = t
            .summands()
            .iter()
            .map(|s| compat.id(s).expect("tilting members are enumerated objects"))
            .collect();
        ids.sort_unstable();
        tid_of.insert(ids.clone(), tiltings.len());
        tiltings.push(ids);
    }
    let mut neighbors = Vec::with_capacity(tiltings.len());
    for ids in &tiltings {
        let t = ClusterTilting::from_maximal(
            *p,
            ids.iter().map(|&i| compat.objects[i].clone()).collect(),
        )?;
        let mut row = Vec::with_capacity(ids.len());
        for slot in 0..ids.len() {
            let entry = match find_replacement_with(&compat, &t, slot)? {
                None => None,
                Some(incoming) => {
                    let in_id = compat.id(&incoming).expect("replacement is an object");
                    let mut nids = ids.clone();
                    nids[slot] = in_id;
                    nids.sort_unstable();
                    match tid_of.get(&nids) {
                        Some(&ntid) => Some((ntid, in_id)),
                        // Neighbor beyond a truncated enumeration.
                        None if enumeration.truncated => None,
                        None => {
                            return Err(Error::Invariant(format!(
                                "mutation of {} left the enumerated family",
                                t.label()
                            )))
                        }
                    }
                }
            };
            row.push(entry);
        }
        neighbors.push(row);
    }
    let snap = Arc::new(Snapshot {
        objects: compat.objects,
        tiltings,
        tid_of,
        neighbors,
        truncated: enumeration.truncated,
    });
    guard.insert(*p, snap.clone());
    Ok(snap)
}

fn sorted_ids(snap: &Snapshot, t: &ClusterTilting) -> Result<usize> {
    let mut ids = Vec::with_capacity(t.summands().len());
    for s in t.summands() {
        let id = snap
            .objects
            .binary_search_by(|o| o.entries().cmp(s.entries()))
            .map_err(|_| Error::Validation(format!("{s} is not an object of this model")))?;
        ids.push(id);
    }
    ids.sort_unstable();
    snap.tid_of.get(&ids).copied().ok_or_else(|| {
        if snap.truncated {
            Error::BudgetExceeded(format!(
                "enumeration budget ran out before covering {}",
                t.label()
            ))
        } else {
            Error::Invariant(format!("{} missing from the enumerated family", t.label()))
        }
    })
}

/// Breadth-first mutation path between two tiltings, FIFO over ascending
/// slots. Returns the exchanged (outgoing id, incoming id) pairs from
/// source to target.
fn mutation_path(snap: &Snapshot, from: usize, to: usize) -> Result<Vec<(usize, usize)>> {
    if from == to {
        return Ok(Vec::new());
    }
    let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None; snap.tiltings.len()];
    let mut seen = vec![false; snap.tiltings.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(tid) = queue.pop_front() {
        for (slot, entry) in snap.neighbors[tid].iter().enumerate() {
            let Some((ntid, in_id)) = *entry else { continue };
            if seen[ntid] {
                continue;
            }
            seen[ntid] = true;
            parent[ntid] = Some((tid, snap.tiltings[tid][slot], in_id));
            if ntid == to {
                let mut path = Vec::new();
                let mut cur = to;
                while cur != from {
                    let (prev, out_id, in_id) = parent[cur].expect("parent chain reaches source");
                    path.push((out_id, in_id));
                    cur = prev;
                }
                path.reverse();
                return Ok(path);
            }
            queue.push_back(ntid);
        }
    }
    if snap.truncated {
        Err(Error::BudgetExceeded(
            "enumeration budget ran out before connecting the bases".into(),
        ))
    } else {
        Err(Error::Disconnected(
            "no mutation path connects the bases".into(),
        ))
    }
}

/// The index of any object over the given basis, for odd d: the unit vector
/// at its slot when it is a summand, otherwise the unit vector over a
/// completion transported along a mutation path and re-expressed in the
/// stored slot order of `t`.
pub fn compute_index(t: &ClusterTilting, j: &IndexTuple) -> Result<IndexVector> {
    let p = t.params();
    if p.d() % 2 == 0 {
        return Err(Error::UnsupportedDimension(format!(
            "index transport needs odd d, got d = {}",
            p.d()
        )));
    }
    if let Some(pos) = t.position_of(j) {
        return IndexVector::unit(t, pos);
    }
    let snap = snapshot(&p)?;
    let u = complete_to_tilting(std::slice::from_ref(j), &p)?;
    let path = mutation_path(&snap, sorted_ids(&snap, &u)?, sorted_ids(&snap, t)?)?;
    let start = u.position_of(j).expect("completion keeps its seed");
    let mut v = IndexVector::unit(&u, start)?;
    for (out_id, _) in path {
        let out = &snap.objects[out_id];
        let slot = v
            .basis()
            .position_of(out)
            .expect("path steps leave the current basis");
        v = apply_index_substitution(&v, slot)?;
    }
    v.rebase(t)
}

/// The summed index of a pairwise compatible multiset of objects.
pub fn compute_index_sum(t: &ClusterTilting, objects: &[IndexTuple]) -> Result<IndexVector> {
    let p = t.params();
    for (i, a) in objects.iter().enumerate() {
        for b in &objects[i + 1..] {
            if intertwines(a, b, &p) {
                return Err(Error::RigidityViolation(format!(
                    "{a} and {b} intertwine; a summable family must be pairwise compatible"
                )));
            }
        }
    }
    let mut coeffs = vec![0i64; t.summands().len()];
    for j in objects {
        let v = compute_index(t, j)?;
        for (acc, c) in coeffs.iter_mut().zip(v.coeffs()) {
            *acc += c;
        }
    }
    IndexVector::new(t.clone(), coeffs)
}
