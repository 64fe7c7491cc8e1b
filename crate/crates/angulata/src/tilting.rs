//! Cluster tilting collections and their mutation.
//!
//! A cluster tilting collection is a pairwise-non-intertwining set of
//! admissible tuples of the largest possible size N(d, n), equivalently a
//! triangulation of the even dimensional cyclic polytope on m vertices. For
//! d = 1 every inclusion-maximal compatible set already has that size; for
//! d > 1 strictly smaller inclusion-maximal dead ends exist (no tuple extends
//! them, yet they are not tilting), so the constructors and the enumeration
//! go by size, not by mere unextendability. Completion therefore has to
//! backtrack out of such dead ends instead of extending greedily.
//!
//! Mutation at a slot removes that summand and looks for the unique other
//! admissible tuple keeping the collection tilting. For d = 1 every slot is
//! mutable (diagonal flips); for d > 1 some slots are not, and the search
//! honestly reports that. Two or more candidates would falsify a uniqueness
//! assumption and raise an invariant error rather than pick one.
//!
//! The summand order is part of the value: coefficients of index vectors are
//! read against it, and mutation writes the incoming summand into the slot of
//! the outgoing one so coefficient positions stay aligned.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

use crate::budget::{Budget, BudgetClock};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::tuple::{enumerate_objects, intertwines, is_admissible, IndexTuple};

/// Minimal bitset helpers over u64 words; deterministic ascending iteration.
pub(crate) mod bits {
    pub fn new(len: usize) -> Vec<u64> {
        vec![0; len.div_ceil(64)]
    }

    pub fn full(len: usize) -> Vec<u64> {
        let mut words = vec![!0u64; len.div_ceil(64)];
        let tail = len % 64;
        if tail != 0 {
            *words.last_mut().unwrap() = (1u64 << tail) - 1;
        }
        words
    }

    pub fn set(bs: &mut [u64], i: usize) {
        bs[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(bs: &mut [u64], i: usize) {
        bs[i / 64] &= !(1 << (i % 64));
    }

    pub fn and_into(dst: &mut [u64], src: &[u64]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d &= s;
        }
    }

    pub fn is_empty(bs: &[u64]) -> bool {
        bs.iter().all(|&w| w == 0)
    }

    pub fn count(bs: &[u64]) -> usize {
        bs.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(bs: &[u64]) -> impl Iterator<Item = usize> + '_ {
        bs.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Object universe with the pairwise compatibility relation as bitset rows.
/// rows[i] has bit j set iff i != j and objects i, j do not intertwine.
pub(crate) struct Compat {
    pub objects: Vec<IndexTuple>,
    pub id_of: HashMap<Vec<u32>, usize>,
    pub rows: Vec<Vec<u64>>,
}

impl Compat {
    pub fn build(p: &ModelParams) -> Compat {
        let objects = enumerate_objects(p);
        let k = objects.len();
        let id_of = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.entries().to_vec(), i))
            .collect();
        let mut rows = vec![bits::new(k); k];
        for i in 0..k {
            for j in i + 1..k {
                if !intertwines(&objects[i], &objects[j], p) {
                    bits::set(&mut rows[i], j);
                    bits::set(&mut rows[j], i);
                }
            }
        }
        Compat {
            objects,
            id_of,
            rows,
        }
    }

    pub fn id(&self, t: &IndexTuple) -> Option<usize> {
        self.id_of.get(t.entries()).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClusterTilting {
    params: ModelParams,
    summands: Vec<IndexTuple>,
}

impl ClusterTilting {
    /// Full validation: admissible, distinct, pairwise non-intertwining, and
    /// of the common tilting size (which forces maximality). The provided
    /// summand order is kept.
    pub fn new(params: ModelParams, summands: Vec<IndexTuple>) -> Result<Self> {
        for s in &summands {
            if !is_admissible(s.entries(), &params)? {
                return Err(Error::Validation(format!("summand {s} is not admissible")));
            }
        }
        validate_rigid_distinct(&summands, &params)?;
        if summands.len() != params.tilting_size() {
            return Err(Error::Validation(format!(
                "collection has size {} but every tilting collection here has size {}",
                summands.len(),
                params.tilting_size()
            )));
        }
        Ok(ClusterTilting { params, summands })
    }

    /// For collections produced by internal search, already known pairwise
    /// non-intertwining; checks only the common size, whose failure would
    /// mean the search itself broke.
    pub(crate) fn from_maximal(params: ModelParams, summands: Vec<IndexTuple>) -> Result<Self> {
        if summands.len() != params.tilting_size() {
            return Err(Error::Invariant(format!(
                "search produced a collection of size {} where tilting collections have size {}",
                summands.len(),
                params.tilting_size()
            )));
        }
        Ok(ClusterTilting { params, summands })
    }

    pub fn params(&self) -> ModelParams {
        self.params
    }

    pub fn summands(&self) -> &[IndexTuple] {
        &self.summands
    }

    pub fn position_of(&self, t: &IndexTuple) -> Option<usize> {
        self.summands.iter().position(|s| s == t)
    }

    /// Same underlying set, ignoring slot order.
    pub fn same_set(&self, other: &ClusterTilting) -> bool {
        self.params == other.params && {
            let mut a = self.summands.clone();
            let mut b = other.summands.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
    }

    /// Semicolon-joined tuples, e.g. "0,2;0,3".
    pub fn label(&self) -> String {
        self.summands
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Loads the file format {"d": .., "n": .., "summands": [[..], ..]},
    /// keeping the file's summand order.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: TiltingFileRaw = serde_json::from_str(s)
            .map_err(|e| Error::Validation(format!("bad tilting file: {e}")))?;
        let params = ModelParams::new(raw.d, raw.n)?;
        let summands = raw
            .summands
            .into_iter()
            .map(|entries| IndexTuple::new(entries, &params))
            .collect::<Result<Vec<_>>>()?;
        ClusterTilting::new(params, summands)
    }

    pub fn to_json_string(&self) -> String {
        let raw = TiltingFileRaw {
            d: self.params.d(),
            n: self.params.n(),
            summands: self
                .summands
                .iter()
                .map(|s| s.entries().to_vec())
                .collect(),
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

impl fmt::Display for ClusterTilting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Serialize, Deserialize)]
struct TiltingFileRaw {
    d: u32,
    n: u32,
    summands: Vec<Vec<u32>>,
}

fn validate_rigid_distinct(summands: &[IndexTuple], p: &ModelParams) -> Result<()> {
    for (i, a) in summands.iter().enumerate() {
        for b in &summands[i + 1..] {
            if a == b {
                return Err(Error::Validation(format!("repeated summand {a}")));
            }
            if intertwines(a, b, p) {
                return Err(Error::Validation(format!(
                    "summands {a} and {b} intertwine"
                )));
            }
        }
    }
    Ok(())
}

/// First admissible tuple outside the collection compatible with every
/// member, in lexicographic order; None when the collection is
/// inclusion-maximal. For d > 1 inclusion-maximality is weaker than being
/// tilting: dead-end families below the tilting size exist.
#[cfg(test)]
fn extension_of(summands: &[IndexTuple], compat: &Compat) -> Option<IndexTuple> {
    let ids: Vec<usize> = summands.iter().filter_map(|s| compat.id(s)).collect();
    let mut cands = bits::full(compat.objects.len());
    for &i in &ids {
        bits::and_into(&mut cands, &compat.rows[i]);
    }
    let found = bits::iter_ones(&cands).find(|i| !ids.contains(i));
    found.map(|i| compat.objects[i].clone())
}

/// True iff the members are pairwise non-intertwining and the collection
/// has the common tilting size. For d > 1 a pairwise compatible family can
/// be inclusion-maximal yet smaller; such dead ends are not tilting and
/// yield `false`. Malformed members (inadmissible, repeated) are validation
/// errors, not `false`.
pub fn is_cluster_tilting(coll: &[IndexTuple], p: &ModelParams) -> Result<bool> {
    for s in coll {
        if !is_admissible(s.entries(), p)? {
            return Err(Error::Validation(format!("member {s} is not admissible")));
        }
    }
    for (i, a) in coll.iter().enumerate() {
        if coll[i + 1..].contains(a) {
            return Err(Error::Validation(format!("repeated member {a}")));
        }
        for b in &coll[i + 1..] {
            if intertwines(a, b, p) {
                return Ok(false);
            }
        }
    }
    Ok(coll.len() == p.tilting_size())
}

/// Greedy lexicographic extension with backtracking to the common tilting
/// size; deterministic, returning the lexicographically first completion.
/// A family no tilting collection contains (possible for d > 1) is a
/// validation error. The result is sorted lexicographically.
pub fn complete_to_tilting(partial: &[IndexTuple], p: &ModelParams) -> Result<ClusterTilting> {
    for s in partial {
        if !is_admissible(s.entries(), p)? {
            return Err(Error::Validation(format!("member {s} is not admissible")));
        }
    }
    validate_rigid_distinct(partial, p)?;
    let need = p.tilting_size();
    if partial.len() > need {
        return Err(Error::Invariant(format!(
            "pairwise non-intertwining family of size {} exceeds the tilting size {}",
            partial.len(),
            need
        )));
    }
    let compat = Compat::build(p);
    let mut chosen: Vec<usize> = partial
        .iter()
        .map(|s| compat.id(s).expect("validated above"))
        .collect();
    let mut cands = bits::full(compat.objects.len());
    for &i in &chosen {
        bits::and_into(&mut cands, &compat.rows[i]);
        bits::clear(&mut cands, i);
    }
    if !extend_to_size(&compat, need, &mut chosen, &cands) {
        return Err(Error::Validation(format!(
            "no tilting collection of size {need} contains the given members"
        )));
    }
    chosen.sort_unstable();
    let summands = chosen.iter().map(|&i| compat.objects[i].clone()).collect();
    ClusterTilting::from_maximal(*p, summands)
}

/// Depth-first growth of `chosen` to `need` members, trying candidates in
/// ascending id order and recursing only on larger ids, so the first hit is
/// the lexicographically least completion. `cands` holds exactly the ids
/// compatible with everything in `chosen`.
fn extend_to_size(compat: &Compat, need: usize, chosen: &mut Vec<usize>, cands: &[u64]) -> bool {
    if chosen.len() == need {
        return true;
    }
    if chosen.len() + bits::count(cands) < need {
        return false;
    }
    let mut work = cands.to_vec();
    for v in bits::iter_ones(cands) {
        bits::clear(&mut work, v);
        let mut next = work.clone();
        bits::and_into(&mut next, &compat.rows[v]);
        chosen.push(v);
        if extend_to_size(compat, need, chosen, &next) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug)]
pub struct TiltingEnumeration {
    pub tiltings: Vec<ClusterTilting>,
    /// True when the node or time budget cut the search short; the listed
    /// collections are still genuine tilting collections, just not
    /// exhaustive.
    pub truncated: bool,
}

/// All non-intertwining collections of the common tilting size, each sorted
/// lexicographically, emitted in lexicographic order of their member lists.
/// Backtracking over lexicographic candidates with a node/time budget.
/// Inclusion-maximal dead ends below the tilting size (they exist for
/// d > 1) are skipped; a larger compatible family would break the common
/// size and raises an invariant error.
pub fn enumerate_tiltings(p: &ModelParams, budget: &Budget) -> Result<TiltingEnumeration> {
    let compat = Compat::build(p);
    let k = compat.objects.len();
    let need = p.tilting_size();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut clock = budget.start();
    let complete = bron_kerbosch(
        &compat,
        &mut Vec::new(),
        bits::full(k),
        bits::new(k),
        &mut out,
        &mut clock,
    );
    let mut tiltings = Vec::new();
    for ids in out {
        if ids.len() < need {
            continue;
        }
        let summands = ids.iter().map(|&i| compat.objects[i].clone()).collect();
        tiltings.push(ClusterTilting::from_maximal(*p, summands)?);
    }
    Ok(TiltingEnumeration {
        tiltings,
        truncated: !complete,
    })
}

/// Maximal clique enumeration; candidates processed in ascending id order,
/// so cliques come out sorted and in lexicographic order. Returns false if
/// the budget ran out (out then holds a prefix of the full answer).
fn bron_kerbosch(
    compat: &Compat,
    r: &mut Vec<usize>,
    p_set: Vec<u64>,
    mut x_set: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
    clock: &mut BudgetClock,
) -> bool {
    if !clock.tick() {
        return false;
    }
    if bits::is_empty(&p_set) && bits::is_empty(&x_set) {
        out.push(r.clone());
        return true;
    }
    let mut p_work = p_set.clone();
    for v in bits::iter_ones(&p_set) {
        let mut p_next = p_work.clone();
        bits::and_into(&mut p_next, &compat.rows[v]);
        let mut x_next = x_set.clone();
        bits::and_into(&mut x_next, &compat.rows[v]);
        r.push(v);
        let ok = bron_kerbosch(compat, r, p_next, x_next, out, clock);
        r.pop();
        if !ok {
            return false;
        }
        bits::clear(&mut p_work, v);
        bits::set(&mut x_set, v);
    }
    true
}

/// The unique admissible tuple outside T that can replace the summand at
/// `pos` keeping the collection tilting; None when the summand is not
/// mutable. Two candidates would violate uniqueness and raise an invariant
/// error.
pub fn find_replacement(t: &ClusterTilting, pos: usize) -> Result<Option<IndexTuple>> {
    let compat = Compat::build(&t.params);
    find_replacement_with(&compat, t, pos)
}

pub(crate) fn find_replacement_with(
    compat: &Compat,
    t: &ClusterTilting,
    pos: usize,
) -> Result<Option<IndexTuple>> {
    if pos >= t.summands.len() {
        return Err(Error::Validation(format!(
            "position {pos} out of range for {} summands",
            t.summands.len()
        )));
    }
    let ids: Vec<usize> = t
        .summands
        .iter()
        .map(|s| compat.id(s).expect("tilting members are enumerated objects"))
        .collect();
    let mut cands = bits::full(compat.objects.len());
    for (i, &id) in ids.iter().enumerate() {
        if i != pos {
            bits::and_into(&mut cands, &compat.rows[id]);
        }
    }
    let mut found: Option<usize> = None;
    for v in bits::iter_ones(&cands) {
        if ids.contains(&v) {
            continue;
        }
        if let Some(first) = found {
            return Err(Error::Invariant(format!(
                "two distinct replacements for slot {pos} of {}: {} and {}",
                t.label(),
                compat.objects[first],
                compat.objects[v]
            )));
        }
        found = Some(v);
    }
    Ok(found.map(|v| compat.objects[v].clone()))
}

/// Which alternating subsequence of the frame carries the outgoing summand:
/// even positions b0, b2, ... or odd positions b1, b3, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The (2d+2)-tuple b0 < b1 < ... < b_{2d+1} merging the outgoing summand R
/// and its replacement R*, which strictly alternate in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeFrame {
    b: Vec<u32>,
    r_parity: Parity,
}

impl ExchangeFrame {
    pub(crate) fn build(
        p: &ModelParams,
        outgoing: &IndexTuple,
        incoming: &IndexTuple,
    ) -> Result<Self> {
        let mut b: Vec<u32> = outgoing
            .entries()
            .iter()
            .chain(incoming.entries())
            .copied()
            .collect();
        b.sort_unstable();
        if b.len() != 2 * p.tuple_len() || b.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!(
                "exchange pair {outgoing} / {incoming} shares vertices"
            )));
        }
        let in_outgoing: Vec<bool> = b.iter().map(|v| outgoing.entries().contains(v)).collect();
        if in_outgoing.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!(
                "exchange pair {outgoing} / {incoming} does not alternate in its frame"
            )));
        }
        let r_parity = if in_outgoing[0] { Parity::Even } else { Parity::Odd };
        Ok(ExchangeFrame { b, r_parity })
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    pub fn r_parity(&self) -> Parity {
        self.r_parity
    }

    fn subsequence(&self, parity: Parity) -> Vec<u32> {
        let start = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        self.b.iter().skip(start).step_by(2).copied().collect()
    }

    /// Positions (within b) of the outgoing summand's entries.
    pub(crate) fn r_positions(&self) -> Vec<usize> {
        let start = match self.r_parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        (start..self.b.len()).step_by(2).collect()
    }

    pub fn outgoing(&self) -> IndexTuple {
        IndexTuple::from_unsorted(self.subsequence(self.r_parity))
    }

    pub fn incoming(&self) -> IndexTuple {
        let other = match self.r_parity {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        };
        IndexTuple::from_unsorted(self.subsequence(other))
    }
}

/// Replaces the summand at `pos` by its unique exchange partner, keeping the
/// slot, and returns the new collection with the frame of the exchanged pair.
pub fn mutate(t: &ClusterTilting, pos: usize) -> Result<(ClusterTilting, ExchangeFrame)> {
    let compat = Compat::build(&t.params);
    mutate_with(&compat, t, pos)
}

pub(crate) fn mutate_with(
    compat: &Compat,
    t: &ClusterTilting,
    pos: usize,
) -> Result<(ClusterTilting, ExchangeFrame)> {
    let incoming = find_replacement_with(compat, t, pos)?.ok_or(Error::NotMutable { pos })?;
    let frame = ExchangeFrame::build(&t.params, &t.summands[pos], &incoming)?;
    let mut summands = t.summands.clone();
    summands[pos] = incoming;
    let mutated = ClusterTilting::from_maximal(t.params, summands)?;
    Ok((mutated, frame))
}
