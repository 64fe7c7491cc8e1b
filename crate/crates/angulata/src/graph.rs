//! The exchange graph: tiltings as nodes, mutations as edges.
//!
//! Node ids are deterministic: full enumeration orders nodes
//! lexicographically, component search orders them by first discovery in a
//! FIFO sweep visiting slots in ascending order. Edges are undirected and
//! recorded once, labeled by the exchanged pair as read from the
//! lower-numbered endpoint.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::budget::Budget;
use crate::error::Result;
use crate::params::ModelParams;
use crate::tilting::{
    enumerate_tiltings, find_replacement_with, ClusterTilting, Compat,
};
use crate::tuple::IndexTuple;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeEdge {
    pub from: usize,
    pub to: usize,
    /// Summand leaving the `from` node along this edge.
    pub outgoing: IndexTuple,
    /// Summand of the `to` node replacing it.
    pub incoming: IndexTuple,
}

#[derive(Debug)]
pub struct ExchangeGraph {
    pub params: ModelParams,
    pub nodes: Vec<ClusterTilting>,
    pub edges: Vec<ExchangeEdge>,
    /// True when a budget cut enumeration or traversal short.
    pub truncated: bool,
}

impl ExchangeGraph {
    /// DOT export; node labels are semicolon-joined tuples, edge labels
    /// "R -> R*".
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for (i, t) in self.nodes.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", t.label()).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  n{} -- n{} [label=\"{} -> {}\"];",
                e.from, e.to, e.outgoing, e.incoming
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn key_of(t: &ClusterTilting) -> Vec<Vec<u32>> {
    let mut k: Vec<Vec<u32>> = t.summands().iter().map(|s| s.entries().to_vec()).collect();
    k.sort_unstable();
    k
}

fn edges_among(
    compat: &Compat,
    nodes: &[ClusterTilting],
) -> Result<(Vec<ExchangeEdge>, bool)> {
    let index: HashMap<Vec<Vec<u32>>, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, t)| (key_of(t), i))
        .collect();
    let mut edges = Vec::new();
    let mut missing_neighbor = false;
    for (i, t) in nodes.iter().enumerate() {
        for pos in 0..t.summands().len() {
            let Some(incoming) = find_replacement_with(compat, t, pos)? else {
                continue;
            };
            let mut k = key_of(t);
            let slot = k
                .iter()
                .position(|e| e == t.summands()[pos].entries())
                .expect("summand present in its own key");
            k[slot] = incoming.entries().to_vec();
            k.sort_unstable();
            match index.get(&k) {
                Some(&j) if i < j => edges.push(ExchangeEdge {
                    from: i,
                    to: j,
                    outgoing: t.summands()[pos].clone(),
                    incoming,
                }),
                Some(_) => {}
                // Neighbor fell outside a truncated node list.
                None => missing_neighbor = true,
            }
        }
    }
    Ok((edges, missing_neighbor))
}

/// Graph over all tiltings of the model. A budget may truncate the node
/// list; edges into missing nodes are dropped and the flag is set.
pub fn exchange_graph(p: &ModelParams, budget: &Budget) -> Result<ExchangeGraph> {
    let enumeration = enumerate_tiltings(p, budget)?;
    let compat = Compat::build(p);
    let (edges, missing) = edges_among(&compat, &enumeration.tiltings)?;
    Ok(ExchangeGraph {
        params: *p,
        nodes: enumeration.tiltings,
        edges,
        truncated: enumeration.truncated || missing,
    })
}

/// Breadth-first component of a seed tilting, FIFO over ascending slots,
/// stopping at the node budget.
pub fn exchange_graph_component(
    seed: &ClusterTilting,
    budget: &Budget,
) -> Result<ExchangeGraph> {
    let p = seed.params();
    let compat = Compat::build(&p);
    let mut clock = budget.start();
    let mut nodes = vec![seed.clone()];
    let mut seen: HashMap<Vec<Vec<u32>>, usize> = HashMap::new();
    seen.insert(key_of(seed), 0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut truncated = false;
    'bfs: while let Some(i) = queue.pop_front() {
        let t = nodes[i].clone();
        for pos in 0..t.summands().len() {
            if !clock.tick() {
                truncated = true;
                break 'bfs;
            }
            let Some(incoming) = find_replacement_with(&compat, &t, pos)? else {
                continue;
            };
            let mut summands = t.summands().to_vec();
            summands[pos] = incoming;
            let neighbor = ClusterTilting::from_maximal(p, summands)?;
            let key = key_of(&neighbor);
            if !seen.contains_key(&key) {
                seen.insert(key, nodes.len());
                queue.push_back(nodes.len());
                nodes.push(neighbor);
            }
        }
    }
    let (edges, missing) = edges_among(&compat, &nodes)?;
    Ok(ExchangeGraph {
        params: p,
        nodes,
        edges,
        truncated: truncated || missing,
    })
}
