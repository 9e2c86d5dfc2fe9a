//! Louvain community detection over the highly coordinated graph.
//!
//! Standard two-phase scheme: greedy local moving until no single-node move
//! improves modularity, then aggregation of communities into super-nodes,
//! repeated until the modularity gain of a whole level drops under
//! [`CONVERGENCE_EPSILON`]. The node visit order is the lexicographic
//! account order shuffled by a ChaCha8 stream seeded from `seed`, which
//! makes runs reproducible bit for bit.

use std::collections::BTreeMap;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::detect::CoordGraph;
use crate::error::{Error, Result};

/// Stop iterating levels once a full level improves Q by less than this.
pub const CONVERGENCE_EPSILON: f64 = 1e-9;

/// Cap on local-moving passes per level, guarding against floating-point
/// churn producing endless sub-epsilon improvements.
const MAX_PASSES_PER_LEVEL: usize = 256;

/// A labeling of every graph node with a community id, plus the modularity
/// of that labeling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityAssignment {
    /// Account -> community id; ids are dense integers starting at 0.
    pub labels: BTreeMap<String, usize>,
    pub modularity: f64,
    pub resolution: f64,
    pub seed: u64,
}

impl CommunityAssignment {
    pub fn community_count(&self) -> usize {
        self.labels.values().copied().max().map_or(0, |m| m + 1)
    }

    /// Members of each community, sorted; index = community id.
    pub fn communities(&self) -> Vec<Vec<&str>> {
        let mut out: Vec<Vec<&str>> = vec![Vec::new(); self.community_count()];
        for (account, &community) in &self.labels {
            out[community].push(account);
        }
        out
    }
}

/// One level of the aggregated graph.
struct LevelGraph {
    /// Neighbor lists sorted by index; no self entries.
    adj: Vec<Vec<(usize, f64)>>,
    /// Self-loop weight per node (intra-community weight folded in by
    /// aggregation; zero at the original level).
    self_loops: Vec<f64>,
    /// Weighted degree per node; self-loops count twice.
    degrees: Vec<f64>,
    /// Total edge weight m (self-loops once).
    total_weight: f64,
}

impl LevelGraph {
    fn node_count(&self) -> usize {
        self.adj.len()
    }

    fn from_coord_graph(graph: &CoordGraph) -> LevelGraph {
        let n = graph.node_count();
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut total_weight = 0.0;
        for &(a, b, w) in &graph.edges {
            let w = w as f64;
            adj[a as usize].push((b as usize, w));
            adj[b as usize].push((a as usize, w));
            total_weight += w;
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(j, _)| j);
        }
        let degrees = adj
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        LevelGraph {
            adj,
            self_loops: vec![0.0; n],
            degrees,
            total_weight,
        }
    }

    /// Modularity of a partition of this level at resolution `gamma`.
    fn modularity(&self, labels: &[usize], gamma: f64) -> f64 {
        let m = self.total_weight;
        if m == 0.0 {
            return 0.0;
        }
        let communities = labels.iter().copied().max().map_or(0, |c| c + 1);
        let mut internal = vec![0.0f64; communities];
        let mut totals = vec![0.0f64; communities];
        for node in 0..self.node_count() {
            let c = labels[node];
            totals[c] += self.degrees[node];
            internal[c] += self.self_loops[node];
            for &(neighbor, w) in &self.adj[node] {
                if neighbor > node && labels[neighbor] == c {
                    internal[c] += w;
                }
            }
        }
        let mut q = 0.0;
        for c in 0..communities {
            q += internal[c] / m - gamma * (totals[c] / (2.0 * m)).powi(2);
        }
        q
    }

    /// Collapse communities into super-nodes. `labels` must be dense from 0.
    fn aggregate(&self, labels: &[usize], community_count: usize) -> LevelGraph {
        let mut weights: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); community_count];
        let mut self_loops = vec![0.0f64; community_count];
        for node in 0..self.node_count() {
            let c = labels[node];
            self_loops[c] += self.self_loops[node];
            for &(neighbor, w) in &self.adj[node] {
                let nc = labels[neighbor];
                if nc == c {
                    if neighbor > node {
                        self_loops[c] += w;
                    }
                } else {
                    *weights[c].entry(nc).or_insert(0.0) += w;
                }
            }
        }
        let adj: Vec<Vec<(usize, f64)>> = weights
            .into_iter()
            .map(|map| map.into_iter().collect())
            .collect();
        let degrees = adj
            .iter()
            .enumerate()
            .map(|(c, list)| {
                list.iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self_loops[c]
            })
            .collect();
        LevelGraph {
            adj,
            self_loops,
            degrees,
            total_weight: self.total_weight,
        }
    }
}

/// In-place Fisher-Yates driven by ChaCha8, so the permutation depends only
/// on the seed and the stream position.
fn shuffle(order: &mut [usize], rng: &mut ChaCha8Rng) {
    for i in (1..order.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
}

/// One local-moving phase. Returns the partition (dense labels) and whether
/// any node moved.
fn local_moving(
    level: &LevelGraph,
    gamma: f64,
    order: &[usize],
) -> (Vec<usize>, usize, bool) {
    let n = level.node_count();
    let m = level.total_weight;
    let mut node_to_comm: Vec<usize> = (0..n).collect();
    let mut comm_totals: Vec<f64> = level.degrees.clone();
    let mut moved_any = false;

    let mut neighbor_weights: Vec<f64> = vec![0.0; n];
    let mut touched: Vec<usize> = Vec::new();

    for _pass in 0..MAX_PASSES_PER_LEVEL {
        let mut moved_this_pass = false;
        for &node in order {
            let current = node_to_comm[node];
            let k_i = level.degrees[node];
            comm_totals[current] -= k_i;

            for &(neighbor, w) in &level.adj[node] {
                let c = node_to_comm[neighbor];
                if neighbor_weights[c] == 0.0 {
                    touched.push(c);
                }
                neighbor_weights[c] += w;
            }

            // Candidate score: weight into the community minus the degree
            // penalty; differences of these are modularity gains times m.
            let score = |c: usize, w_into: f64| w_into - gamma * k_i * comm_totals[c] / (2.0 * m);
            let mut best = current;
            let mut best_score = score(current, neighbor_weights[current]);
            touched.sort_unstable();
            for &c in &touched {
                if c == current {
                    continue;
                }
                let s = score(c, neighbor_weights[c]);
                if s > best_score {
                    best = c;
                    best_score = s;
                }
            }

            for &c in &touched {
                neighbor_weights[c] = 0.0;
            }
            touched.clear();

            node_to_comm[node] = best;
            comm_totals[best] += k_i;
            if best != current {
                moved_this_pass = true;
                moved_any = true;
            }
        }
        if !moved_this_pass {
            break;
        }
    }

    // Renumber to dense labels, id order following the smallest member.
    let mut dense = vec![usize::MAX; n];
    let mut next = 0usize;
    let mut labels = vec![0usize; n];
    for node in 0..n {
        let c = node_to_comm[node];
        if dense[c] == usize::MAX {
            dense[c] = next;
            next += 1;
        }
        labels[node] = dense[c];
    }
    (labels, next, moved_any)
}

/// Louvain community detection.
///
/// Deterministic for a fixed `(graph, resolution, seed)` triple; the
/// returned modularity is evaluated on the original graph.
pub fn louvain(graph: &CoordGraph, resolution: f64, seed: u64) -> Result<CommunityAssignment> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = LevelGraph::from_coord_graph(graph);
    // graph.nodes is sorted lexicographically, so index order is the
    // lexicographic account order the shuffle permutes.
    let mut global_labels: Vec<usize> = (0..graph.node_count()).collect();
    let mut best_q = level.modularity(&global_labels, resolution);

    loop {
        let mut order: Vec<usize> = (0..level.node_count()).collect();
        shuffle(&mut order, &mut rng);
        let (partition, community_count, moved) = local_moving(&level, resolution, &order);
        if !moved {
            break;
        }
        let q = level.modularity(&partition, resolution);
        for label in &mut global_labels {
            *label = partition[*label];
        }
        let gain = q - best_q;
        best_q = q;
        if community_count == level.node_count() || gain < CONVERGENCE_EPSILON {
            break;
        }
        level = level.aggregate(&partition, community_count);
    }

    // Dense ids in order of first appearance over the sorted account list.
    let mut dense = vec![usize::MAX; graph.node_count()];
    let mut next = 0usize;
    let mut labels = BTreeMap::new();
    for (node, account) in graph.nodes.iter().enumerate() {
        let c = global_labels[node];
        if dense[c] == usize::MAX {
            dense[c] = next;
            next += 1;
        }
        labels.insert(account.clone(), dense[c]);
    }
    let final_labels: Vec<usize> = (0..graph.node_count())
        .map(|i| dense[global_labels[i]])
        .collect();
    let q = LevelGraph::from_coord_graph(graph).modularity(&final_labels, resolution);

    Ok(CommunityAssignment {
        labels,
        modularity: q,
        resolution,
        seed,
    })
}

/// Modularity of an arbitrary labeling of `graph` at `resolution`.
pub fn modularity(
    graph: &CoordGraph,
    labels: &BTreeMap<String, usize>,
    resolution: f64,
) -> Result<f64> {
    let indexed: Vec<usize> = graph
        .nodes
        .iter()
        .map(|account| {
            labels
                .get(account)
                .copied()
                .ok_or_else(|| Error::UnlabeledNode(account.clone()))
        })
        .collect::<Result<_>>()?;
    Ok(LevelGraph::from_coord_graph(graph).modularity(&indexed, resolution))
}
