//! Two-phase coordinated-retweet detection.
//!
//! Phase one estimates a time threshold from the fastest decile of
//! first-to-second retweet gaps and flags the tweet groups at or under it.
//! Phase two projects group membership onto a weighted account-account graph
//! and keeps the pairs that co-retweet at least Threshold 2 groups. Accounts
//! surviving the filter over suspect groups are Tier-1 bots; accounts
//! surviving it over all groups, minus Tier-1, are Tier-2.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::TweetGroup;

/// Tuning knobs for the detection pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionParams {
    /// Fraction of fastest groups used for Threshold-1 estimation.
    pub decile_fraction: f64,
    /// Fraction of a group's retweets defining "reach half".
    pub half_fraction: f64,
    /// Fixed Threshold 1 in seconds instead of estimating it.
    pub t1_override: Option<u64>,
    /// Fixed Threshold 2 (co-retweet count) instead of estimating it.
    pub t2_override: Option<u64>,
    /// Cap on the number of earliest retweeters enumerated per group during
    /// projection. Off by default; quadratic per-group cost otherwise.
    pub max_group_pair_size: Option<usize>,
}

impl Default for DetectionParams {
    fn default() -> Self {
        DetectionParams {
            decile_fraction: 0.10,
            half_fraction: 0.50,
            t1_override: None,
            t2_override: None,
            max_group_pair_size: None,
        }
    }
}

impl DetectionParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.decile_fraction > 0.0 && self.decile_fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "decile_fraction must be in (0, 1], got {}",
                self.decile_fraction
            )));
        }
        if !(self.half_fraction > 0.0 && self.half_fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "half_fraction must be in (0, 1], got {}",
                self.half_fraction
            )));
        }
        if self.t2_override == Some(0) {
            return Err(Error::InvalidConfig("t2 override must be positive".into()));
        }
        if self.max_group_pair_size == Some(0) {
            return Err(Error::InvalidConfig(
                "max_group_pair_size must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Whether a threshold came out of the estimator or was forced by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdSource {
    Estimated,
    Overridden,
}

/// The two thresholds driving detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub t1_seconds: u64,
    pub t1_source: ThresholdSource,
    pub t2_count: u64,
    pub t2_source: ThresholdSource,
}

/// Tweet groups on the left, accounts on the right; an edge means the
/// account retweeted the group at least once.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    /// Left partition: tweet group ids, sorted.
    pub group_ids: Vec<String>,
    /// Right partition: account names, sorted.
    pub accounts: Vec<String>,
    /// For each left node, the account indices it connects to, ordered by
    /// each account's earliest retweet of the group. Multiplicity is
    /// always 1.
    pub edges: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// Weighted undirected account-account coordination graph. Edge weight is
/// the number of distinct tweet groups both endpoints retweeted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoordGraph {
    /// Account names, sorted lexicographically; edge endpoints index here.
    pub nodes: Vec<String>,
    /// Incident-edge count per node (parallel to `nodes`).
    pub degrees: Vec<u32>,
    /// Edges (a, b, weight) with a < b, sorted by (a, b).
    pub edges: Vec<(u32, u32, u64)>,
}

impl CoordGraph {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_set(&self) -> BTreeSet<String> {
        self.nodes.iter().cloned().collect()
    }

    /// Look up an edge weight by account names, in either order.
    pub fn weight_between(&self, a: &str, b: &str) -> Option<u64> {
        let ia = self.nodes.binary_search_by(|n| n.as_str().cmp(a)).ok()? as u32;
        let ib = self.nodes.binary_search_by(|n| n.as_str().cmp(b)).ok()? as u32;
        let key = if ia < ib { (ia, ib) } else { (ib, ia) };
        self.edges
            .binary_search_by(|&(x, y, _)| (x, y).cmp(&key))
            .ok()
            .map(|i| self.edges[i].2)
    }

    /// Build from (account, account, weight) triples; nodes are the accounts
    /// that appear in at least one edge.
    pub fn from_weighted_pairs<I>(pairs: I) -> CoordGraph
    where
        I: IntoIterator<Item = (String, String, u64)>,
    {
        let mut weights: HashMap<(String, String), u64> = HashMap::new();
        for (a, b, w) in pairs {
            if a == b {
                continue;
            }
            let key = if a < b { (a, b) } else { (b, a) };
            *weights.entry(key).or_insert(0) += w;
        }
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for (a, b) in weights.keys() {
            names.insert(a);
            names.insert(b);
        }
        let nodes: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, u32> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u32))
            .collect();
        let mut edges: Vec<(u32, u32, u64)> = weights
            .into_iter()
            .map(|((a, b), w)| (index[a.as_str()], index[b.as_str()], w))
            .collect();
        edges.sort_unstable_by_key(|&(a, b, _)| (a, b));
        let mut degrees = vec![0u32; nodes.len()];
        for &(a, b, _) in &edges {
            degrees[a as usize] += 1;
            degrees[b as usize] += 1;
        }
        CoordGraph {
            nodes,
            degrees,
            edges,
        }
    }
}

/// Detection output: both bot tiers plus the evidence behind them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TierReport {
    /// Accounts satisfying both thresholds on the suspect subset.
    pub tier1: BTreeSet<String>,
    /// Accounts coordinating frequently without the fast-timing evidence.
    pub tier2: BTreeSet<String>,
    /// Suspect tweet groups (first-to-second gap at or under Threshold 1).
    pub flagged_group_ids: BTreeSet<String>,
    pub thresholds: Thresholds,
}

/// Estimate Threshold 1: the largest first-to-second-retweet gap inside the
/// fastest `decile_fraction` of eligible tweet groups. Groups with fewer
/// than two retweets are excluded.
pub fn estimate_threshold1(
    groups: &[TweetGroup],
    params: &DetectionParams,
) -> Result<(u64, ThresholdSource)> {
    if let Some(t1) = params.t1_override {
        return Ok((t1, ThresholdSource::Overridden));
    }
    let mut gaps: Vec<u64> = groups
        .iter()
        .filter_map(TweetGroup::first_to_second_gap)
        .collect();
    if gaps.is_empty() {
        return Err(Error::Estimation(
            "no tweet group has two or more retweets; supply a t1 override".into(),
        ));
    }
    gaps.sort_unstable();
    let k = ((params.decile_fraction * gaps.len() as f64).ceil() as usize).max(1);
    Ok((gaps[k - 1], ThresholdSource::Estimated))
}

/// Flag tweet groups whose first-to-second gap is at or under `t1`.
/// Single-retweet groups are never flagged.
pub fn flag_suspect_groups(groups: &[TweetGroup], t1: u64) -> BTreeSet<String> {
    groups
        .iter()
        .filter(|g| g.first_to_second_gap().is_some_and(|gap| gap <= t1))
        .map(|g| g.tweet_id.clone())
        .collect()
}

/// Estimate Threshold 2: the lower median, over flagged groups, of the
/// retweet count needed to reach `half_fraction` of the group. Never
/// returns less than 1.
pub fn estimate_threshold2(
    groups: &[TweetGroup],
    flagged: &BTreeSet<String>,
    params: &DetectionParams,
) -> Result<(u64, ThresholdSource)> {
    if let Some(t2) = params.t2_override {
        return Ok((t2, ThresholdSource::Overridden));
    }
    let mut counts: Vec<u64> = groups
        .iter()
        .filter(|g| flagged.contains(&g.tweet_id))
        .map(|g| (params.half_fraction * g.retweets.len() as f64).ceil() as u64)
        .collect();
    if counts.is_empty() {
        return Err(Error::Estimation(
            "no suspect groups to estimate from; supply a t2 override".into(),
        ));
    }
    counts.sort_unstable();
    let position = counts.len().div_ceil(2); // lower median, 1-based
    Ok((counts[position - 1].max(1), ThresholdSource::Estimated))
}

/// Build the bipartite group-account graph restricted to `id_set`.
pub fn build_bipartite(groups: &[TweetGroup], id_set: &BTreeSet<String>) -> BipartiteGraph {
    let selected: Vec<&TweetGroup> = groups
        .iter()
        .filter(|g| id_set.contains(&g.tweet_id))
        .collect();

    let mut account_names: BTreeSet<&str> = BTreeSet::new();
    for g in &selected {
        for rt in &g.retweets {
            account_names.insert(&rt.retweeter);
        }
    }
    let accounts: Vec<String> = account_names.iter().map(|s| s.to_string()).collect();
    let index: HashMap<&str, u32> = accounts
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i as u32))
        .collect();

    // `selected` follows the groups slice which is sorted by tweet id; the
    // restriction set may come from elsewhere, so re-sort.
    let mut left: Vec<(&str, Vec<u32>)> = selected
        .iter()
        .map(|g| {
            let adj: Vec<u32> = g
                .distinct_retweeters()
                .into_iter()
                .map(|a| index[a])
                .collect();
            (g.tweet_id.as_str(), adj)
        })
        .collect();
    left.sort_unstable_by_key(|(id, _)| *id);

    BipartiteGraph {
        group_ids: left.iter().map(|(id, _)| id.to_string()).collect(),
        accounts,
        edges: left.into_iter().map(|(_, adj)| adj).collect(),
    }
}

/// Project the bipartite graph onto accounts: weight(a, b) is the number of
/// groups both retweeted. Accounts with no co-retweet partner are dropped.
pub fn project_coordination(bipartite: &BipartiteGraph) -> CoordGraph {
    project_with_cap(bipartite, None)
}

/// Projection with the optional per-group enumeration cap. When a group has
/// more distinct retweeters than the cap, only its earliest `cap` accounts
/// are paired and a warning is logged.
pub fn project_with_cap(bipartite: &BipartiteGraph, cap: Option<usize>) -> CoordGraph {
    let weights: HashMap<(u32, u32), u64> = bipartite
        .edges
        .par_iter()
        .enumerate()
        .fold(HashMap::new, |mut acc: HashMap<(u32, u32), u64>, (gi, adj)| {
            let members: &[u32] = match cap {
                Some(cap) if adj.len() > cap => {
                    crate::logging::warn(format!(
                        "group {} has {} distinct retweeters; pairing only the earliest {}",
                        bipartite.group_ids[gi],
                        adj.len(),
                        cap
                    ));
                    &adj[..cap]
                }
                _ => adj,
            };
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    // Members come in retweet-time order; canonicalize so
                    // the pair key is ordered by account index.
                    let key = if a < b { (a, b) } else { (b, a) };
                    *acc.entry(key).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut left, right| {
            for (pair, w) in right {
                *left.entry(pair).or_insert(0) += w;
            }
            left
        });

    let mut used: Vec<bool> = vec![false; bipartite.accounts.len()];
    for &(a, b) in weights.keys() {
        used[a as usize] = true;
        used[b as usize] = true;
    }
    let mut remap: Vec<u32> = vec![u32::MAX; bipartite.accounts.len()];
    let mut nodes = Vec::new();
    for (old, &keep) in used.iter().enumerate() {
        if keep {
            remap[old] = nodes.len() as u32;
            nodes.push(bipartite.accounts[old].clone());
        }
    }
    let mut edges: Vec<(u32, u32, u64)> = weights
        .into_iter()
        .map(|((a, b), w)| (remap[a as usize], remap[b as usize], w))
        .collect();
    edges.sort_unstable_by_key(|&(a, b, _)| (a, b));
    let mut degrees = vec![0u32; nodes.len()];
    for &(a, b, _) in &edges {
        degrees[a as usize] += 1;
        degrees[b as usize] += 1;
    }
    CoordGraph {
        nodes,
        degrees,
        edges,
    }
}

/// Keep edges with weight >= `t2`, drop isolated nodes, recompute degrees.
pub fn filter_coordinated(graph: &CoordGraph, t2: u64) -> CoordGraph {
    let kept: Vec<(u32, u32, u64)> = graph
        .edges
        .iter()
        .copied()
        .filter(|&(_, _, w)| w >= t2)
        .collect();
    let mut used = vec![false; graph.nodes.len()];
    for &(a, b, _) in &kept {
        used[a as usize] = true;
        used[b as usize] = true;
    }
    let mut remap = vec![u32::MAX; graph.nodes.len()];
    let mut nodes = Vec::new();
    for (old, &keep) in used.iter().enumerate() {
        if keep {
            remap[old] = nodes.len() as u32;
            nodes.push(graph.nodes[old].clone());
        }
    }
    let mut edges: Vec<(u32, u32, u64)> = kept
        .into_iter()
        .map(|(a, b, w)| (remap[a as usize], remap[b as usize], w))
        .collect();
    edges.sort_unstable_by_key(|&(a, b, _)| (a, b));
    let mut degrees = vec![0u32; nodes.len()];
    for &(a, b, _) in &edges {
        degrees[a as usize] += 1;
        degrees[b as usize] += 1;
    }
    CoordGraph {
        nodes,
        degrees,
        edges,
    }
}

/// Everything the two detection phases produce, kept so downstream stages
/// (communities, amplification, reporting) do not recompute it.
#[derive(Debug, Clone)]
pub struct Detection {
    pub tiers: TierReport,
    /// Highly coordinated graph over all groups; node set = tier1 + tier2.
    pub graph: CoordGraph,
    /// Coordination graph restricted to suspect groups, after filtering.
    pub suspect_graph: CoordGraph,
    /// Group count with >= 2 retweets (eligible for gap estimation).
    pub eligible_groups: usize,
    /// Distinct retweeter accounts across the whole dataset.
    pub account_count: usize,
}

impl Detection {
    /// Tweet groups amplified by the detected pairs: the suspect set plus
    /// every group co-retweeted by a pair that survives the Threshold-2
    /// filter. With `suspect_only` only the suspect set is returned.
    pub fn coordinated_group_ids(
        &self,
        groups: &[TweetGroup],
        suspect_only: bool,
    ) -> BTreeSet<String> {
        let mut out = self.tiers.flagged_group_ids.clone();
        if suspect_only {
            return out;
        }
        let flagged_nodes: HashSet<&str> = self.graph.nodes.iter().map(String::as_str).collect();
        let edge_set: HashSet<(&str, &str)> = self
            .graph
            .edges
            .iter()
            .map(|&(a, b, _)| {
                (
                    self.graph.nodes[a as usize].as_str(),
                    self.graph.nodes[b as usize].as_str(),
                )
            })
            .collect();
        for group in groups {
            if out.contains(&group.tweet_id) {
                continue;
            }
            let mut members: Vec<&str> = group
                .distinct_retweeters()
                .into_iter()
                .filter(|a| flagged_nodes.contains(a))
                .collect();
            members.sort_unstable();
            let coordinated = members.iter().enumerate().any(|(i, &a)| {
                members[i + 1..]
                    .iter()
                    .any(|&b| edge_set.contains(&(a, b)))
            });
            if coordinated {
                out.insert(group.tweet_id.clone());
            }
        }
        out
    }
}

/// Run both detection phases.
pub fn detect(groups: &[TweetGroup], params: &DetectionParams) -> Result<Detection> {
    params.validate()?;
    if groups.is_empty() {
        return Err(Error::Estimation(
            "no tweet groups in input; nothing to detect".into(),
        ));
    }

    let (t1, t1_source) = estimate_threshold1(groups, params)?;
    let flagged = flag_suspect_groups(groups, t1);
    let (t2, t2_source) = estimate_threshold2(groups, &flagged, params)?;

    let all_ids: BTreeSet<String> = groups.iter().map(|g| g.tweet_id.clone()).collect();
    let suspect_graph = filter_coordinated(
        &project_with_cap(&build_bipartite(groups, &flagged), params.max_group_pair_size),
        t2,
    );
    let full_graph = filter_coordinated(
        &project_with_cap(&build_bipartite(groups, &all_ids), params.max_group_pair_size),
        t2,
    );

    let tier1 = suspect_graph.node_set();
    let tier2: BTreeSet<String> = full_graph.node_set().difference(&tier1).cloned().collect();

    let eligible_groups = groups
        .iter()
        .filter(|g| g.retweets.len() >= 2)
        .count();
    let account_count = {
        let mut accounts: HashSet<&str> = HashSet::new();
        for g in groups {
            for rt in &g.retweets {
                accounts.insert(&rt.retweeter);
            }
        }
        accounts.len()
    };

    Ok(Detection {
        tiers: TierReport {
            tier1,
            tier2,
            flagged_group_ids: flagged,
            thresholds: Thresholds {
                t1_seconds: t1,
                t1_source,
                t2_count: t2,
                t2_source,
            },
        },
        graph: full_graph,
        suspect_graph,
        eligible_groups,
        account_count,
    })
}

/// Classify accounts into the two bot tiers. Thin wrapper over [`detect`]
/// for callers that only need the tier sets.
pub fn classify_bots(groups: &[TweetGroup], params: &DetectionParams) -> Result<TierReport> {
    detect(groups, params).map(|d| d.tiers)
}
