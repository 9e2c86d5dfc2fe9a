//! Deterministic synthetic retweet-cascade generator with planted botnets.
//!
//! Humans retweet with heavy-tailed (log-normal) inter-retweet gaps. Each
//! botnet's bots hit all of their target groups within a short window of the
//! group's first retweet, with near-equal spacing, so the planted groups land
//! in the fastest decile whenever the delay cap is below the typical human
//! gap. Two evasion modes reproduce the known blind spots: `relaxed_timing`
//! stretches the bot window a hundredfold, and `split_communities` spreads
//! each botnet's targets over rotating bot pairs so no pair co-retweets
//! often enough to cross Threshold 2.
//!
//! All randomness comes from a ChaCha8 stream seeded by `seed`; identical
//! configs give byte-identical output for the same build of this crate.

use std::collections::{BTreeSet, HashSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::RetweetRecord;

/// Inclusive range for the human retweet count per group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRange {
    pub min: u64,
    pub max: u64,
}

/// Log-normal parameters in log-seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogNormalParams {
    pub mu: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EvasionMode {
    #[default]
    None,
    RelaxedTiming,
    SplitCommunities,
}

/// Scenario description; serializes as the JSON scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_humans: u64,
    pub n_bots: u64,
    pub n_botnets: u64,
    pub n_groups: u64,
    pub human_retweets_per_group: CountRange,
    pub bot_target_groups_per_botnet: u64,
    /// Cap in seconds on how long after a group's first retweet a bot may
    /// retweet (before any evasion stretching).
    pub bot_reaction_delay_max: u64,
    pub human_irt_lognormal: LogNormalParams,
    pub evasion_mode: EvasionMode,
    /// Authors assigned round-robin to the botnet target groups; when empty
    /// the generic author pool is used everywhere.
    pub amplified_authors: Vec<String>,
    pub seed: u64,
}

impl Default for SynthConfig {
    /// The default scenario: 2000 humans, 20 bots in 2 botnets of 10, each
    /// botnet hitting 40 of the 800 groups within 5 seconds.
    fn default() -> Self {
        SynthConfig {
            n_humans: 2000,
            n_bots: 20,
            n_botnets: 2,
            n_groups: 800,
            human_retweets_per_group: CountRange { min: 5, max: 15 },
            bot_target_groups_per_botnet: 40,
            bot_reaction_delay_max: 5,
            // Median human gap ~300 s with a heavy tail.
            human_irt_lognormal: LogNormalParams {
                mu: 5.703782,
                sigma: 1.5,
            },
            evasion_mode: EvasionMode::None,
            amplified_authors: Vec::new(),
            seed: 42,
        }
    }
}

impl SynthConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_botnets > 0 {
            if self.n_bots < 2 * self.n_botnets {
                return Err(Error::InvalidConfig(format!(
                    "{} botnets need at least {} bots (2 per botnet), got {}",
                    self.n_botnets,
                    2 * self.n_botnets,
                    self.n_bots
                )));
            }
            if self.n_botnets * self.bot_target_groups_per_botnet > self.n_groups {
                return Err(Error::InvalidConfig(format!(
                    "{} botnets x {} target groups exceed the {} groups available",
                    self.n_botnets, self.bot_target_groups_per_botnet, self.n_groups
                )));
            }
        } else if self.n_bots > 0 {
            return Err(Error::InvalidConfig(
                "n_bots > 0 requires n_botnets > 0".into(),
            ));
        }
        let range = &self.human_retweets_per_group;
        if range.min > range.max {
            return Err(Error::InvalidConfig(format!(
                "human_retweets_per_group min {} exceeds max {}",
                range.min, range.max
            )));
        }
        if range.max > self.n_humans {
            return Err(Error::InvalidConfig(format!(
                "human_retweets_per_group max {} exceeds the {} humans available",
                range.max, self.n_humans
            )));
        }
        if self.n_humans > 0 && range.min == 0 {
            return Err(Error::InvalidConfig(
                "human_retweets_per_group min must be >= 1 so every group has a seed retweet"
                    .into(),
            ));
        }
        let sigma = self.human_irt_lognormal.sigma;
        if sigma.is_nan() || sigma < 0.0 {
            return Err(Error::InvalidConfig("lognormal sigma must be >= 0".into()));
        }
        Ok(())
    }

    /// Bot account names per botnet; sizes differ by at most one.
    fn botnet_members(&self) -> Vec<Vec<String>> {
        let mut botnets = Vec::with_capacity(self.n_botnets as usize);
        let base = self.n_bots.checked_div(self.n_botnets).unwrap_or(0);
        let remainder = self.n_bots.checked_rem(self.n_botnets).unwrap_or(0);
        let mut next = 0u64;
        for b in 0..self.n_botnets {
            let size = base + u64::from(b < remainder);
            let members = (next..next + size)
                .map(|i| format!("bot{b:02}_{i:04}"))
                .collect();
            next += size;
            botnets.push(members);
        }
        botnets
    }
}

/// Cap human gaps at 30 days so a tail draw cannot dwarf the timeline.
const MAX_HUMAN_GAP: u64 = 30 * 86_400;
const TIMELINE_START: u64 = 1_600_000_000;

/// All unordered pairs (i, j), i < j, in lexicographic order.
fn unordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Generate a deterministic synthetic dataset and its ground-truth bot set.
pub fn generate(config: &SynthConfig) -> Result<(Vec<RetweetRecord>, BTreeSet<String>)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let gap_dist = LogNormal::new(config.human_irt_lognormal.mu, config.human_irt_lognormal.sigma)
        .map_err(|e| Error::InvalidConfig(format!("lognormal parameters: {e}")))?;

    let botnets = config.botnet_members();
    let truth: BTreeSet<String> = botnets.iter().flatten().cloned().collect();

    let author_pool: Vec<String> = (0..100).map(|i| format!("author_{i:03}")).collect();
    let humans: Vec<String> = (0..config.n_humans)
        .map(|i| format!("human_{i:05}"))
        .collect();

    // Botnet b targets the contiguous block of groups starting at
    // b * bot_target_groups_per_botnet; blocks are disjoint.
    let targeted_by = |group: u64| -> Option<usize> {
        if config.n_botnets == 0 || config.bot_target_groups_per_botnet == 0 {
            return None;
        }
        let block = group / config.bot_target_groups_per_botnet;
        (block < config.n_botnets).then_some(block as usize)
    };

    let span = config.n_groups.max(1) * 600;
    let mut records = Vec::new();
    let mut botnet_group_ordinal = vec![0u64; config.n_botnets as usize];

    for group in 0..config.n_groups {
        let tweet_id = format!("t{group:06}");
        let base_time = TIMELINE_START + rng.next_u64() % span;

        let target = targeted_by(group);
        let author = match (target, config.amplified_authors.is_empty()) {
            (Some(_), false) => {
                config.amplified_authors[(group % config.amplified_authors.len() as u64) as usize]
                    .clone()
            }
            _ => author_pool[(rng.next_u64() % author_pool.len() as u64) as usize].clone(),
        };

        let mut seq = 0u32;
        let mut push = |retweeter: &str, timestamp: u64, records: &mut Vec<RetweetRecord>| {
            records.push(RetweetRecord {
                tweet_id: tweet_id.clone(),
                retweet_id: format!("{tweet_id}_r{seq:04}"),
                author: author.clone(),
                retweeter: retweeter.to_string(),
                timestamp,
                urls: Vec::new(),
                text: None,
            });
            seq += 1;
        };

        let mut group_records = Vec::new();

        // Human cascade: seed retweet at the base time, then log-normal gaps.
        let range = config.human_retweets_per_group;
        let human_count = if config.n_humans == 0 {
            0
        } else {
            range.min + rng.next_u64() % (range.max - range.min + 1)
        };
        if human_count > 0 {
            let mut chosen = HashSet::with_capacity(human_count as usize);
            let mut time = base_time;
            for drawn in 0..human_count {
                let human = loop {
                    let pick = (rng.next_u64() % config.n_humans) as usize;
                    if chosen.insert(pick) {
                        break &humans[pick];
                    }
                };
                if drawn > 0 {
                    let gap = gap_dist.sample(&mut rng).round() as u64;
                    time += gap.clamp(1, MAX_HUMAN_GAP);
                }
                push(human, time, &mut group_records);
            }
        }

        // Planted bot retweets, relative to the group's first retweet.
        if let Some(botnet) = target {
            let members = &botnets[botnet];
            let delay_cap = match config.evasion_mode {
                EvasionMode::RelaxedTiming => config.bot_reaction_delay_max * 100,
                _ => config.bot_reaction_delay_max,
            };
            let active: Vec<&String> = match config.evasion_mode {
                EvasionMode::SplitCommunities => {
                    let pairs = unordered_pairs(members.len());
                    let ordinal = botnet_group_ordinal[botnet];
                    botnet_group_ordinal[botnet] += 1;
                    let (i, j) = pairs[(ordinal % pairs.len() as u64) as usize];
                    vec![&members[i], &members[j]]
                }
                _ => members.iter().collect(),
            };
            let count = active.len() as u64;
            for (rank, bot) in active.iter().enumerate() {
                let offset = delay_cap * (rank as u64 + 1) / count;
                push(bot, base_time + offset, &mut group_records);
            }
        }

        group_records.sort_by(|a, b| {
            a.timestamp
                .cmp(&b.timestamp)
                .then_with(|| a.retweet_id.cmp(&b.retweet_id))
        });
        records.extend(group_records);
    }

    Ok((records, truth))
}
