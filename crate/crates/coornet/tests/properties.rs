//! Property tests for the structural invariants: canonical round-trips,
//! permutation-invariant grouping, conservation laws and scheduling
//! determinism.

use std::collections::{BTreeSet, HashSet};

use coornet::detect::{detect, DetectionParams};
use coornet::evaluate::{evaluate, Metrics};
use coornet::ingest::{group_tweets, parse_canonical, write_canonical, RetweetRecord};
use coornet::synth::{generate, CountRange, SynthConfig};
use coornet::{amplified_accounts, classify_bots};

use proptest::prelude::*;

fn name_strategy() -> impl Strategy<Value = String> {
    // Includes CSV-hostile characters; the writer must quote its way out.
    proptest::string::string_regex("[a-zA-Z0-9_,\\. \"@#]{1,12}").unwrap()
}

fn url_strategy() -> impl Strategy<Value = String> {
    proptest::string::string_regex("https?://[a-z]{1,8}\\.(com|org|net)(/[a-z0-9]{0,5})?").unwrap()
}

prop_compose! {
    fn record_strategy(index: usize)(
        tweet in "[a-z0-9]{1,6}",
        author in name_strategy(),
        retweeter in name_strategy(),
        timestamp in 0u64..1_000_000,
        urls in proptest::collection::vec(url_strategy(), 0..3),
    ) -> RetweetRecord {
        RetweetRecord {
            tweet_id: tweet,
            // Uniqueness across the dataset comes from the index.
            retweet_id: format!("r{index:04}"),
            author,
            retweeter,
            timestamp,
            urls,
            text: None,
        }
    }
}

fn records_strategy(max: usize) -> impl Strategy<Value = Vec<RetweetRecord>> {
    (1..max).prop_flat_map(|n| {
        (0..n).map(record_strategy).collect::<Vec<_>>()
    })
}

proptest! {
    #[test]
    fn canonical_round_trip_is_exact(records in records_strategy(40)) {
        let mut bytes = Vec::new();
        write_canonical(&mut bytes, &records).unwrap();
        let parsed = parse_canonical(bytes.as_slice()).unwrap();
        prop_assert_eq!(parsed, records);
    }

    #[test]
    fn grouping_is_permutation_invariant(
        records in records_strategy(40).prop_flat_map(|r| {
            let len = r.len();
            (Just(r), proptest::sample::subsequence((0..len).collect::<Vec<_>>(), len))
        }).prop_map(|(r, _)| r),
        shuffle_seed in 0u64..1000,
    ) {
        let baseline = group_tweets(&records);
        let mut shuffled = records.clone();
        // Deterministic pseudo-shuffle driven by the seed.
        let n = shuffled.len();
        for i in (1..n).rev() {
            let j = ((shuffle_seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64)) % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        prop_assert_eq!(group_tweets(&shuffled), baseline);
    }

    #[test]
    fn group_sizes_conserve_records(records in records_strategy(40)) {
        let groups = group_tweets(&records);
        let total: usize = groups.iter().map(|g| g.retweets.len()).sum();
        prop_assert_eq!(total, records.len());

        let mut seen = HashSet::new();
        for group in &groups {
            for rt in &group.retweets {
                prop_assert!(seen.insert(rt.retweet_id.clone()), "retweet id in two groups");
            }
        }
        prop_assert_eq!(seen.len(), records.len());
    }

    #[test]
    fn amplification_counts_conserve_retweets(records in records_strategy(40)) {
        let groups = group_tweets(&records);
        let coordinated: BTreeSet<String> =
            groups.iter().map(|g| g.tweet_id.clone()).collect();
        // k large enough to keep every entity: the shares then cover all
        // coordinated retweets exactly.
        let ranking = amplified_accounts(&groups, &coordinated, usize::MAX);
        let total: u64 = ranking.entries.iter().map(|e| e.count).sum();
        prop_assert_eq!(total, records.len() as u64);
    }

    #[test]
    fn confusion_matrix_partitions_universe(
        flags in proptest::collection::vec((any::<bool>(), any::<bool>()), 1..60)
    ) {
        let universe: BTreeSet<String> =
            (0..flags.len()).map(|i| format!("u{i}")).collect();
        let predicted: BTreeSet<String> = flags
            .iter()
            .enumerate()
            .filter(|(_, (p, _))| *p)
            .map(|(i, _)| format!("u{i}"))
            .collect();
        let truth: BTreeSet<String> = flags
            .iter()
            .enumerate()
            .filter(|(_, (_, t))| *t)
            .map(|(i, _)| format!("u{i}"))
            .collect();
        let m = evaluate(&predicted, &truth, &universe).unwrap();
        prop_assert_eq!(m.tp + m.fp + m.fn_ + m.tn, universe.len() as u64);
        let recomputed = Metrics::from_counts(m.tp, m.fp, m.fn_, m.tn);
        prop_assert_eq!(m, recomputed);
    }
}

/// Rayon may schedule the projection merge differently per run; the output
/// must not care.
#[test]
fn detection_is_scheduling_independent() {
    let config = SynthConfig {
        n_humans: 400,
        n_bots: 8,
        n_botnets: 2,
        n_groups: 200,
        human_retweets_per_group: CountRange { min: 4, max: 12 },
        bot_target_groups_per_botnet: 20,
        bot_reaction_delay_max: 5,
        seed: 31,
        ..SynthConfig::default()
    };
    let (records, _) = generate(&config).unwrap();
    let groups = group_tweets(&records);
    let params = DetectionParams::default();

    let baseline = detect(&groups, &params).unwrap();
    for _ in 0..5 {
        let run = detect(&groups, &params).unwrap();
        assert_eq!(run.tiers, baseline.tiers);
        assert_eq!(run.graph, baseline.graph);
        assert_eq!(run.suspect_graph, baseline.suspect_graph);
    }
    let report = classify_bots(&groups, &params).unwrap();
    assert_eq!(report, baseline.tiers);
}
