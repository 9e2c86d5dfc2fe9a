//! Generate synthetic retweet datasets with planted botnets, including the
//! two evasion scenarios.
//!
//! Run with: `cargo run --example simulate_botnets`

use coornet::ingest::group_tweets;
use coornet::synth::{generate, EvasionMode, SynthConfig};

fn main() {
    println!("=== Synthetic cascade generation ===\n");

    let config = SynthConfig::default();
    let (records, truth) = generate(&config).unwrap();
    let groups = group_tweets(&records);
    println!("default scenario (seed {}):", config.seed);
    println!("  {} retweet records in {} tweet groups", records.len(), groups.len());
    println!("  {} humans, {} bots in {} botnets", config.n_humans, truth.len(), config.n_botnets);
    println!(
        "  each botnet hits {} groups within {} s of the first retweet\n",
        config.bot_target_groups_per_botnet, config.bot_reaction_delay_max
    );

    // The planted groups are the fastest ones: compare the first-to-second
    // gap of a targeted group against a human-only group.
    let gap_of = |id: &str| {
        groups
            .iter()
            .find(|g| g.tweet_id == id)
            .and_then(|g| g.first_to_second_gap())
            .unwrap()
    };
    println!("first-to-second retweet gaps:");
    println!("  targeted group t000000:   {} s", gap_of("t000000"));
    println!("  human-only group t000400: {} s", gap_of("t000400"));

    println!("\ndeterminism: same config twice gives identical output: {}", {
        let (again, _) = generate(&config).unwrap();
        again == records
    });

    for (name, mode) in [
        ("relaxed_timing", EvasionMode::RelaxedTiming),
        ("split_communities", EvasionMode::SplitCommunities),
    ] {
        let evasive = SynthConfig {
            evasion_mode: mode,
            ..SynthConfig::default()
        };
        let (evasive_records, _) = generate(&evasive).unwrap();
        let evasive_groups = group_tweets(&evasive_records);
        let gap = evasive_groups
            .iter()
            .find(|g| g.tweet_id == "t000000")
            .and_then(|g| g.first_to_second_gap())
            .unwrap();
        println!("\nevasion `{name}`:");
        println!("  {} records, targeted-group gap now {} s", evasive_records.len(), gap);
    }

    println!("\nScenario JSON for the CLI (`coornet simulate --scenario file.json`):");
    println!("{}", serde_json::to_string_pretty(&config).unwrap());
}
