//! Rank the accounts and URL domains amplified by coordinated groups.
//!
//! Run with: `cargo run --example amplification`

use std::collections::BTreeSet;

use coornet::detect::{detect, DetectionParams};
use coornet::ingest::{group_tweets, RetweetRecord};
use coornet::synth::{generate, SynthConfig};
use coornet::{amplified_accounts, amplified_domains};

fn main() {
    println!("=== Amplified accounts on a planted scenario ===\n");

    let config = SynthConfig {
        amplified_authors: vec!["campaign_hq".into(), "loud_voice".into()],
        ..SynthConfig::default()
    };
    let (records, _) = generate(&config).unwrap();
    let groups = group_tweets(&records);
    let detection = detect(&groups, &DetectionParams::default()).unwrap();
    let coordinated = detection.coordinated_group_ids(&groups, false);
    println!("{} coordinated groups feed the ranking", coordinated.len());

    let ranking = amplified_accounts(&groups, &coordinated, 10);
    println!("top {} amplified accounts:", ranking.entries.len());
    for (rank, entry) in ranking.entries.iter().enumerate() {
        println!(
            "  {:>2}. {:<14} {:>5} coordinated retweets ({:.1}% of the top slice)",
            rank + 1,
            entry.name,
            entry.count,
            entry.share * 100.0
        );
    }

    println!("\n=== Amplified domains ===\n");

    // URL-bearing records; the synthetic generator itself emits none, so
    // attach a few by hand the way a DS-2-style dataset would carry them.
    let urls = [
        "https://www.example.com/story",
        "https://example.com/other",
        "https://news.org/a",
        "not a url at all",
    ];
    let with_urls: Vec<RetweetRecord> = records
        .iter()
        .take(400)
        .cloned()
        .enumerate()
        .map(|(i, mut r)| {
            r.urls = vec![urls[i % urls.len()].to_string()];
            r
        })
        .collect();
    let coordinated: BTreeSet<String> = with_urls.iter().map(|r| r.tweet_id.clone()).collect();
    let domains = amplified_domains(&with_urls, &coordinated, 10);
    for entry in &domains.entries {
        println!("  {:<14} {:>4} urls ({:.1}%)", entry.name, entry.count, entry.share * 100.0);
    }
    println!(
        "\n`www.` and case fold into one domain; {} malformed urls were skipped",
        domains.skipped_urls
    );
}
