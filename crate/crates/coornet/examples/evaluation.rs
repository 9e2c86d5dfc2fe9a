//! Score detections against a ground-truth bot list with the confusion
//! matrix and the derived rates.
//!
//! Run with: `cargo run --example evaluation`

use coornet::detect::{detect, DetectionParams};
use coornet::evaluate::{evaluate, Metrics, TierSelector};
use coornet::ingest::group_tweets;
use coornet::synth::{generate, SynthConfig};

fn main() {
    println!("=== Rates from raw counts ===\n");

    // 5460 predictions, 181 of them bots, 313 bots in total.
    let m = Metrics::from_counts(181, 5279, 132, 375_464);
    println!("tp={} fp={} fn={} tn={}", m.tp, m.fp, m.fn_, m.tn);
    println!("recall    {:.2}%  <- headline metric", m.recall * 100.0);
    println!("precision {:.2}%", m.precision * 100.0);
    println!("f1        {:.2}%", m.f1 * 100.0);
    println!("accuracy  {:.2}%  <- inflated by the huge human majority", m.accuracy * 100.0);

    println!("\nWith a tiny positive class, accuracy stays high no matter what;");
    println!("recall tells you how much of the botnet was actually caught.\n");

    println!("=== Scoring a detection run ===\n");
    let (records, truth) = generate(&SynthConfig::default()).unwrap();
    let groups = group_tweets(&records);
    let detection = detect(&groups, &DetectionParams::default()).unwrap();

    // The universe defaults to every retweeting account in the dataset.
    let universe = records.iter().map(|r| r.retweeter.clone()).collect();

    for (label, selector) in [
        ("tier1", TierSelector::Tier1),
        ("tier2", TierSelector::Tier2),
        ("both", TierSelector::Both),
    ] {
        let predicted = selector.select(&detection.tiers.tier1, &detection.tiers.tier2);
        let metrics = evaluate(&predicted, &truth, &universe).unwrap();
        println!(
            "{label:<6} predicted={:<4} recall={:.4} precision={:.4} f1={:.4}",
            predicted.len(),
            metrics.recall,
            metrics.precision,
            metrics.f1
        );
    }
}
