//! The two-phase detection walkthrough: threshold estimation, suspect
//! flagging, bipartite projection, filtering, and the two bot tiers.
//!
//! Run with: `cargo run --example detect_botnets`

use coornet::detect::{
    build_bipartite, detect, estimate_threshold1, estimate_threshold2, flag_suspect_groups,
    filter_coordinated, project_coordination, DetectionParams,
};
use coornet::ingest::group_tweets;
use coornet::synth::{generate, SynthConfig};

fn main() {
    let (records, truth) = generate(&SynthConfig::default()).unwrap();
    let groups = group_tweets(&records);
    let params = DetectionParams::default();

    println!("=== Phase one: timing ===\n");
    let (t1, _) = estimate_threshold1(&groups, &params).unwrap();
    println!(
        "Threshold 1 = {t1} s (largest first-to-second gap in the fastest {}% of groups)",
        (params.decile_fraction * 100.0) as u32
    );
    let suspects = flag_suspect_groups(&groups, t1);
    println!("{} of {} groups flagged as suspects", suspects.len(), groups.len());

    let (t2, _) = estimate_threshold2(&groups, &suspects, &params).unwrap();
    println!("\n=== Phase two: frequency ===\n");
    println!("Threshold 2 = {t2} co-retweeted groups (median count to reach half a suspect group)");

    let bipartite = build_bipartite(&groups, &suspects);
    println!(
        "bipartite graph over suspects: {} groups x {} accounts, {} edges",
        bipartite.group_ids.len(),
        bipartite.accounts.len(),
        bipartite.edge_count()
    );
    let projected = project_coordination(&bipartite);
    println!(
        "projected coordination graph: {} accounts, {} weighted edges",
        projected.node_count(),
        projected.edge_count()
    );
    let filtered = filter_coordinated(&projected, t2);
    println!(
        "after the Threshold-2 filter: {} accounts, {} edges (the highly coordinated graph)",
        filtered.node_count(),
        filtered.edge_count()
    );

    println!("\n=== Tiers ===\n");
    let detection = detect(&groups, &params).unwrap();
    let tiers = &detection.tiers;
    println!("tier1 (fast and frequent): {} accounts", tiers.tier1.len());
    println!("tier2 (frequent only):     {} accounts", tiers.tier2.len());

    let caught = tiers
        .tier1
        .union(&tiers.tier2)
        .filter(|a| truth.contains(*a))
        .count();
    println!(
        "\n{} of {} planted bots detected; sample: {:?}",
        caught,
        truth.len(),
        tiers.tier1.iter().take(4).collect::<Vec<_>>()
    );
}
