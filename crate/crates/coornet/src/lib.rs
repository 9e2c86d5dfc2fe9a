//! Coordinated retweet network detection.
//!
//! Given a log of retweet events, this crate finds groups of accounts that
//! retweet the same tweets unnaturally fast and unnaturally often, labels
//! the resulting coordination graph with Louvain communities, ranks the
//! accounts and domains those networks amplify, scores detections against
//! ground-truth bot lists, and exports Gephi-compatible graph files.
//!
//! The detection runs in two phases. Phase one looks at each tweet group
//! (an original tweet plus all its retweets) and estimates Threshold 1: the
//! largest first-to-second-retweet gap within the fastest tenth of groups.
//! Groups at or under that gap become suspects. Phase two projects group
//! membership onto an account-account graph whose edge weights count
//! co-retweeted groups, and keeps pairs at or above Threshold 2, the median
//! retweet count needed to reach half a suspect group. Accounts surviving
//! the filter over suspect groups are Tier-1 bots; accounts surviving it
//! over the whole dataset, minus Tier-1, are Tier-2.
//!
//! Every stage is deterministic: seeded ChaCha8 randomness, stable sort
//! orders, and byte-stable writers, so identical inputs always reproduce
//! identical artifacts.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and the `coornet` binary for the file-based CLI.

pub mod amplify;
pub mod cli;
pub mod community;
pub mod detect;
pub mod error;
pub mod evaluate;
pub mod ingest;
pub mod logging;
pub mod report;
pub mod synth;

pub use amplify::{amplified_accounts, amplified_domains, AmplificationRanking};
pub use community::{louvain, modularity, CommunityAssignment};
pub use detect::{
    classify_bots, detect, filter_coordinated, project_coordination, CoordGraph, Detection,
    DetectionParams, Thresholds, TierReport,
};
pub use error::{Error, Result};
pub use evaluate::{evaluate, sweep_t2, Metrics, SweepRow, TierSelector};
pub use ingest::{group_tweets, parse_canonical, parse_mapped, RetweetRecord, TweetGroup};
pub use report::{DetectionReport, GraphFormat};
pub use synth::{generate, SynthConfig};
