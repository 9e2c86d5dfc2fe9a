//! Who benefits from the coordination: the accounts whose tweets collect
//! the most retweets from coordinated groups, and the URL domains those
//! retweets push.

use std::collections::BTreeSet;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::ingest::{RetweetRecord, TweetGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankKind {
    Account,
    Domain,
}

/// One ranked entity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub name: String,
    pub count: u64,
    /// Fraction of the total over the returned entries (the top-k slice),
    /// matching what a pie chart of the ranking displays.
    pub share: f64,
}

/// Top-k amplified accounts or domains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplificationRanking {
    pub kind: RankKind,
    pub k: usize,
    pub entries: Vec<RankEntry>,
    /// URLs skipped because no host could be parsed; always 0 for account
    /// rankings.
    pub skipped_urls: u64,
}

fn ranked(kind: RankKind, tallies: HashMap<String, u64>, k: usize, skipped: u64) -> AmplificationRanking {
    let mut ordered: Vec<(String, u64)> = tallies.into_iter().collect();
    ordered.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ordered.truncate(k);
    let total: u64 = ordered.iter().map(|(_, c)| c).sum();
    let entries = ordered
        .into_iter()
        .map(|(name, count)| RankEntry {
            name,
            count,
            share: if total == 0 {
                0.0
            } else {
                count as f64 / total as f64
            },
        })
        .collect();
    AmplificationRanking {
        kind,
        k,
        entries,
        skipped_urls: skipped,
    }
}

/// Rank authors by the retweets their coordinated groups collected.
///
/// An empty coordinated set yields an empty ranking.
pub fn amplified_accounts(
    groups: &[TweetGroup],
    coordinated_ids: &BTreeSet<String>,
    k: usize,
) -> AmplificationRanking {
    let mut tallies: HashMap<String, u64> = HashMap::new();
    for group in groups {
        if coordinated_ids.contains(&group.tweet_id) {
            *tallies.entry(group.author.clone()).or_insert(0) += group.retweets.len() as u64;
        }
    }
    ranked(RankKind::Account, tallies, k, 0)
}

/// Host of a URL, lowercased, with one leading `www.` stripped.
pub fn url_domain(raw: &str) -> Option<String> {
    let parsed = url::Url::parse(raw).ok()?;
    let host = parsed.host_str()?;
    let host = host.to_ascii_lowercase();
    let host = host.strip_prefix("www.").unwrap_or(&host);
    if host.is_empty() {
        None
    } else {
        Some(host.to_string())
    }
}

/// Rank URL domains attached to retweets of coordinated groups. URLs with
/// no parseable host are skipped and counted in `skipped_urls`.
pub fn amplified_domains(
    records: &[RetweetRecord],
    coordinated_ids: &BTreeSet<String>,
    k: usize,
) -> AmplificationRanking {
    let mut tallies: HashMap<String, u64> = HashMap::new();
    let mut skipped = 0u64;
    for record in records {
        if !coordinated_ids.contains(&record.tweet_id) {
            continue;
        }
        for raw in &record.urls {
            match url_domain(raw) {
                Some(domain) => *tallies.entry(domain).or_insert(0) += 1,
                None => skipped += 1,
            }
        }
    }
    ranked(RankKind::Domain, tallies, k, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{RetweetEvent, RetweetRecord, TweetGroup};

    fn group(id: &str, author: &str, retweet_count: usize) -> TweetGroup {
        TweetGroup {
            tweet_id: id.to_string(),
            author: author.to_string(),
            retweets: (0..retweet_count)
                .map(|i| RetweetEvent {
                    retweet_id: format!("{id}_r{i}"),
                    retweeter: format!("{id}_u{i}"),
                    timestamp: i as u64,
                })
                .collect(),
        }
    }

    fn record_with_urls(tweet: &str, retweet: &str, urls: &[&str]) -> RetweetRecord {
        RetweetRecord {
            tweet_id: tweet.to_string(),
            retweet_id: retweet.to_string(),
            author: "author".into(),
            retweeter: "retweeter".into(),
            timestamp: 0,
            urls: urls.iter().map(|u| u.to_string()).collect(),
            text: None,
        }
    }

    fn set(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_coordinated_group_gets_full_share() {
        let groups = vec![group("g1", "X", 5)];
        let ranking = amplified_accounts(&groups, &set(&["g1"]), 10);
        assert_eq!(ranking.entries.len(), 1);
        assert_eq!(ranking.entries[0].name, "X");
        assert_eq!(ranking.entries[0].count, 5);
        assert_eq!(ranking.entries[0].share, 1.0);
    }

    #[test]
    fn author_tallies_aggregate_and_sort() {
        let groups = vec![group("g1", "A", 10), group("g2", "A", 5), group("g3", "B", 7)];
        let ranking = amplified_accounts(&groups, &set(&["g1", "g2", "g3"]), 10);
        assert_eq!(ranking.entries.len(), 2);
        assert_eq!(ranking.entries[0].name, "A");
        assert_eq!(ranking.entries[0].count, 15);
        assert!((ranking.entries[0].share - 15.0 / 22.0).abs() < 1e-12);
        assert_eq!(ranking.entries[1].name, "B");
        assert_eq!(ranking.entries[1].count, 7);
        assert!((ranking.entries[1].share - 7.0 / 22.0).abs() < 1e-12);
    }

    #[test]
    fn empty_coordinated_set_gives_empty_ranking() {
        let groups = vec![group("g1", "A", 3)];
        let ranking = amplified_accounts(&groups, &BTreeSet::new(), 10);
        assert!(ranking.entries.is_empty());
    }

    #[test]
    fn shares_renormalize_over_the_top_k_slice() {
        let groups = vec![group("g1", "A", 6), group("g2", "B", 3), group("g3", "C", 1)];
        let ranking = amplified_accounts(&groups, &set(&["g1", "g2", "g3"]), 2);
        assert_eq!(ranking.entries.len(), 2);
        let share_sum: f64 = ranking.entries.iter().map(|e| e.share).sum();
        assert!((share_sum - 1.0).abs() < 1e-9);
        assert!((ranking.entries[0].share - 6.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn ties_break_by_name_ascending() {
        let groups = vec![group("g1", "zeta", 4), group("g2", "alpha", 4)];
        let ranking = amplified_accounts(&groups, &set(&["g1", "g2"]), 10);
        assert_eq!(ranking.entries[0].name, "alpha");
        assert_eq!(ranking.entries[1].name, "zeta");
    }

    #[test]
    fn account_total_conservation() {
        let groups = vec![group("g1", "A", 10), group("g2", "B", 5), group("g3", "C", 2)];
        let coordinated = set(&["g1", "g3"]);
        let ranking = amplified_accounts(&groups, &coordinated, 100);
        let total: u64 = ranking.entries.iter().map(|e| e.count).sum();
        let expected: u64 = groups
            .iter()
            .filter(|g| coordinated.contains(&g.tweet_id))
            .map(|g| g.retweets.len() as u64)
            .sum();
        assert_eq!(total, expected);
    }

    #[test]
    fn shrinking_coordinated_set_never_raises_counts() {
        let groups = vec![group("g1", "A", 10), group("g2", "A", 5), group("g3", "B", 7)];
        let full = amplified_accounts(&groups, &set(&["g1", "g2", "g3"]), 100);
        let smaller = amplified_accounts(&groups, &set(&["g1"]), 100);
        for entry in &smaller.entries {
            let before = full
                .entries
                .iter()
                .find(|e| e.name == entry.name)
                .map_or(0, |e| e.count);
            assert!(entry.count <= before);
        }
    }

    #[test]
    fn domain_normalizes_host_case_and_www() {
        let records = vec![record_with_urls("t1", "r1", &["https://WWW.Example.com/p?x=1"])];
        let ranking = amplified_domains(&records, &set(&["t1"]), 10);
        assert_eq!(ranking.entries.len(), 1);
        assert_eq!(ranking.entries[0].name, "example.com");
        assert_eq!(ranking.entries[0].count, 1);
        assert_eq!(ranking.entries[0].share, 1.0);
        assert_eq!(ranking.skipped_urls, 0);
    }

    #[test]
    fn domain_tallies_by_hand() {
        let records = vec![
            record_with_urls("t1", "r1", &["https://a.com/1", "https://b.org/x"]),
            record_with_urls("t1", "r2", &["https://a.com/2"]),
        ];
        let ranking = amplified_domains(&records, &set(&["t1"]), 10);
        assert_eq!(ranking.entries[0].name, "a.com");
        assert_eq!(ranking.entries[0].count, 2);
        assert!((ranking.entries[0].share - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(ranking.entries[1].name, "b.org");
        assert!((ranking.entries[1].share - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unparseable_url_is_skipped_and_tallied() {
        let records = vec![record_with_urls("t1", "r1", &["notaurl"])];
        let ranking = amplified_domains(&records, &set(&["t1"]), 10);
        assert!(ranking.entries.is_empty());
        assert_eq!(ranking.skipped_urls, 1);
    }

    #[test]
    fn urls_outside_coordinated_groups_do_not_count() {
        let records = vec![
            record_with_urls("t1", "r1", &["https://a.com"]),
            record_with_urls("t2", "r2", &["https://b.org"]),
        ];
        let ranking = amplified_domains(&records, &set(&["t1"]), 10);
        assert_eq!(ranking.entries.len(), 1);
        assert_eq!(ranking.entries[0].name, "a.com");
    }
}
