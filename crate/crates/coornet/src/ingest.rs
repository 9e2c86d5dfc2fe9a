//! Dataset ingestion: canonical CSV parsing, column-mapping adapters for raw
//! dataset layouts, and tweet-group assembly.
//!
//! The canonical format is a CSV with header
//! `tweet_id,retweet_id,author,retweeter,timestamp,urls` where `urls` is a
//! `|`-separated list that may be empty and `timestamp` is UTC epoch seconds.
//! Raw datasets with other layouts are bridged through [`ColumnMapping`].

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One normalized retweet event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetweetRecord {
    /// Id of the original tweet.
    pub tweet_id: String,
    /// Id of the retweet event; unique across a dataset.
    pub retweet_id: String,
    /// Account that posted the original tweet.
    pub author: String,
    /// Account that performed the retweet.
    pub retweeter: String,
    /// Seconds since the Unix epoch, UTC.
    pub timestamp: u64,
    /// URLs attached to the retweet; empty when none.
    pub urls: Vec<String>,
    /// Retweet text, when the source dataset carries it. Never serialized
    /// to the canonical CSV.
    pub text: Option<String>,
}

/// One retweet inside a [`TweetGroup`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetweetEvent {
    pub retweet_id: String,
    pub retweeter: String,
    pub timestamp: u64,
}

/// An original tweet together with all its retweets, time-ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetGroup {
    pub tweet_id: String,
    pub author: String,
    /// Sorted ascending by timestamp, ties broken by retweet_id.
    pub retweets: Vec<RetweetEvent>,
}

impl TweetGroup {
    /// Gap in seconds between the first and second retweet, if the group
    /// has at least two.
    pub fn first_to_second_gap(&self) -> Option<u64> {
        match self.retweets.as_slice() {
            [first, second, ..] => Some(second.timestamp - first.timestamp),
            _ => None,
        }
    }

    /// Distinct retweeter accounts, in first-seen order of the sorted list.
    pub fn distinct_retweeters(&self) -> Vec<&str> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for rt in &self.retweets {
            if seen.insert(rt.retweeter.as_str()) {
                out.push(rt.retweeter.as_str());
            }
        }
        out
    }
}

const CANONICAL_HEADER: [&str; 6] = [
    "tweet_id",
    "retweet_id",
    "author",
    "retweeter",
    "timestamp",
    "urls",
];

/// Parse the canonical CSV format.
///
/// Row order is preserved. Malformed rows and duplicate retweet ids are
/// rejected with the offending line number(s).
pub fn parse_canonical<R: Read>(reader: R) -> Result<Vec<RetweetRecord>> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(reader);

    {
        let headers = csv
            .headers()
            .map_err(|e| Error::ParseRow {
                line: 1,
                message: format!("unreadable header: {e}"),
            })?
            .clone();
        let got: Vec<&str> = headers.iter().collect();
        if got != CANONICAL_HEADER {
            return Err(Error::ParseRow {
                line: 1,
                message: format!(
                    "expected header `{}`, found `{}`",
                    CANONICAL_HEADER.join(","),
                    got.join(",")
                ),
            });
        }
    }

    let mut records = Vec::new();
    let mut seen_ids: HashMap<String, u64> = HashMap::new();
    for row in csv.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::ParseRow {
                line,
                message: e.to_string(),
            }
        })?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != 6 {
            return Err(Error::ParseRow {
                line,
                message: format!("expected 6 columns, found {}", row.len()),
            });
        }
        let field = |idx: usize, name: &str| -> Result<String> {
            let value = &row[idx];
            if value.is_empty() {
                return Err(Error::ParseRow {
                    line,
                    message: format!("empty required field `{name}`"),
                });
            }
            Ok(value.to_string())
        };
        let tweet_id = field(0, "tweet_id")?;
        let retweet_id = field(1, "retweet_id")?;
        let author = field(2, "author")?;
        let retweeter = field(3, "retweeter")?;
        let timestamp = row[4].parse::<u64>().map_err(|_| Error::ParseRow {
            line,
            message: format!(
                "timestamp `{}` is not a non-negative integer of epoch seconds",
                &row[4]
            ),
        })?;
        let urls = split_urls(&row[5]);

        if let Some(&first_line) = seen_ids.get(&retweet_id) {
            return Err(Error::DuplicateRetweetId {
                retweet_id,
                first_line,
                second_line: line,
            });
        }
        seen_ids.insert(retweet_id.clone(), line);

        records.push(RetweetRecord {
            tweet_id,
            retweet_id,
            author,
            retweeter,
            timestamp,
            urls,
            text: None,
        });
    }
    Ok(records)
}

/// Write records in the canonical CSV format. The `text` field is dropped;
/// everything else round-trips through [`parse_canonical`].
pub fn write_canonical<W: Write>(writer: W, records: &[RetweetRecord]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let io_err = |e: csv::Error| Error::io("<canonical csv>", std::io::Error::other(e));
    csv.write_record(CANONICAL_HEADER).map_err(io_err)?;
    for r in records {
        csv.write_record([
            r.tweet_id.as_str(),
            r.retweet_id.as_str(),
            r.author.as_str(),
            r.retweeter.as_str(),
            &r.timestamp.to_string(),
            &r.urls.join("|"),
        ])
        .map_err(io_err)?;
    }
    csv.flush().map_err(|e| Error::io("<canonical csv>", e))?;
    Ok(())
}

fn split_urls(field: &str) -> Vec<String> {
    if field.is_empty() {
        Vec::new()
    } else {
        field.split('|').map(str::to_string).collect()
    }
}

/// How a source column is addressed: by header name or by 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Name(String),
    /// 1-based position, usable with or without a header row.
    Index(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TimestampFormat {
    #[default]
    Epoch,
    Iso8601,
}

/// Where retweet ids come from: a source column, or synthesized as
/// `<tweet_id>#<row-index>` when the source lacks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RetweetIdSource {
    #[default]
    Column,
    Synthesize,
}

/// Column references for each canonical field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub tweet_id: ColumnRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retweet_id: Option<ColumnRef>,
    pub author: ColumnRef,
    pub retweeter: ColumnRef,
    pub timestamp: ColumnRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub urls: Option<ColumnRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<ColumnRef>,
}

/// A column-mapping config bridging a raw dataset layout to the canonical
/// schema. Serialized as JSON, e.g.:
///
/// ```json
/// {
///   "columns": { "author": 1, "retweeter": 2, "tweet_id": 3, "timestamp": 4 },
///   "timestamp_format": "iso8601",
///   "retweet_id": "synthesize",
///   "has_header": false
/// }
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnMapping {
    pub columns: ColumnSpec,
    #[serde(default)]
    pub timestamp_format: TimestampFormat,
    #[serde(default)]
    pub retweet_id: RetweetIdSource,
    /// Whether the source file starts with a header row. Defaults to true
    /// when any column is addressed by name, false otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub has_header: Option<bool>,
}

impl ColumnMapping {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::MappingConfig(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_json(&text)
    }

    fn any_named(&self) -> bool {
        let c = &self.columns;
        let named = |r: &ColumnRef| matches!(r, ColumnRef::Name(_));
        named(&c.tweet_id)
            || c.retweet_id.as_ref().is_some_and(named)
            || named(&c.author)
            || named(&c.retweeter)
            || named(&c.timestamp)
            || c.urls.as_ref().is_some_and(named)
            || c.text.as_ref().is_some_and(named)
    }

    fn has_header(&self) -> bool {
        self.has_header.unwrap_or_else(|| self.any_named())
    }
}

/// Column references resolved to 0-based indices.
struct ResolvedColumns {
    tweet_id: usize,
    retweet_id: Option<usize>,
    author: usize,
    retweeter: usize,
    timestamp: usize,
    urls: Option<usize>,
    text: Option<usize>,
}

fn resolve_column(r: &ColumnRef, header: Option<&csv::StringRecord>) -> Result<usize> {
    match r {
        ColumnRef::Index(i) => {
            if *i == 0 {
                Err(Error::MappingConfig(
                    "column positions are 1-based; 0 is not a valid position".into(),
                ))
            } else {
                Ok(i - 1)
            }
        }
        ColumnRef::Name(name) => {
            let header = header.ok_or_else(|| {
                Error::MappingConfig(format!(
                    "column `{name}` is addressed by name but the mapping says the file has no header"
                ))
            })?;
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MappingConfig(format!("column `{name}` not found in header")))
        }
    }
}

/// Parse a raw dataset through a [`ColumnMapping`], producing canonical
/// records equivalent to [`parse_canonical`] output.
pub fn parse_mapped<R: Read>(reader: R, mapping: &ColumnMapping) -> Result<Vec<RetweetRecord>> {
    let has_header = mapping.has_header();
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .from_reader(reader);

    let header = if has_header {
        Some(
            csv.headers()
                .map_err(|e| Error::ParseRow {
                    line: 1,
                    message: format!("unreadable header: {e}"),
                })?
                .clone(),
        )
    } else {
        None
    };

    if mapping.retweet_id == RetweetIdSource::Column && mapping.columns.retweet_id.is_none() {
        return Err(Error::MappingConfig(
            "retweet_id mode is `column` but no retweet_id column is mapped".into(),
        ));
    }

    let cols = ResolvedColumns {
        tweet_id: resolve_column(&mapping.columns.tweet_id, header.as_ref())?,
        retweet_id: match (&mapping.retweet_id, &mapping.columns.retweet_id) {
            (RetweetIdSource::Column, Some(r)) => Some(resolve_column(r, header.as_ref())?),
            _ => None,
        },
        author: resolve_column(&mapping.columns.author, header.as_ref())?,
        retweeter: resolve_column(&mapping.columns.retweeter, header.as_ref())?,
        timestamp: resolve_column(&mapping.columns.timestamp, header.as_ref())?,
        urls: mapping
            .columns
            .urls
            .as_ref()
            .map(|r| resolve_column(r, header.as_ref()))
            .transpose()?,
        text: mapping
            .columns
            .text
            .as_ref()
            .map(|r| resolve_column(r, header.as_ref()))
            .transpose()?,
    };

    let mut records = Vec::new();
    let mut seen_ids: HashMap<String, u64> = HashMap::new();
    for (row_index, row) in csv.records().enumerate() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::ParseRow {
                line,
                message: e.to_string(),
            }
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let get = |idx: usize, name: &str| -> Result<&str> {
            row.get(idx).ok_or_else(|| Error::ParseRow {
                line,
                message: format!(
                    "row has {} columns but `{name}` is mapped to position {}",
                    row.len(),
                    idx + 1
                ),
            })
        };
        let required = |idx: usize, name: &str| -> Result<String> {
            let value = get(idx, name)?;
            if value.is_empty() {
                Err(Error::ParseRow {
                    line,
                    message: format!("empty required field `{name}`"),
                })
            } else {
                Ok(value.to_string())
            }
        };

        let tweet_id = required(cols.tweet_id, "tweet_id")?;
        let retweet_id = match cols.retweet_id {
            Some(idx) => required(idx, "retweet_id")?,
            None => format!("{tweet_id}#{row_index}"),
        };
        let author = required(cols.author, "author")?;
        let retweeter = required(cols.retweeter, "retweeter")?;
        let raw_ts = get(cols.timestamp, "timestamp")?;
        let timestamp = match mapping.timestamp_format {
            TimestampFormat::Epoch => raw_ts.parse::<u64>().map_err(|_| Error::ParseRow {
                line,
                message: format!(
                    "timestamp `{raw_ts}` is not a non-negative integer of epoch seconds"
                ),
            })?,
            TimestampFormat::Iso8601 => parse_iso8601(raw_ts).ok_or_else(|| Error::ParseRow {
                line,
                message: format!("timestamp `{raw_ts}` is not of the form YYYY-MM-DDThh:mm:ssZ"),
            })?,
        };
        let urls = match cols.urls {
            Some(idx) => split_urls(get(idx, "urls")?),
            None => Vec::new(),
        };
        let text = match cols.text {
            Some(idx) => {
                let t = get(idx, "text")?;
                (!t.is_empty()).then(|| t.to_string())
            }
            None => None,
        };

        if let Some(&first_line) = seen_ids.get(&retweet_id) {
            return Err(Error::DuplicateRetweetId {
                retweet_id,
                first_line,
                second_line: line,
            });
        }
        seen_ids.insert(retweet_id.clone(), line);

        records.push(RetweetRecord {
            tweet_id,
            retweet_id,
            author,
            retweeter,
            timestamp,
            urls,
            text,
        });
    }
    Ok(records)
}

/// Parse a strict `YYYY-MM-DDThh:mm:ssZ` UTC timestamp into epoch seconds.
/// Returns None for anything malformed or before 1970.
pub fn parse_iso8601(s: &str) -> Option<u64> {
    let bytes = s.as_bytes();
    if bytes.len() != 20 || bytes[4] != b'-' || bytes[7] != b'-' || bytes[10] != b'T' {
        return None;
    }
    if bytes[13] != b':' || bytes[16] != b':' || bytes[19] != b'Z' {
        return None;
    }
    let num = |range: std::ops::Range<usize>| -> Option<u64> {
        let part = &s[range];
        if part.bytes().all(|b| b.is_ascii_digit()) {
            part.parse().ok()
        } else {
            None
        }
    };
    let year = num(0..4)? as i64;
    let month = num(5..7)?;
    let day = num(8..10)?;
    let hour = num(11..13)?;
    let minute = num(14..16)?;
    let second = num(17..19)?;
    if !(1..=12).contains(&month) || day < 1 || day > days_in_month(year, month as u32) as u64 {
        return None;
    }
    if hour > 23 || minute > 59 || second > 59 {
        return None;
    }
    let days = days_from_civil(year, month as u32, day as u32);
    let epoch = days * 86_400 + (hour * 3600 + minute * 60 + second) as i64;
    u64::try_from(epoch).ok()
}

fn days_in_month(year: i64, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap(year) => 29,
        2 => 28,
        _ => 0,
    }
}

fn is_leap(year: i64) -> bool {
    year % 4 == 0 && (year % 100 != 0 || year % 400 == 0)
}

/// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's
/// days-from-civil).
fn days_from_civil(year: i64, month: u32, day: u32) -> i64 {
    let y = if month <= 2 { year - 1 } else { year };
    let era = if y >= 0 { y } else { y - 399 } / 400;
    let yoe = y - era * 400;
    let mp = (month as i64 + 9) % 12;
    let doy = (153 * mp + 2) / 5 + day as i64 - 1;
    let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    era * 146_097 + doe - 719_468
}

/// Assemble one [`TweetGroup`] per distinct tweet id.
///
/// Output is sorted by tweet id; each group's retweets are sorted ascending
/// by timestamp with ties broken by retweet id, so the result is invariant
/// under any permutation of the input. The group author is taken from the
/// record of the earliest retweet under that same ordering.
pub fn group_tweets(records: &[RetweetRecord]) -> Vec<TweetGroup> {
    let mut by_tweet: HashMap<&str, Vec<&RetweetRecord>> = HashMap::new();
    for record in records {
        by_tweet.entry(&record.tweet_id).or_default().push(record);
    }
    let mut groups: Vec<TweetGroup> = by_tweet
        .into_iter()
        .map(|(tweet_id, mut members)| {
            members.sort_by(|a, b| {
                a.timestamp
                    .cmp(&b.timestamp)
                    .then_with(|| a.retweet_id.cmp(&b.retweet_id))
            });
            TweetGroup {
                tweet_id: tweet_id.to_string(),
                author: members[0].author.clone(),
                retweets: members
                    .iter()
                    .map(|r| RetweetEvent {
                        retweet_id: r.retweet_id.clone(),
                        retweeter: r.retweeter.clone(),
                        timestamp: r.timestamp,
                    })
                    .collect(),
            }
        })
        .collect();
    groups.sort_by(|a, b| a.tweet_id.cmp(&b.tweet_id));
    groups
}

/// Read and parse a canonical CSV file.
pub fn read_canonical_file(path: &Path) -> Result<Vec<RetweetRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_canonical(std::io::BufReader::new(file))
}

/// Write records to a canonical CSV file.
pub fn write_canonical_file(path: &Path, records: &[RetweetRecord]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    write_canonical(std::io::BufWriter::new(file), records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(
        tweet: &str,
        retweet: &str,
        author: &str,
        retweeter: &str,
        ts: u64,
    ) -> RetweetRecord {
        RetweetRecord {
            tweet_id: tweet.into(),
            retweet_id: retweet.into(),
            author: author.into(),
            retweeter: retweeter.into(),
            timestamp: ts,
            urls: Vec::new(),
            text: None,
        }
    }

    #[test]
    fn parses_single_well_formed_row() {
        let input = "tweet_id,retweet_id,author,retweeter,timestamp,urls\nt1,r1,alice,bob,100,\n";
        let records = parse_canonical(input.as_bytes()).unwrap();
        assert_eq!(records, vec![record("t1", "r1", "alice", "bob", 100)]);
    }

    #[test]
    fn rejects_non_integer_timestamp_with_line() {
        let input = "tweet_id,retweet_id,author,retweeter,timestamp,urls\nt1,r1,alice,bob,abc,\n";
        let err = parse_canonical(input.as_bytes()).unwrap_err();
        match err {
            Error::ParseRow { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("abc"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_retweet_id_citing_both_lines() {
        let input = "tweet_id,retweet_id,author,retweeter,timestamp,urls\n\
                     t1,r1,alice,bob,100,\n\
                     t2,r1,carol,dan,200,\n";
        let err = parse_canonical(input.as_bytes()).unwrap_err();
        match err {
            Error::DuplicateRetweetId {
                retweet_id,
                first_line,
                second_line,
            } => {
                assert_eq!(retweet_id, "r1");
                assert_eq!((first_line, second_line), (2, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_column_count() {
        let input = "tweet_id,retweet_id,author,retweeter,timestamp,urls\nt1,r1,alice,bob\n";
        let err = parse_canonical(input.as_bytes()).unwrap_err();
        match err {
            Error::ParseRow { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_empty_required_field() {
        let input = "tweet_id,retweet_id,author,retweeter,timestamp,urls\nt1,r1,,bob,100,\n";
        let err = parse_canonical(input.as_bytes()).unwrap_err();
        match err {
            Error::ParseRow { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("author"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn splits_urls_on_pipe() {
        let input = "tweet_id,retweet_id,author,retweeter,timestamp,urls\n\
                     t1,r1,alice,bob,100,https://a.com|https://b.org\n";
        let records = parse_canonical(input.as_bytes()).unwrap();
        assert_eq!(records[0].urls, vec!["https://a.com", "https://b.org"]);
    }

    fn ds1_mapping() -> ColumnMapping {
        ColumnMapping {
            columns: ColumnSpec {
                tweet_id: ColumnRef::Index(3),
                retweet_id: None,
                author: ColumnRef::Index(1),
                retweeter: ColumnRef::Index(2),
                timestamp: ColumnRef::Index(4),
                urls: None,
                text: None,
            },
            timestamp_format: TimestampFormat::Iso8601,
            retweet_id: RetweetIdSource::Synthesize,
            has_header: Some(false),
        }
    }

    /// Independent calendar conversion: walk year by year and month by month
    /// from 1970-01-01.
    fn day_walk_epoch(y: u64, mo: u64, d: u64, h: u64, mi: u64, s: u64) -> u64 {
        let mut days: u64 = 0;
        for year in 1970..y {
            days += if is_leap(year as i64) { 366 } else { 365 };
        }
        for month in 1..mo {
            days += days_in_month(y as i64, month as u32) as u64;
        }
        days += d - 1;
        days * 86_400 + h * 3600 + mi * 60 + s
    }

    #[test]
    fn maps_ds1_style_row_with_synthesized_id() {
        let input = "alice,bob,t1,2016-06-20T10:00:00Z\n";
        let records = parse_mapped(input.as_bytes(), &ds1_mapping()).unwrap();
        let expected_ts = day_walk_epoch(2016, 6, 20, 10, 0, 0);
        assert_eq!(expected_ts, 1_466_416_800);
        assert_eq!(
            records,
            vec![RetweetRecord {
                tweet_id: "t1".into(),
                retweet_id: "t1#0".into(),
                author: "alice".into(),
                retweeter: "bob".into(),
                timestamp: expected_ts,
                urls: Vec::new(),
                text: None,
            }]
        );
    }

    #[test]
    fn iso_parser_matches_day_walk_oracle() {
        let cases = [
            (1970, 1, 1, 0, 0, 0),
            (1999, 12, 31, 23, 59, 59),
            (2000, 2, 29, 12, 0, 0),
            (2016, 6, 20, 10, 0, 0),
            (2020, 12, 5, 7, 30, 15),
            (2100, 3, 1, 0, 0, 1),
        ];
        for (y, mo, d, h, mi, s) in cases {
            let iso = format!("{y:04}-{mo:02}-{d:02}T{h:02}:{mi:02}:{s:02}Z");
            assert_eq!(
                parse_iso8601(&iso),
                Some(day_walk_epoch(y, mo, d, h, mi, s)),
                "{iso}"
            );
        }
    }

    #[test]
    fn iso_parser_rejects_malformed_inputs() {
        for bad in [
            "2016-06-20",
            "2016-06-20T10:00:00",
            "2016-13-01T00:00:00Z",
            "2016-02-30T00:00:00Z",
            "2016-06-20T24:00:00Z",
            "1969-12-31T23:59:59Z",
            "2016-06-20 10:00:00Z",
        ] {
            assert_eq!(parse_iso8601(bad), None, "{bad}");
        }
    }

    #[test]
    fn mapping_missing_column_is_config_error() {
        let mapping = ColumnMapping {
            columns: ColumnSpec {
                tweet_id: ColumnRef::Name("tweet".into()),
                retweet_id: Some(ColumnRef::Name("rt".into())),
                author: ColumnRef::Name("author".into()),
                retweeter: ColumnRef::Name("retweeter".into()),
                timestamp: ColumnRef::Name("ts".into()),
                urls: None,
                text: None,
            },
            timestamp_format: TimestampFormat::Epoch,
            retweet_id: RetweetIdSource::Column,
            has_header: None,
        };
        let input = "tweet,rt,author,retweeter,when\nt1,r1,a,b,100\n";
        let err = parse_mapped(input.as_bytes(), &mapping).unwrap_err();
        assert!(matches!(err, Error::MappingConfig(_)), "{err:?}");
        assert!(err.to_string().contains("ts"));
    }

    #[test]
    fn epoch_format_mapping_passes_value_through() {
        let mapping = ColumnMapping {
            columns: ColumnSpec {
                tweet_id: ColumnRef::Index(1),
                retweet_id: Some(ColumnRef::Index(2)),
                author: ColumnRef::Index(3),
                retweeter: ColumnRef::Index(4),
                timestamp: ColumnRef::Index(5),
                urls: None,
                text: None,
            },
            timestamp_format: TimestampFormat::Epoch,
            retweet_id: RetweetIdSource::Column,
            has_header: Some(false),
        };
        let records = parse_mapped("t1,r1,a,b,100\n".as_bytes(), &mapping).unwrap();
        assert_eq!(records[0].timestamp, 100);
    }

    #[test]
    fn mapping_json_round_trip() {
        let json = r#"{
            "columns": { "author": 1, "retweeter": 2, "tweet_id": 3, "timestamp": 4 },
            "timestamp_format": "iso8601",
            "retweet_id": "synthesize",
            "has_header": false
        }"#;
        let mapping = ColumnMapping::from_json(json).unwrap();
        assert_eq!(mapping.timestamp_format, TimestampFormat::Iso8601);
        assert_eq!(mapping.retweet_id, RetweetIdSource::Synthesize);
        assert_eq!(mapping.columns.author, ColumnRef::Index(1));
    }

    #[test]
    fn groups_sort_by_timestamp_then_id() {
        let records = vec![
            record("t1", "r3", "alice", "x", 30),
            record("t1", "r1", "alice", "y", 10),
            record("t1", "r2", "alice", "z", 20),
        ];
        let groups = group_tweets(&records);
        assert_eq!(groups.len(), 1);
        let times: Vec<u64> = groups[0].retweets.iter().map(|r| r.timestamp).collect();
        assert_eq!(times, vec![10, 20, 30]);
    }

    #[test]
    fn equal_timestamps_tie_break_on_retweet_id() {
        let records = vec![
            record("t1", "rb", "alice", "x", 10),
            record("t1", "ra", "alice", "y", 10),
        ];
        let groups = group_tweets(&records);
        let ids: Vec<&str> = groups[0]
            .retweets
            .iter()
            .map(|r| r.retweet_id.as_str())
            .collect();
        assert_eq!(ids, vec!["ra", "rb"]);
    }

    #[test]
    fn single_record_yields_single_group() {
        let groups = group_tweets(&[record("t1", "r1", "a", "b", 5)]);
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[0].retweets.len(), 1);
        assert_eq!(groups[0].first_to_second_gap(), None);
    }

    #[test]
    fn two_tweets_give_two_groups_with_sizes_preserved() {
        let records = vec![
            record("t1", "r1", "a", "b", 1),
            record("t1", "r2", "a", "c", 2),
            record("t2", "r3", "d", "e", 3),
        ];
        let groups = group_tweets(&records);
        assert_eq!(groups.len(), 2);
        let mut sizes: Vec<usize> = groups.iter().map(|g| g.retweets.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
        let total: usize = groups.iter().map(|g| g.retweets.len()).sum();
        assert_eq!(total, records.len());
    }

    #[test]
    fn empty_input_gives_empty_output() {
        assert!(group_tweets(&[]).is_empty());
        let records =
            parse_canonical("tweet_id,retweet_id,author,retweeter,timestamp,urls\n".as_bytes())
                .unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn self_retweets_are_kept() {
        let groups = group_tweets(&[record("t1", "r1", "alice", "alice", 5)]);
        assert_eq!(groups[0].author, "alice");
        assert_eq!(groups[0].retweets[0].retweeter, "alice");
    }
}
