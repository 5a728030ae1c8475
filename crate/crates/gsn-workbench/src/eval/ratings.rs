//! Ingestion of human 1-5 ratings from CSV.
//!
//! Header: `case,experiment,round,rater,measure,score`. Labels are
//! restricted to `[A-Za-z0-9_-]` so no quoting is ever needed. Bad rows
//! are collected with their line numbers instead of failing fast.

use std::fmt;
use std::str::FromStr;

/// The two rated measures. Scale anchors run from 1 (best) to 5 (worst).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Measure {
    GroundTruth,
    Reasonability,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::GroundTruth => "ground_truth",
            Measure::Reasonability => "reasonability",
        }
    }

    /// The fixed 1..=5 anchor wording for this measure.
    pub fn scale_anchors(self) -> [&'static str; 5] {
        match self {
            Measure::GroundTruth => [
                "Totally correct",
                "Mostly correct",
                "Moderately correct",
                "Slightly correct",
                "Incorrect",
            ],
            Measure::Reasonability => [
                "Totally reasonable",
                "Mostly reasonable",
                "Moderately reasonable",
                "Slightly reasonable",
                "Unreasonable",
            ],
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ground_truth" => Ok(Measure::GroundTruth),
            "reasonability" => Ok(Measure::Reasonability),
            other => Err(format!(
                "unknown measure `{other}` (expected ground_truth or reasonability)"
            )),
        }
    }
}

/// One ingested rating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingRecord {
    pub case_label: String,
    pub experiment: u8,
    pub round: u32,
    pub rater: String,
    pub measure: Measure,
    pub score: u8,
}

/// A rejected row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatingsError {
    #[error("bad header: expected `{RATINGS_HEADER}`, found `{0}`")]
    Header(String),
    #[error("{} invalid row(s): {}", .0.len(), .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Rows(Vec<RowError>),
}

/// The required CSV header.
pub const RATINGS_HEADER: &str = "case,experiment,round,rater,measure,score";

fn label_ok(label: &str) -> bool {
    !label.is_empty()
        && label
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// Parses ratings CSV text. Returns either every record or every row error.
pub fn parse_ratings(text: &str) -> Result<Vec<RatingRecord>, RatingsError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((_, l)) => break l.trim(),
            None => return Err(RatingsError::Header(String::new())),
        }
    };
    if header != RATINGS_HEADER {
        return Err(RatingsError::Header(header.to_string()));
    }

    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (index, raw) in lines {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match parse_row(line) {
            Ok(record) => records.push(record),
            Err(message) => errors.push(RowError {
                line: line_no,
                message,
            }),
        }
    }
    if errors.is_empty() {
        Ok(records)
    } else {
        Err(RatingsError::Rows(errors))
    }
}

/// Reads and parses a ratings CSV file.
pub fn ingest_ratings(path: &std::path::Path) -> Result<Vec<RatingRecord>, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_ratings(&text).map_err(IngestError::Format)
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(RatingsError),
}

fn parse_row(line: &str) -> Result<RatingRecord, String> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    if fields.len() != 6 {
        return Err(format!("expected 6 fields, found {}", fields.len()));
    }
    let case_label = fields[0];
    if !label_ok(case_label) {
        return Err(format!("bad case label `{case_label}`"));
    }
    let experiment: u8 = fields[1]
        .parse()
        .map_err(|_| format!("bad experiment `{}`", fields[1]))?;
    if !(1..=4).contains(&experiment) {
        return Err(format!("experiment {experiment} out of 1..4"));
    }
    let round: u32 = fields[2]
        .parse()
        .map_err(|_| format!("bad round `{}`", fields[2]))?;
    if round == 0 {
        return Err("round must be at least 1".to_string());
    }
    let rater = fields[3];
    if !label_ok(rater) {
        return Err(format!("bad rater label `{rater}`"));
    }
    let measure: Measure = fields[4].parse()?;
    let score: u8 = fields[5]
        .parse()
        .map_err(|_| format!("bad score `{}`", fields[5]))?;
    if !(1..=5).contains(&score) {
        return Err("score out of 1..5".to_string());
    }
    Ok(RatingRecord {
        case_label: case_label.to_string(),
        experiment,
        round,
        rater: rater.to_string(),
        measure,
        score,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_row_parses() {
        let records =
            parse_ratings("case,experiment,round,rater,measure,score\nml,1,1,r1,ground_truth,4\n")
                .unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].case_label, "ml");
        assert_eq!(records[0].score, 4);
        assert_eq!(records[0].measure, Measure::GroundTruth);
    }

    #[test]
    fn out_of_range_score_is_a_row_error() {
        let err = parse_ratings("case,experiment,round,rater,measure,score\nml,1,1,r1,ground_truth,6\n")
            .unwrap_err();
        match err {
            RatingsError::Rows(rows) => {
                assert_eq!(rows.len(), 1);
                assert_eq!(rows[0].line, 2);
                assert_eq!(rows[0].message, "score out of 1..5");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn errors_are_collected_not_fail_fast() {
        let text = "case,experiment,round,rater,measure,score\n\
                    ml,9,1,r1,ground_truth,4\n\
                    ml,1,1,r1,bogus,4\n\
                    ml,1,1,r1,ground_truth,3\n";
        match parse_ratings(text).unwrap_err() {
            RatingsError::Rows(rows) => {
                assert_eq!(rows.len(), 2);
                assert_eq!(rows[0].line, 2);
                assert_eq!(rows[1].line, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(matches!(
            parse_ratings("who,what,when\nml,1,1,r1,ground_truth,4\n"),
            Err(RatingsError::Header(_))
        ));
    }

    #[test]
    fn full_protocol_volume_parses() {
        // 2 raters x 4 experiments x 4 rounds for one case and measure.
        let mut text = String::from("case,experiment,round,rater,measure,score\n");
        for rater in ["r1", "r2"] {
            for experiment in 1..=4 {
                for round in 1..=4 {
                    text.push_str(&format!("ml,{experiment},{round},{rater},ground_truth,3\n"));
                }
            }
        }
        assert_eq!(parse_ratings(&text).unwrap().len(), 32);
    }

    #[test]
    fn scale_anchors_are_pinned() {
        assert_eq!(Measure::GroundTruth.scale_anchors()[0], "Totally correct");
        assert_eq!(Measure::GroundTruth.scale_anchors()[1], "Mostly correct");
        assert_eq!(Measure::Reasonability.scale_anchors()[0], "Totally reasonable");
        assert_eq!(Measure::Reasonability.scale_anchors()[4], "Unreasonable");
    }
}
