//! Score tables, display rounding, aggregation, and the grade mapping.
//!
//! Cells hold unrounded means; the row average is the arithmetic mean of
//! the row's cells computed before any rounding. Display rounds half-up
//! (away from zero) at two decimals, done on the decimal digit string so
//! binary float noise cannot flip a boundary case. 1..=5 rating tables
//! additionally show the nearest-integer interpretation of the average.

use std::fmt;

use super::ratings::{Measure, RatingRecord};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("row `{label}` has no values for experiment {experiment}")]
    EmptyCell { label: String, experiment: u8 },
    #[error("no records to aggregate for measure {0}")]
    NoRecords(Measure),
    #[error("row `{label}` has {got} cells, expected {expected}")]
    RowWidth {
        label: String,
        expected: usize,
        got: usize,
    },
    #[error("table has no columns")]
    NoColumns,
    #[error("average score {0} is outside the 1..=5 rating scale")]
    ScoreOutOfRange(f64),
}

/// Recorded display-rounding mode. There is exactly one; it is recorded
/// in the table so emitted reports are self-describing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundingMode {
    HalfUp2,
}

impl RoundingMode {
    pub fn as_str(self) -> &'static str {
        "half-up-2dp"
    }
}

/// Rounds half-up (away from zero) at two decimals, returning the value.
pub fn round_half_up_2(x: f64) -> f64 {
    display_2dp(x).parse().expect("display string is numeric")
}

/// Two-decimal display with half-up rounding, computed on the decimal
/// digit string of the value.
pub fn display_2dp(x: f64) -> String {
    assert!(x.is_finite(), "cannot display non-finite score");
    let negative = x < 0.0;
    let s = format!("{:.12}", x.abs());
    let (int_part, frac) = s.split_once('.').expect("fixed formatting has a point");
    let keep: u128 = frac[..2].parse().expect("two decimal digits");
    let rest = &frac[2..];
    let round_up = rest >= "5000000000";
    let mut cents: u128 = int_part.parse::<u128>().expect("integer part") * 100 + keep;
    if round_up {
        cents += 1;
    }
    let sign = if negative && cents > 0 { "-" } else { "" };
    format!("{sign}{}.{:02}", cents / 100, cents % 100)
}

/// Nearest integer with half-up (away from zero) ties, for the
/// "interpretation" reading of 1..=5 averages.
pub fn nearest_integer(x: f64) -> i64 {
    assert!(x.is_finite());
    let negative = x < 0.0;
    let s = format!("{:.12}", x.abs());
    let (int_part, frac) = s.split_once('.').expect("fixed formatting has a point");
    let mut value: i64 = int_part.parse().expect("integer part");
    if frac >= "500000000000" {
        value += 1;
    }
    if negative {
        -value
    } else {
        value
    }
}

/// One table row: a label and one unrounded cell per column.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub label: String,
    pub cells: Vec<f64>,
}

/// A report table shaped like the result tables: one row per case or
/// assessor, one column per experiment or round, plus a computed average.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub title: String,
    /// Header for the label column ("Safety case", "Assessor", ...).
    pub row_header: String,
    pub columns: Vec<String>,
    pub rows: Vec<ScoreRow>,
    pub rounding: RoundingMode,
    /// Show the nearest-integer interpretation column (rating tables).
    pub integer_interpretation: bool,
    pub footnotes: Vec<String>,
}

impl ScoreTable {
    pub fn from_cells(
        title: &str,
        row_header: &str,
        columns: Vec<String>,
        rows: Vec<ScoreRow>,
    ) -> Result<Self, EvalError> {
        if columns.is_empty() {
            return Err(EvalError::NoColumns);
        }
        for row in &rows {
            if row.cells.len() != columns.len() {
                return Err(EvalError::RowWidth {
                    label: row.label.clone(),
                    expected: columns.len(),
                    got: row.cells.len(),
                });
            }
        }
        Ok(ScoreTable {
            title: title.to_string(),
            row_header: row_header.to_string(),
            columns,
            rows,
            rounding: RoundingMode::HalfUp2,
            integer_interpretation: false,
            footnotes: Vec::new(),
        })
    }

    pub fn with_integer_interpretation(mut self) -> Self {
        self.integer_interpretation = true;
        self
    }

    pub fn push_footnote(&mut self, note: impl Into<String>) {
        self.footnotes.push(note.into());
    }

    /// Unrounded mean of a row's cells.
    pub fn row_avg(&self, row: &ScoreRow) -> f64 {
        row.cells.iter().sum::<f64>() / row.cells.len() as f64
    }
}

/// Groups rating records into a table: one row per case label (first
/// appearance order), one column per experiment present, cell = mean
/// score over rounds and raters. Every (label, experiment) group must be
/// non-empty.
pub fn aggregate_ratings(
    records: &[RatingRecord],
    measure: Measure,
) -> Result<ScoreTable, EvalError> {
    let selected: Vec<&RatingRecord> = records.iter().filter(|r| r.measure == measure).collect();
    if selected.is_empty() {
        return Err(EvalError::NoRecords(measure));
    }
    let mut labels: Vec<String> = Vec::new();
    let mut experiments: Vec<u8> = Vec::new();
    for record in &selected {
        if !labels.contains(&record.case_label) {
            labels.push(record.case_label.clone());
        }
        if !experiments.contains(&record.experiment) {
            experiments.push(record.experiment);
        }
    }
    experiments.sort_unstable();

    let mut rows = Vec::new();
    for label in labels {
        let mut cells = Vec::new();
        for &experiment in &experiments {
            let scores: Vec<f64> = selected
                .iter()
                .filter(|r| r.case_label == label && r.experiment == experiment)
                .map(|r| r.score as f64)
                .collect();
            if scores.is_empty() {
                return Err(EvalError::EmptyCell { label, experiment });
            }
            cells.push(scores.iter().sum::<f64>() / scores.len() as f64);
        }
        rows.push(ScoreRow { label, cells });
    }

    let title = match measure {
        Measure::GroundTruth => "Average ground-truth similarity scores",
        Measure::Reasonability => "Average reasonability scores",
    };
    let columns = experiments.iter().map(|e| format!("Exp-{e}")).collect();
    let mut table = ScoreTable::from_cells(title, "Safety case", columns, rows)?
        .with_integer_interpretation();
    let notes: Vec<String> = table
        .rows
        .iter()
        .filter_map(|row| {
            known_discrepancy_footnote(measure, &row.label, &display_2dp(table.row_avg(row)))
        })
        .collect();
    for note in notes {
        table.push_footnote(note);
    }
    Ok(table)
}

/// Known divergence between a reference table's cell arithmetic and the
/// value quoted in the accompanying narrative, surfaced as a footnote.
pub fn known_discrepancy_footnote(
    measure: Measure,
    label: &str,
    avg_display: &str,
) -> Option<String> {
    if measure == Measure::Reasonability && label == "xray" && avg_display == "2.31" {
        return Some(
            "The narrative accompanying the reference results quotes 2.27 for the X-ray \
             reasonability average; the cells shown average to 2.31."
                .to_string(),
        );
    }
    None
}

/// Letter-grade scale over the 0..=100 percent axis; bands are checked
/// top-down.
#[derive(Debug, Clone, PartialEq)]
pub struct GradeScale {
    /// (minimum percent, letter), sorted descending by minimum.
    pub bands: Vec<(f64, String)>,
}

impl Default for GradeScale {
    fn default() -> Self {
        let bands = [
            (90.0, "A+"),
            (80.0, "A"),
            (75.0, "B+"),
            (70.0, "B"),
            (65.0, "C+"),
            (60.0, "C"),
            (55.0, "D+"),
            (50.0, "D"),
            (40.0, "E"),
            (f64::NEG_INFINITY, "F"),
        ];
        GradeScale {
            bands: bands
                .into_iter()
                .map(|(min, letter)| (min, letter.to_string()))
                .collect(),
        }
    }
}

impl GradeScale {
    pub fn letter_for_percent(&self, percent: f64) -> &str {
        self.bands
            .iter()
            .find(|(min, _)| percent >= *min)
            .map(|(_, letter)| letter.as_str())
            .unwrap_or("F")
    }
}

/// Maps a 1..=5 average score onto the percent axis: 1 -> 100, 5 -> 0.
pub fn percent_of_score(avg_score: f64) -> Result<f64, EvalError> {
    if !avg_score.is_finite() || !(1.0..=5.0).contains(&avg_score) {
        return Err(EvalError::ScoreOutOfRange(avg_score));
    }
    Ok(100.0 - 25.0 * (avg_score - 1.0))
}

/// Letter grade of a 1..=5 average under the default scale.
pub fn grade_of(avg_score: f64) -> Result<String, EvalError> {
    grade_with(&GradeScale::default(), avg_score)
}

pub fn grade_with(scale: &GradeScale, avg_score: f64) -> Result<String, EvalError> {
    let percent = percent_of_score(avg_score)?;
    Ok(scale.letter_for_percent(percent).to_string())
}

impl fmt::Display for ScoreTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::report::emit_report(
            std::slice::from_ref(self),
            super::report::ReportFormat::Markdown,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_rounding_boundary_cases() {
        assert_eq!(display_2dp(0.73), "0.73");
        assert_eq!(display_2dp(1.475), "1.48");
        assert_eq!(display_2dp(1.4075), "1.41");
        assert_eq!(display_2dp(3.0125), "3.01");
        assert_eq!(display_2dp(2.6875), "2.69");
        assert_eq!(display_2dp(2.3125), "2.31");
        assert_eq!(display_2dp(3.375), "3.38");
        assert_eq!(display_2dp(0.87025), "0.87");
        assert_eq!(display_2dp(1.44125), "1.44");
        assert_eq!(display_2dp(2.0), "2.00");
        assert_eq!(display_2dp(-0.005), "-0.01");
        assert_eq!(display_2dp(-0.001), "0.00");
    }

    #[test]
    fn nearest_integer_rounds_half_up() {
        assert_eq!(nearest_integer(3.0125), 3);
        assert_eq!(nearest_integer(3.5), 4);
        assert_eq!(nearest_integer(2.27), 2);
        assert_eq!(nearest_integer(-1.5), -2);
    }

    #[test]
    fn row_avg_uses_unrounded_cells() {
        let table = ScoreTable::from_cells(
            "t",
            "Row",
            vec!["R1".into(), "R2".into(), "R3".into(), "R4".into()],
            vec![ScoreRow {
                label: "x".into(),
                cells: vec![0.66, 0.86, 0.63, 0.77],
            }],
        )
        .unwrap();
        assert_eq!(display_2dp(table.row_avg(&table.rows[0])), "0.73");
    }

    #[test]
    fn aggregate_shapes_rows_by_label_and_experiment() {
        let mut records = Vec::new();
        for (label, experiment, score) in [
            ("ml", 1, 4),
            ("ml", 1, 3),
            ("ml", 2, 2),
            ("ml", 2, 3),
            ("xray", 1, 3),
            ("xray", 2, 3),
        ] {
            records.push(RatingRecord {
                case_label: label.to_string(),
                experiment,
                round: 1,
                rater: "r1".to_string(),
                measure: Measure::GroundTruth,
                score,
            });
        }
        let table = aggregate_ratings(&records, Measure::GroundTruth).unwrap();
        assert_eq!(table.columns, vec!["Exp-1", "Exp-2"]);
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.rows[0].label, "ml");
        assert_eq!(table.rows[0].cells, vec![3.5, 2.5]);
        assert!(table.integer_interpretation);
    }

    #[test]
    fn aggregate_rejects_missing_cells() {
        let records = vec![
            RatingRecord {
                case_label: "ml".into(),
                experiment: 1,
                round: 1,
                rater: "r1".into(),
                measure: Measure::GroundTruth,
                score: 3,
            },
            RatingRecord {
                case_label: "xray".into(),
                experiment: 2,
                round: 1,
                rater: "r1".into(),
                measure: Measure::GroundTruth,
                score: 3,
            },
        ];
        assert!(matches!(
            aggregate_ratings(&records, Measure::GroundTruth),
            Err(EvalError::EmptyCell { .. })
        ));
        assert!(matches!(
            aggregate_ratings(&records, Measure::Reasonability),
            Err(EvalError::NoRecords(_))
        ));
    }

    #[test]
    fn aggregate_mean_is_permutation_invariant() {
        let base = vec![3, 2, 5, 4];
        let mut tables = Vec::new();
        for order in [[0usize, 1, 2, 3], [3, 1, 0, 2]] {
            let records: Vec<RatingRecord> = order
                .iter()
                .enumerate()
                .map(|(round, &i)| RatingRecord {
                    case_label: "ml".into(),
                    experiment: 1,
                    round: round as u32 + 1,
                    rater: "r1".into(),
                    measure: Measure::GroundTruth,
                    score: base[i],
                })
                .collect();
            tables.push(aggregate_ratings(&records, Measure::GroundTruth).unwrap());
        }
        assert_eq!(tables[0].rows[0].cells, tables[1].rows[0].cells);
    }

    #[test]
    fn grade_anchors_hold() {
        assert_eq!(grade_of(1.44).unwrap(), "A");
        assert_eq!(grade_of(1.0).unwrap(), "A+");
        assert_eq!(grade_of(3.0).unwrap(), "D");
        assert_eq!(percent_of_score(1.44).unwrap(), 89.0);
        assert!(grade_of(0.5).is_err());
        assert!(grade_of(5.5).is_err());
    }

    #[test]
    fn grade_is_monotone_non_increasing() {
        let order = ["A+", "A", "B+", "B", "C+", "C", "D+", "D", "E", "F"];
        let mut previous = 0usize;
        let mut score = 1.0;
        while score <= 5.0 {
            let letter = grade_of(score).unwrap();
            let position = order.iter().position(|g| *g == letter).unwrap();
            assert!(position >= previous, "grade got better as score worsened");
            previous = position;
            score += 0.01;
        }
    }

    #[test]
    fn known_discrepancy_fires_only_on_the_reference_row() {
        assert!(known_discrepancy_footnote(Measure::Reasonability, "xray", "2.31").is_some());
        assert!(known_discrepancy_footnote(Measure::Reasonability, "xray", "2.30").is_none());
        assert!(known_discrepancy_footnote(Measure::GroundTruth, "xray", "2.31").is_none());
    }
}
