//! Rendering of score tables as markdown or CSV.
//!
//! Markdown mirrors the reference layout: row label, one column per
//! experiment or round, then the average (and its nearest-integer
//! interpretation for rating tables), with footnotes as quoted lines.
//! CSV keeps the cells unrounded and adds a rounded display column for
//! the average. Column order is fixed; output is deterministic.

use std::fmt::Write;
use std::str::FromStr;

use super::score::{display_2dp, nearest_integer, ScoreTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format `{other}` (expected markdown or csv)")),
        }
    }
}

/// Renders every table in order. An empty table list yields an empty
/// string.
pub fn emit_report(tables: &[ScoreTable], format: ReportFormat) -> String {
    let mut out = String::new();
    for (i, table) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match format {
            ReportFormat::Markdown => markdown_table(&mut out, table),
            ReportFormat::Csv => csv_table(&mut out, table),
        }
    }
    out
}

fn markdown_table(out: &mut String, table: &ScoreTable) {
    let _ = writeln!(out, "### {}", table.title);
    out.push('\n');
    let mut header = format!("| {} |", table.row_header);
    let mut rule = String::from("| --- |");
    for column in &table.columns {
        let _ = write!(header, " {column} |");
        rule.push_str(" --- |");
    }
    header.push_str(" Avg |");
    rule.push_str(" --- |");
    if table.integer_interpretation {
        header.push_str(" Nearest |");
        rule.push_str(" --- |");
    }
    let _ = writeln!(out, "{header}");
    let _ = writeln!(out, "{rule}");
    for row in &table.rows {
        let _ = write!(out, "| {} |", row.label);
        for cell in &row.cells {
            let _ = write!(out, " {} |", display_2dp(*cell));
        }
        let avg = table.row_avg(row);
        let _ = write!(out, " {} |", display_2dp(avg));
        if table.integer_interpretation {
            let _ = write!(out, " {} |", nearest_integer(avg));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "\n_rounding: {}_", table.rounding.as_str());
    for note in &table.footnotes {
        let _ = writeln!(out, "\n> {note}");
    }
}

fn csv_table(out: &mut String, table: &ScoreTable) {
    let _ = writeln!(out, "# {}", table.title);
    let mut header = table.row_header.to_lowercase().replace(' ', "_");
    for column in &table.columns {
        let _ = write!(header, ",{column}");
    }
    header.push_str(",Avg,Avg_display");
    if table.integer_interpretation {
        header.push_str(",Nearest");
    }
    let _ = writeln!(out, "{header}");
    for row in &table.rows {
        let _ = write!(out, "{}", row.label);
        for cell in &row.cells {
            let _ = write!(out, ",{cell}");
        }
        let avg = table.row_avg(row);
        let _ = write!(out, ",{avg},{}", display_2dp(avg));
        if table.integer_interpretation {
            let _ = write!(out, ",{}", nearest_integer(avg));
        }
        out.push('\n');
    }
    for note in &table.footnotes {
        let _ = writeln!(out, "# note: {note}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::score::ScoreRow;

    fn tau_table() -> ScoreTable {
        ScoreTable::from_cells(
            "Inter-rater agreement",
            "Measure",
            vec!["R1".into(), "R2".into(), "R3".into(), "R4".into()],
            vec![ScoreRow {
                label: "tau".into(),
                cells: vec![0.66, 0.86, 0.63, 0.77],
            }],
        )
        .unwrap()
    }

    #[test]
    fn markdown_shows_rounded_average() {
        let report = emit_report(&[tau_table()], ReportFormat::Markdown);
        assert!(report.contains("| tau | 0.66 | 0.86 | 0.63 | 0.77 | 0.73 |"));
        assert!(report.contains("### Inter-rater agreement"));
        assert!(report.contains("half-up-2dp"));
    }

    #[test]
    fn empty_table_list_is_empty_output() {
        assert_eq!(emit_report(&[], ReportFormat::Markdown), "");
        assert_eq!(emit_report(&[], ReportFormat::Csv), "");
    }

    #[test]
    fn csv_keeps_unrounded_cells_and_adds_display_column() {
        let report = emit_report(&[tau_table()], ReportFormat::Csv);
        assert!(report.contains("measure,R1,R2,R3,R4,Avg,Avg_display"));
        let row = report
            .lines()
            .find(|l| l.starts_with("tau,"))
            .expect("data row");
        assert!(row.starts_with("tau,0.66,0.86,0.63,0.77,"));
        assert!(row.ends_with(",0.73"));
    }

    #[test]
    fn reasonability_row_shape() {
        let table = ScoreTable::from_cells(
            "Average reasonability scores",
            "Safety case",
            (1..=4).map(|e| format!("Exp-{e}")).collect(),
            vec![ScoreRow {
                label: "ml".into(),
                cells: vec![2.75, 2.75, 2.5, 2.75],
            }],
        )
        .unwrap()
        .with_integer_interpretation();
        let report = emit_report(&[table], ReportFormat::Markdown);
        assert!(report.contains("| ml | 2.75 | 2.75 | 2.50 | 2.75 | 2.69 | 3 |"));
    }

    #[test]
    fn footnotes_are_rendered_in_both_formats() {
        let mut table = tau_table();
        table.push_footnote("reference quotes a different value");
        let md = emit_report(&[table.clone()], ReportFormat::Markdown);
        assert!(md.contains("> reference quotes a different value"));
        let csv = emit_report(&[table], ReportFormat::Csv);
        assert!(csv.contains("# note: reference quotes a different value"));
    }
}
