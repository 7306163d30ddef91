//! Pairwise comparison of two metrics CSVs sharing a schema: per numeric
//! column it reports both means, their ratio, and row-paired win rates.

use std::path::Path;

use crate::scenario::{CliError, CliResult, ErrorKind};

pub const COMPARE_CSV_HEADER: &str = "column,mean_a,mean_b,ratio_a_over_b,share_a_ge_b,share_a_le_b";

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSummary {
    pub column: String,
    pub mean_a: f64,
    pub mean_b: f64,
    /// Exactly 1.0 whenever the means coincide, even at zero.
    pub ratio: f64,
    pub share_a_ge_b: f64,
    pub share_a_le_b: f64,
}

#[derive(Debug, Clone)]
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn load_table(path: &Path) -> CliResult<Table> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(ErrorKind::Io, path, "compare", e.to_string()))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header_line = lines
        .next()
        .ok_or_else(|| CliError::new(ErrorKind::EmptyInput, path, "compare", "file is empty"))?;
    let header: Vec<String> = header_line.split(',').map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<String> = line.split(',').map(str::to_owned).collect();
        if cells.len() != header.len() {
            return Err(CliError::new(
                ErrorKind::Parse,
                path,
                "compare",
                format!(
                    "row {} has {} cells, header has {}",
                    i + 2,
                    cells.len(),
                    header.len()
                ),
            ));
        }
        rows.push(cells);
    }
    if rows.is_empty() {
        return Err(CliError::new(
            ErrorKind::EmptyInput,
            path,
            "compare",
            "no data rows",
        ));
    }
    Ok(Table { header, rows })
}

fn column_values(table: &Table, index: usize) -> Option<Vec<f64>> {
    table
        .rows
        .iter()
        .map(|row| row[index].parse::<f64>().ok())
        .collect()
}

/// Compares two CSV files column by column. Headers must match exactly;
/// only columns numeric in both files are summarized.
pub fn compare_files(path_a: &Path, path_b: &Path) -> CliResult<Vec<ColumnSummary>> {
    let a = load_table(path_a)?;
    let b = load_table(path_b)?;
    if a.header != b.header {
        return Err(CliError::new(
            ErrorKind::SchemaMismatch,
            path_b,
            "compare",
            format!(
                "header {:?} does not match {:?} from {}",
                b.header.join(","),
                a.header.join(","),
                path_a.display()
            ),
        ));
    }
    let mut out = Vec::new();
    for (index, column) in a.header.iter().enumerate() {
        let (va, vb) = match (column_values(&a, index), column_values(&b, index)) {
            (Some(va), Some(vb)) => (va, vb),
            _ => continue,
        };
        let mean_a = va.iter().sum::<f64>() / va.len() as f64;
        let mean_b = vb.iter().sum::<f64>() / vb.len() as f64;
        let ratio = if mean_a == mean_b { 1.0 } else { mean_a / mean_b };
        let paired = va.len().min(vb.len());
        let mut ge = 0usize;
        let mut le = 0usize;
        for i in 0..paired {
            if va[i] >= vb[i] {
                ge += 1;
            }
            if va[i] <= vb[i] {
                le += 1;
            }
        }
        out.push(ColumnSummary {
            column: column.clone(),
            mean_a,
            mean_b,
            ratio,
            share_a_ge_b: ge as f64 / paired as f64,
            share_a_le_b: le as f64 / paired as f64,
        });
    }
    if out.is_empty() {
        return Err(CliError::new(
            ErrorKind::SchemaMismatch,
            path_a,
            "compare",
            "no shared numeric columns",
        ));
    }
    Ok(out)
}

pub fn render_summary(summaries: &[ColumnSummary]) -> String {
    let mut out = String::from(COMPARE_CSV_HEADER);
    out.push('\n');
    for s in summaries {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.column, s.mean_a, s.mean_b, s.ratio, s.share_a_ge_b, s.share_a_le_b
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn text_columns_are_left_out_of_the_summary() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(dir.path(), "a.csv", "id,score\nfirst,1\nsecond,3\n");
        let b = write(dir.path(), "b.csv", "id,score\nfirst,2\nsecond,2\n");
        let summary = compare_files(&a, &b).unwrap();
        assert_eq!(summary.len(), 1);
        assert_eq!(summary[0].column, "score");
        assert_eq!(summary[0].mean_a, 2.0);
        assert_eq!(summary[0].mean_b, 2.0);
        assert_eq!(summary[0].ratio, 1.0);
        // rows split one win each way
        assert_eq!(summary[0].share_a_ge_b, 0.5);
        assert_eq!(summary[0].share_a_le_b, 0.5);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let a = write(dir.path(), "a.csv", "x,y\n1,2\n3\n");
        let err = compare_files(&a, &a).unwrap_err();
        assert_eq!(err.kind, ErrorKind::Parse);
        assert!(err.to_string().contains("row 3"));
    }

    #[test]
    fn summary_rows_render_as_plain_csv() {
        let summary = ColumnSummary {
            column: "throughput".into(),
            mean_a: 0.5,
            mean_b: 0.25,
            ratio: 2.0,
            share_a_ge_b: 1.0,
            share_a_le_b: 0.0,
        };
        let rendered = render_summary(&[summary]);
        let mut lines = rendered.lines();
        assert_eq!(lines.next(), Some(COMPARE_CSV_HEADER));
        assert_eq!(lines.next(), Some("throughput,0.5,0.25,2,1,0"));
    }
}
