//! Signal files: plain text (one value per line) or CSV (one row or column).

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Plain,
    CsvRow,
    CsvColumn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignalFile {
    pub layout: Layout,
    pub values: Vec<f64>,
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn parse_value(text: &str, line: usize) -> Result<f64> {
    let t = text.trim();
    let x: f64 = t.parse().map_err(|_| Error::Parse {
        line,
        message: format!("not a number: {t:?}"),
    })?;
    if !x.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("value is not finite: {t}"),
        });
    }
    Ok(x)
}

pub fn parse_plain(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        values.push(parse_value(line, i + 1)?);
    }
    if values.is_empty() {
        return Err(Error::EmptySignal);
    }
    Ok(values)
}

pub fn parse_csv(text: &str) -> Result<(Layout, Vec<f64>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let values = record
            .iter()
            .map(|f| parse_value(f, line))
            .collect::<Result<Vec<_>>>()?;
        rows.push((line, values));
    }
    match rows.as_slice() {
        [] => Err(Error::EmptySignal),
        [(_, only)] if only.len() > 1 => Ok((Layout::CsvRow, only.clone())),
        _ => {
            if let Some((line, _)) = rows.iter().find(|(_, r)| r.len() != 1) {
                return Err(Error::Parse {
                    line: *line,
                    message: "expected a single row or a single column".into(),
                });
            }
            Ok((
                Layout::CsvColumn,
                rows.into_iter().map(|(_, r)| r[0]).collect(),
            ))
        }
    }
}

/// Why a file could not be turned into numbers.
#[derive(Debug)]
pub enum ReadError {
    Io(String),
    Content(Error),
}

pub fn read_signal(path: &Path) -> std::result::Result<SignalFile, ReadError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ReadError::Io(format!("cannot read {}: {e}", path.display())))?;
    let parsed = if is_csv(path) {
        parse_csv(&text)
    } else {
        parse_plain(&text).map(|v| (Layout::Plain, v))
    };
    parsed
        .map(|(layout, values)| SignalFile { layout, values })
        .map_err(ReadError::Content)
}

/// Render rows of fields; each row is one value or one `re, im` pair.
///
/// `f64`'s `Display` is the shortest string that parses back to the same
/// double, so files round-trip exactly. Pairs are always written one per
/// line, even for row-shaped CSV input.
pub fn render(layout: Layout, rows: &[Vec<f64>]) -> String {
    // `+ 0.0` turns -0 into 0
    let fields = |row: &Vec<f64>| {
        row.iter()
            .map(|x| (x + 0.0).to_string())
            .collect::<Vec<_>>()
    };
    let scalar = rows.iter().all(|r| r.len() == 1);
    match layout {
        Layout::Plain => rows.iter().map(|r| fields(r).join(" ") + "\n").collect(),
        Layout::CsvRow if scalar => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(rows.iter().map(|r| (r[0] + 0.0).to_string()))
                .expect("in-memory write");
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        Layout::CsvRow | Layout::CsvColumn => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.write_record(fields(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_skips_comments_and_blanks() {
        assert_eq!(
            parse_plain("# x\n1\n\n 2.5 \n#2\n-3e0\n").unwrap(),
            vec![1.0, 2.5, -3.0]
        );
    }

    #[test]
    fn plain_errors_carry_line_numbers() {
        assert_eq!(
            parse_plain("1\n\nabc\n"),
            Err(Error::Parse {
                line: 3,
                message: "not a number: \"abc\"".into()
            })
        );
        assert!(matches!(
            parse_plain("1\ninf\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(parse_plain("# nothing\n"), Err(Error::EmptySignal));
    }

    #[test]
    fn csv_row_and_column() {
        assert_eq!(
            parse_csv("1,2,3,4\n").unwrap(),
            (Layout::CsvRow, vec![1.0, 2.0, 3.0, 4.0])
        );
        assert_eq!(
            parse_csv("1\n2\n3\n").unwrap(),
            (Layout::CsvColumn, vec![1.0, 2.0, 3.0])
        );
        assert!(matches!(
            parse_csv("1,2\n3,4\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_csv("1\nx\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn rendering_round_trips() {
        let values = vec![0.1, -1.0 / 3.0, 1e-300, 10.0];
        let rows: Vec<Vec<f64>> = values.iter().map(|&x| vec![x]).collect();
        assert_eq!(parse_plain(&render(Layout::Plain, &rows)).unwrap(), values);
        assert_eq!(parse_csv(&render(Layout::CsvRow, &rows)).unwrap().1, values);
        assert_eq!(
            parse_csv(&render(Layout::CsvColumn, &rows)).unwrap().1,
            values
        );
    }
}
