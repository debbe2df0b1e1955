//! Text formats for multiplication tables.
//!
//! Native: the first non-comment line holds `n`, followed by `n` lines of `n`
//! whitespace-separated entries in `1..=n`. `#` starts a comment running to
//! the end of the line. Several tables in one stream are separated by one or
//! more blank lines.
//!
//! CSV: `n` lines of `n` comma-separated entries in `1..=n`, with `n` taken
//! from the width of the first line. Blank lines separate tables here too.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use super::{Magma, MAX_ORDER};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Native,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "native" => Ok(Self::Native),
            "csv" => Ok(Self::Csv),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Native => "native",
            Self::Csv => "csv",
        })
    }
}

/// A parse failure with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("entry {value} is outside 1..={order}")]
    DomainViolation { value: usize, order: usize },
    #[error("row has {found} entries, expected {expected}")]
    RaggedRow { expected: usize, found: usize },
    #[error("table ends after {found} rows, expected {expected}")]
    MissingRows { expected: usize, found: usize },
    #[error("unexpected content after the last row")]
    TrailingContent,
    #[error("order {0} is outside 1..={MAX_ORDER}")]
    InvalidOrder(usize),
    #[error("no table found")]
    Empty,
    #[error("expected a single table, found {0}")]
    MultipleTables(usize),
}

impl ParseError {
    fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Self { line, column, kind }
    }
}

/// Parses exactly one table.
pub fn parse_table(text: &str, format: Format) -> Result<Magma, ParseError> {
    let mut tables = parse_tables(text, format);
    match tables.len() {
        0 => Err(ParseError::new(1, 1, ParseErrorKind::Empty)),
        1 => tables.pop().unwrap(),
        k => Err(ParseError::new(1, 1, ParseErrorKind::MultipleTables(k))),
    }
}

/// Parses every table in the stream. A malformed table yields an error in its
/// slot without affecting its neighbours.
pub fn parse_tables(text: &str, format: Format) -> Vec<Result<Magma, ParseError>> {
    blocks(text)
        .into_iter()
        .map(|block| match format {
            Format::Native => parse_native_block(&block),
            Format::Csv => parse_csv_block(&block),
        })
        .collect()
}

/// A run of non-blank lines with comments stripped. Lines that were pure
/// comments are dropped; blocks with no content at all are skipped.
struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn blocks(text: &str) -> Vec<Vec<Line<'_>>> {
    let mut out = Vec::new();
    let mut current: Vec<Line<'_>> = Vec::new();
    let mut saw_content = false;
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            if saw_content {
                out.push(std::mem::take(&mut current));
            }
            current.clear();
            saw_content = false;
            continue;
        }
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        saw_content = true;
        current.push(Line {
            number: i + 1,
            text: body,
        });
    }
    if saw_content {
        out.push(current);
    }
    out
}

/// Tokens of a line with their 1-based starting columns.
fn tokens(text: &str, sep: Option<char>) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    match sep {
        None => {
            let mut start = None;
            for (i, ch) in text.char_indices() {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        out.push((s, &text[s..i]));
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
            if let Some(s) = start {
                out.push((s, &text[s..]));
            }
        }
        Some(sep) => {
            let mut offset = 0;
            for piece in text.split(sep) {
                let lead = piece.len() - piece.trim_start().len();
                out.push((offset + lead, piece.trim()));
                offset += piece.len() + sep.len_utf8();
            }
        }
    }
    out.into_iter()
        .map(|(byte, tok)| (text[..byte].chars().count() + 1, tok))
        .collect()
}

fn parse_entry(line: usize, column: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| {
        ParseError::new(
            line,
            column,
            ParseErrorKind::Syntax(format!("expected a positive integer, found {tok:?}")),
        )
    })
}

fn parse_row(
    line: &Line<'_>,
    sep: Option<char>,
    order: usize,
    out: &mut Vec<usize>,
) -> Result<(), ParseError> {
    let toks = tokens(line.text, sep);
    if toks.len() != order {
        let column = toks.get(order).map_or(1, |t| t.0);
        return Err(ParseError::new(
            line.number,
            column,
            ParseErrorKind::RaggedRow {
                expected: order,
                found: toks.len(),
            },
        ));
    }
    for (column, tok) in toks {
        let value = parse_entry(line.number, column, tok)?;
        if value == 0 || value > order {
            return Err(ParseError::new(
                line.number,
                column,
                ParseErrorKind::DomainViolation { value, order },
            ));
        }
        out.push(value - 1);
    }
    Ok(())
}

fn parse_native_block(lines: &[Line<'_>]) -> Result<Magma, ParseError> {
    let header = &lines[0];
    let toks = tokens(header.text, None);
    if toks.len() != 1 {
        return Err(ParseError::new(
            header.number,
            toks.get(1).map_or(1, |t| t.0),
            ParseErrorKind::Syntax("the first line must hold only the order".into()),
        ));
    }
    let (column, tok) = toks[0];
    let order = parse_entry(header.number, column, tok)?;
    if order == 0 || order > MAX_ORDER {
        return Err(ParseError::new(
            header.number,
            column,
            ParseErrorKind::InvalidOrder(order),
        ));
    }
    let rows = &lines[1..];
    if rows.len() < order {
        let last = lines.last().unwrap();
        return Err(ParseError::new(
            last.number,
            1,
            ParseErrorKind::MissingRows {
                expected: order,
                found: rows.len(),
            },
        ));
    }
    if rows.len() > order {
        return Err(ParseError::new(
            rows[order].number,
            1,
            ParseErrorKind::TrailingContent,
        ));
    }
    let mut cells = Vec::with_capacity(order * order);
    for line in rows {
        parse_row(line, None, order, &mut cells)?;
    }
    Ok(Magma::new(order, cells).expect("entries validated while parsing"))
}

fn parse_csv_block(lines: &[Line<'_>]) -> Result<Magma, ParseError> {
    let order = tokens(lines[0].text, Some(',')).len();
    if order > MAX_ORDER {
        return Err(ParseError::new(
            lines[0].number,
            1,
            ParseErrorKind::InvalidOrder(order),
        ));
    }
    if lines.len() < order {
        return Err(ParseError::new(
            lines.last().unwrap().number,
            1,
            ParseErrorKind::MissingRows {
                expected: order,
                found: lines.len(),
            },
        ));
    }
    if lines.len() > order {
        return Err(ParseError::new(
            lines[order].number,
            1,
            ParseErrorKind::TrailingContent,
        ));
    }
    let mut cells = Vec::with_capacity(order * order);
    for line in lines {
        parse_row(line, Some(','), order, &mut cells)?;
    }
    Ok(Magma::new(order, cells).expect("entries validated while parsing"))
}

pub fn serialize(m: &Magma, format: Format) -> String {
    match format {
        Format::Native => to_native(m),
        Format::Csv => to_csv(m),
    }
}

pub fn to_native(m: &Magma) -> String {
    let mut out = String::new();
    writeln!(out, "{}", m.order()).unwrap();
    write_rows(&mut out, m, " ");
    out
}

pub fn to_csv(m: &Magma) -> String {
    let mut out = String::new();
    write_rows(&mut out, m, ",");
    out
}

fn write_rows(out: &mut String, m: &Magma, sep: &str) {
    for r in 0..m.order() {
        for (i, v) in m.row(r).enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            write!(out, "{}", v + 1).unwrap();
        }
        out.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_two_element_example() {
        let m = parse_table("2\n1 2\n2 2\n", Format::Native).unwrap();
        assert_eq!(m, Magma::from_rows(&[[0, 1], [1, 1]]).unwrap());
        let one = parse_table("1\n1\n", Format::Native).unwrap();
        assert_eq!(one.order(), 1);
    }

    #[test]
    fn reports_domain_violations_with_position() {
        let err = parse_table("2\n1 3\n2 2\n", Format::Native).unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 3);
        assert_eq!(
            err.kind,
            ParseErrorKind::DomainViolation { value: 3, order: 2 }
        );
    }

    #[test]
    fn reports_ragged_rows_and_syntax() {
        let err = parse_table("3\n1 2 3\n1 2\n1 2 3\n", Format::Native).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, ParseErrorKind::RaggedRow { found: 2, .. }));
        let err = parse_table("2\n1 x\n2 2\n", Format::Native).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(matches!(err.kind, ParseErrorKind::Syntax(_)));
        let err = parse_table("3\n1 2 3\n", Format::Native).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::MissingRows { .. }));
        assert!(matches!(
            parse_table("# nothing\n", Format::Native).unwrap_err().kind,
            ParseErrorKind::Empty
        ));
    }

    #[test]
    fn comments_and_multiple_tables() {
        let text = "# header\n2 # order\n1 1\n# inner\n1 2\n\n\n1\n1\n\n2\n1 3\n1 1\n\n2\n2 1\n1 2\n";
        let tables = parse_tables(text, Format::Native);
        assert_eq!(tables.len(), 4);
        assert_eq!(
            tables[0].as_ref().unwrap(),
            &Magma::from_rows(&[[0, 0], [0, 1]]).unwrap()
        );
        assert_eq!(tables[1].as_ref().unwrap().order(), 1);
        assert_eq!(tables[2].as_ref().unwrap_err().line, 12);
        assert!(tables[3].is_ok());
        assert!(matches!(
            parse_table(text, Format::Native).unwrap_err().kind,
            ParseErrorKind::MultipleTables(4)
        ));
    }

    #[test]
    fn csv_infers_order_from_first_row() {
        let m = parse_table("1,2,3\n2,3,1\n3,1,2\n", Format::Csv).unwrap();
        assert_eq!(m, Magma::cyclic_group(3).unwrap());
        let err = parse_table("1,2\n2,1,1\n", Format::Csv).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::RaggedRow { .. }));
        let err = parse_table("1, 2\n2, 0\n", Format::Csv).unwrap_err();
        assert_eq!((err.line, err.column), (2, 4));
    }

    #[test]
    fn renders_native_and_csv() {
        let m = Magma::from_rows(&[[0, 0], [0, 1]]).unwrap();
        assert_eq!(serialize(&m, Format::Native), "2\n1 1\n1 2\n");
        assert_eq!(serialize(&m, Format::Csv), "1,1\n1,2\n");
    }
}
