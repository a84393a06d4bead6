//! Line-oriented text formats for designs, base blocks, codes and threshold
//! schemes.
//!
//! Every file starts with a header `%NAME key=value ...`. Blank lines and
//! anything after `#` are ignored. Cells inside a row are separated by `|`.
//! Emission is canonical: sorted cells, ascending ids, single spaces, and
//! uniform distributions left implicit.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::authcode::{AuthCode, CodeError};
use crate::designs::{BaseBlocks, Cell, DesignError, OrderedDesign};
use crate::distribution::{Distribution, DistributionError};
use crate::rational::Rational;
use crate::threshold::{Rule, ThresholdError, ThresholdScheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty input")]
    Empty,
    #[error("expected a header line starting with '%'")]
    MissingHeader,
    #[error("unknown format %{0}")]
    UnknownFormat(String),
    #[error("expected %{expected}, found %{found}")]
    WrongFormat {
        expected: &'static str,
        found: String,
    },
    #[error("header field {0:?} is not of the form key=value")]
    BadField(String),
    #[error("header key {0} given twice")]
    DuplicateKey(String),
    #[error("unknown header key {0}")]
    UnknownKey(String),
    #[error("missing header key {0}")]
    MissingKey(&'static str),
    #[error("{0:?} is not a nonnegative integer")]
    BadInteger(String),
    #[error("{0:?} is not a rational")]
    BadRational(String),
    #[error("unexpected line starting with {0:?}")]
    UnexpectedLine(String),
    #[error("expected {expected} cells separated by '|', found {found}")]
    CellCount { expected: usize, found: usize },
    #[error("cell {cell} has {found} points, expected {expected}")]
    CellSize {
        cell: usize,
        found: usize,
        expected: usize,
    },
    #[error("key line must look like 'key <id>: ...'")]
    MissingColon,
    #[error("id {id} outside 0..{limit}")]
    IdOutOfRange { id: usize, limit: usize },
    #[error("key {0} listed twice")]
    DuplicateId(usize),
    #[error("{kind} line given twice")]
    Repeated { kind: &'static str },
    #[error("expected {expected} {what}, found {found}")]
    Count {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("rule needs 4 fields: v1 v2 s w")]
    RuleArity,
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Threshold(#[from] ThresholdError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmitError {
    #[error("%DESIGN needs equal cell sizes")]
    UnevenCells,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Design(OrderedDesign),
    BaseBlocks(BaseBlocks),
    AuthCode(AuthCode),
    Threshold(ThresholdScheme),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Design(_) => "DESIGN",
            Document::BaseBlocks(_) => "BASEBLOCKS",
            Document::AuthCode(_) => "AUTHCODE",
            Document::Threshold(_) => "THRESHOLD22",
        }
    }
}

fn err(line: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError {
        line,
        kind: kind.into(),
    }
}

/// Content lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

struct Header {
    line: usize,
    name: String,
    fields: BTreeMap<String, String>,
}

impl Header {
    fn parse(line: usize, body: &str) -> Result<Self, ParseError> {
        let rest = body
            .strip_prefix('%')
            .ok_or_else(|| err(line, ParseErrorKind::MissingHeader))?;
        let mut words = rest.split_whitespace();
        let name = words.next().unwrap_or("").to_string();
        let mut fields = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| err(line, ParseErrorKind::BadField(w.to_string())))?;
            if fields.insert(k.to_string(), v.to_string()).is_some() {
                return Err(err(line, ParseErrorKind::DuplicateKey(k.to_string())));
            }
        }
        Ok(Header { line, name, fields })
    }

    /// Checks the key set and returns the values of `keys` in order.
    fn ints(&self, keys: &[&'static str]) -> Result<Vec<usize>, ParseError> {
        if let Some(extra) = self.fields.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(err(self.line, ParseErrorKind::UnknownKey(extra.clone())));
        }
        keys.iter()
            .map(|&k| {
                let raw = self
                    .fields
                    .get(k)
                    .ok_or_else(|| err(self.line, ParseErrorKind::MissingKey(k)))?;
                int(self.line, raw)
            })
            .collect()
    }
}

fn int(line: usize, raw: &str) -> Result<usize, ParseError> {
    raw.parse()
        .map_err(|_| err(line, ParseErrorKind::BadInteger(raw.to_string())))
}

fn rational(line: usize, raw: &str) -> Result<Rational, ParseError> {
    raw.parse()
        .map_err(|_| err(line, ParseErrorKind::BadRational(raw.to_string())))
}

fn cells(line: usize, body: &str, u: usize) -> Result<Vec<Cell>, ParseError> {
    let parts: Vec<&str> = body.split('|').collect();
    if parts.len() != u {
        return Err(err(
            line,
            ParseErrorKind::CellCount {
                expected: u,
                found: parts.len(),
            },
        ));
    }
    parts
        .iter()
        .map(|p| p.split_whitespace().map(|w| int(line, w)).collect())
        .collect()
}

fn check_cell_size(line: usize, row: &[Cell], c: usize) -> Result<(), ParseError> {
    match row.iter().enumerate().find(|(_, cell)| cell.len() != c) {
        Some((cell, found)) => Err(err(
            line,
            ParseErrorKind::CellSize {
                cell,
                found: found.len(),
                expected: c,
            },
        )),
        None => Ok(()),
    }
}

fn distribution(line: usize, words: &str) -> Result<Distribution, ParseError> {
    let weights = words
        .split_whitespace()
        .map(|w| rational(line, w))
        .collect::<Result<Vec<_>, _>>()?;
    Distribution::new(weights).map_err(|e| err(line, e))
}

fn split_head(body: &str) -> (&str, &str) {
    match body.split_once(char::is_whitespace) {
        Some((head, rest)) => (head, rest.trim()),
        None => (body, ""),
    }
}

/// Parses any of the four formats, dispatching on the header.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let (line, body) = lines(text)
        .next()
        .ok_or_else(|| err(1, ParseErrorKind::Empty))?;
    let header = Header::parse(line, body)?;
    match header.name.as_str() {
        "DESIGN" => parse_design(text).map(Document::Design),
        "BASEBLOCKS" => parse_base_blocks(text).map(Document::BaseBlocks),
        "AUTHCODE" => parse_authcode(text).map(Document::AuthCode),
        "THRESHOLD22" => parse_threshold(text).map(Document::Threshold),
        other => Err(err(line, ParseErrorKind::UnknownFormat(other.to_string()))),
    }
}

fn open<'a>(
    text: &'a str,
    expected: &'static str,
) -> Result<(Header, impl Iterator<Item = (usize, &'a str)>), ParseError> {
    let mut it = lines(text);
    let (line, body) = it.next().ok_or_else(|| err(1, ParseErrorKind::Empty))?;
    let header = Header::parse(line, body)?;
    if header.name != expected {
        return Err(err(
            line,
            ParseErrorKind::WrongFormat {
                expected,
                found: header.name,
            },
        ));
    }
    Ok((header, it))
}

pub fn parse_design(text: &str) -> Result<OrderedDesign, ParseError> {
    let (header, body) = open(text, "DESIGN")?;
    let [v, u, c] = header.ints(&["v", "u", "c"])?[..] else {
        unreachable!()
    };
    let mut rows = Vec::new();
    for (line, content) in body {
        let (head, rest) = split_head(content);
        if head != "row" {
            return Err(err(line, ParseErrorKind::UnexpectedLine(head.to_string())));
        }
        let row = cells(line, rest, u)?;
        check_cell_size(line, &row, c)?;
        OrderedDesign::new(v, u, vec![row.clone()]).map_err(|e| err(line, e.at_row(rows.len())))?;
        rows.push(row);
    }
    OrderedDesign::new(v, u, rows).map_err(|e| err(header.line, e))
}

pub fn parse_base_blocks(text: &str) -> Result<BaseBlocks, ParseError> {
    let (header, body) = open(text, "BASEBLOCKS")?;
    let [n, u, c] = header.ints(&["n", "u", "c"])?[..] else {
        unreachable!()
    };
    let mut bases = Vec::new();
    for (line, content) in body {
        let (head, rest) = split_head(content);
        if head != "base" {
            return Err(err(line, ParseErrorKind::UnexpectedLine(head.to_string())));
        }
        let row = cells(line, rest, u)?;
        BaseBlocks::new(n, u, c, vec![row.clone()])
            .map_err(|e| err(line, e.at_row(bases.len())))?;
        bases.push(row);
    }
    BaseBlocks::new(n, u, c, bases).map_err(|e| err(header.line, e))
}

pub fn parse_authcode(text: &str) -> Result<AuthCode, ParseError> {
    let (header, body) = open(text, "AUTHCODE")?;
    let [v, b, u] = header.ints(&["v", "b", "u"])?[..] else {
        unreachable!()
    };
    let mut sources = None;
    let mut rows: Vec<Option<Vec<Cell>>> = vec![None; b];
    let mut last = header.line;
    for (line, content) in body {
        last = line;
        let (head, rest) = split_head(content);
        match head {
            "sourcedist" => {
                if sources.is_some() {
                    return Err(err(line, ParseErrorKind::Repeated { kind: "sourcedist" }));
                }
                sources = Some(distribution(line, rest)?);
            }
            "sources" => {}
            "key" => {
                let (id, cells_text) = rest
                    .split_once(':')
                    .ok_or_else(|| err(line, ParseErrorKind::MissingColon))?;
                let id = int(line, id.trim())?;
                if id >= b {
                    return Err(err(line, ParseErrorKind::IdOutOfRange { id, limit: b }));
                }
                if rows[id].is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateId(id)));
                }
                let row = cells(line, cells_text, u)?;
                OrderedDesign::new(v, u, vec![row.clone()]).map_err(|e| err(line, e.at_row(id)))?;
                rows[id] = Some(row);
            }
            other => return Err(err(line, ParseErrorKind::UnexpectedLine(other.to_string()))),
        }
    }
    let found = rows.iter().filter(|r| r.is_some()).count();
    if found != b {
        return Err(err(
            last,
            ParseErrorKind::Count {
                what: "key lines",
                expected: b,
                found,
            },
        ));
    }
    let matrix = OrderedDesign::new(v, u, rows.into_iter().flatten().collect())
        .map_err(|e| err(header.line, e))?;
    let sources = match sources {
        Some(d) => d,
        None => Distribution::uniform(u).map_err(|e| err(header.line, e))?,
    };
    AuthCode::new(matrix, sources).map_err(|e| err(header.line, e))
}

pub fn parse_threshold(text: &str) -> Result<ThresholdScheme, ParseError> {
    let (header, body) = open(text, "THRESHOLD22")?;
    let [s, a1, a2] = header.ints(&["s", "a1", "a2"])?[..] else {
        unreachable!()
    };
    let mut secrets = None;
    let mut rules = Vec::new();
    let mut rule_lines = Vec::new();
    for (line, content) in body {
        let (head, rest) = split_head(content);
        match head {
            "secretdist" => {
                if secrets.is_some() {
                    return Err(err(line, ParseErrorKind::Repeated { kind: "secretdist" }));
                }
                secrets = Some(distribution(line, rest)?);
            }
            "rule" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                let [v1, v2, secret, w] = words[..] else {
                    return Err(err(line, ParseErrorKind::RuleArity));
                };
                rules.push(Rule {
                    v1: int(line, v1)?,
                    v2: int(line, v2)?,
                    secret: int(line, secret)?,
                    weight: rational(line, w)?,
                });
                rule_lines.push(line);
            }
            other => return Err(err(line, ParseErrorKind::UnexpectedLine(other.to_string()))),
        }
    }
    let secrets = match secrets {
        Some(d) if d.len() != s => {
            return Err(err(
                header.line,
                ParseErrorKind::Count {
                    what: "secret weights",
                    expected: s,
                    found: d.len(),
                },
            ))
        }
        Some(d) => d,
        None => Distribution::uniform(s).map_err(|e| err(header.line, e))?,
    };
    ThresholdScheme::new(secrets, a1, a2, rules.clone()).map_err(|e| {
        let line = match &e {
            ThresholdError::ShareOutOfRange { rule, .. }
            | ThresholdError::SecretOutOfRange { rule, .. }
            | ThresholdError::NonPositiveWeight { rule, .. } => rule_lines[*rule],
            ThresholdError::DuplicatePair { v1, v2 } => rules
                .iter()
                .zip(&rule_lines)
                .filter(|(r, _)| (r.v1, r.v2) == (*v1, *v2))
                .nth(1)
                .map_or(header.line, |(_, &l)| l),
            _ => header.line,
        };
        err(line, e)
    })
}

fn write_cells(out: &mut String, row: &[Cell]) {
    for (i, cell) in row.iter().enumerate() {
        if i > 0 {
            out.push_str(" |");
        }
        for p in cell {
            let _ = write!(out, " {p}");
        }
    }
}

fn write_dist(out: &mut String, name: &str, dist: &Distribution) {
    if !dist.is_uniform() {
        out.push_str(name);
        for w in dist.weights() {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
}

pub fn emit_design(design: &OrderedDesign) -> Result<String, EmitError> {
    let c = match design.cell_size() {
        Some(c) => c,
        None if design.b() == 0 => 1,
        None => return Err(EmitError::UnevenCells),
    };
    let mut out = format!("%DESIGN v={} u={} c={}\n", design.v(), design.u(), c);
    for row in design.rows() {
        out.push_str("row");
        write_cells(&mut out, row);
        out.push('\n');
    }
    Ok(out)
}

pub fn emit_base_blocks(base: &BaseBlocks) -> String {
    let mut out = format!("%BASEBLOCKS n={} u={} c={}\n", base.n, base.u, base.c);
    for row in &base.bases {
        out.push_str("base");
        write_cells(&mut out, row);
        out.push('\n');
    }
    out
}

pub fn emit_authcode(code: &AuthCode) -> String {
    let mut out = format!("%AUTHCODE v={} b={} u={}\n", code.v(), code.b(), code.u());
    write_dist(&mut out, "sourcedist", code.sources());
    for (k, row) in code.matrix().rows().iter().enumerate() {
        let _ = write!(out, "key {k}:");
        write_cells(&mut out, row);
        out.push('\n');
    }
    out
}

pub fn emit_threshold(scheme: &ThresholdScheme) -> String {
    let mut out = format!(
        "%THRESHOLD22 s={} a1={} a2={}\n",
        scheme.secret_count(),
        scheme.share1_alphabet(),
        scheme.share2_alphabet()
    );
    write_dist(&mut out, "secretdist", scheme.secrets());
    for r in scheme.rules() {
        let _ = writeln!(out, "rule {} {} {} {}", r.v1, r.v2, r.secret, r.weight);
    }
    out
}

pub fn emit(doc: &Document) -> Result<String, EmitError> {
    Ok(match doc {
        Document::Design(d) => emit_design(d)?,
        Document::BaseBlocks(b) => emit_base_blocks(b),
        Document::AuthCode(c) => emit_authcode(c),
        Document::Threshold(t) => emit_threshold(t),
    })
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = emit(self).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::develop;
    use crate::rational::rat;
    use crate::transform::authcode_to_threshold;

    const FANO: &str = "\
%AUTHCODE v=7 b=7 u=3
# Fano plane, base block 0 1 3
sources s1 s2 s3
key 0: 0 | 1 | 3
key 1: 1 | 2 | 4
key 2: 2 | 3 | 5
key 3: 3 | 4 | 6
key 4: 4 | 5 | 0
key 5: 5 | 6 | 1
key 6: 6 | 0 | 2
";

    fn fano() -> AuthCode {
        AuthCode::uniform(develop(&[vec![0], vec![1], vec![3]], 7).unwrap()).unwrap()
    }

    #[test]
    fn fano_file() {
        let code = parse_authcode(FANO).unwrap();
        assert_eq!(code, fano());
        let canonical = emit_authcode(&code);
        assert!(canonical.starts_with("%AUTHCODE v=7 b=7 u=3\nkey 0: 0 | 1 | 3\n"));
        assert!(canonical.contains("key 4: 4 | 5 | 0\n"));
        assert_eq!(
            emit_authcode(&parse_authcode(&canonical).unwrap()),
            canonical
        );
    }

    #[test]
    fn missing_separator() {
        let text = FANO.replace("key 2: 2 | 3 | 5", "key 2: 2 3 | 5");
        let e = parse_authcode(&text).unwrap_err();
        assert_eq!(e.line, 6);
        assert_eq!(
            e.kind,
            ParseErrorKind::CellCount {
                expected: 3,
                found: 2
            }
        );
        assert!(e.to_string().starts_with("line 6:"));
    }

    #[test]
    fn overlapping_cells_name_the_line() {
        let text = FANO.replace("key 3: 3 | 4 | 6", "key 3: 3 | 3 | 6");
        let e = parse(&text).unwrap_err();
        assert_eq!(e.line, 7);
        assert!(matches!(
            e.kind,
            ParseErrorKind::Design(DesignError::OverlappingCells {
                row: 3,
                point: 3,
                ..
            })
        ));
        assert!(e.to_string().contains("row 3 has overlapping cells"));
    }

    #[test]
    fn header_problems() {
        let e = parse("%AUTHCODE v=7 v=7 b=7 u=3\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateKey("v".into()));
        let e = parse("%AUTHCODE v=7 b=7\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingKey("u"));
        let e = parse("%AUTHCODE v=7 b=7 u=3 k=2\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownKey("k".into()));
        let e = parse("\n\n%WHATEVER\n").unwrap_err();
        assert_eq!(
            (e.line, e.kind),
            (3, ParseErrorKind::UnknownFormat("WHATEVER".into()))
        );
        assert_eq!(
            parse("# nothing\n").unwrap_err().kind,
            ParseErrorKind::Empty
        );
        assert_eq!(
            parse("key 0: 1\n").unwrap_err().kind,
            ParseErrorKind::MissingHeader
        );
    }

    #[test]
    fn key_bookkeeping() {
        let dup = FANO.replace("key 6:", "key 5:");
        assert_eq!(
            parse_authcode(&dup).unwrap_err().kind,
            ParseErrorKind::DuplicateId(5)
        );
        let short: String = FANO.lines().take(9).map(|l| format!("{l}\n")).collect();
        assert_eq!(
            parse_authcode(&short).unwrap_err().kind,
            ParseErrorKind::Count {
                what: "key lines",
                expected: 7,
                found: 6
            }
        );
        let out = FANO.replace("key 6:", "key 9:");
        assert_eq!(
            parse_authcode(&out).unwrap_err().kind,
            ParseErrorKind::IdOutOfRange { id: 9, limit: 7 }
        );
    }

    #[test]
    fn source_distribution_round_trip() {
        let text = FANO.replace("sources s1 s2 s3", "sourcedist 2/4 1/4 1/4");
        let code = parse_authcode(&text).unwrap();
        assert_eq!(code.sources().weight(0), &rat(1, 2).unwrap());
        let canonical = emit_authcode(&code);
        assert!(canonical.contains("\nsourcedist 1/2 1/4 1/4\n"));
        assert_eq!(parse_authcode(&canonical).unwrap(), code);
        let bad = FANO.replace("sources s1 s2 s3", "sourcedist 1/2 1/3 1/3");
        assert!(matches!(
            parse(&bad).unwrap_err().kind,
            ParseErrorKind::Distribution(_)
        ));
    }

    #[test]
    fn design_round_trip() {
        let d = develop(&[vec![0, 1], vec![2, 4], vec![12, 20]], 25).unwrap();
        let text = emit_design(&d).unwrap();
        assert!(text
            .starts_with("%DESIGN v=25 u=3 c=2\nrow 0 1 | 2 4 | 12 20\nrow 1 2 | 3 5 | 13 21\n"));
        assert_eq!(parse_design(&text).unwrap(), d);
        let e = parse_design("%DESIGN v=5 u=2 c=2\nrow 0 1 | 2\n").unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::CellSize {
                cell: 1,
                found: 1,
                expected: 2
            }
        );
        let uneven = OrderedDesign::new(3, 2, vec![vec![vec![0, 1], vec![2]]]).unwrap();
        assert_eq!(emit_design(&uneven), Err(EmitError::UnevenCells));
    }

    #[test]
    fn base_blocks_round_trip() {
        let text = "%BASEBLOCKS n=13 u=3 c=1\nbase 0 | 1 | 4\nbase 0 | 2 | 8 # second orbit\n";
        let b = parse_base_blocks(text).unwrap();
        assert_eq!(b.bases.len(), 2);
        let canonical = emit_base_blocks(&b);
        assert_eq!(
            canonical,
            "%BASEBLOCKS n=13 u=3 c=1\nbase 0 | 1 | 4\nbase 0 | 2 | 8\n"
        );
        assert!(matches!(
            parse(&canonical).unwrap(),
            Document::BaseBlocks(_)
        ));
        let e = parse_base_blocks("%BASEBLOCKS n=13 u=3 c=1\nbase 0 | 1 | 14\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn threshold_round_trip() {
        let scheme = authcode_to_threshold(&fano()).unwrap();
        let text = emit_threshold(&scheme);
        assert_eq!(text.lines().filter(|l| l.starts_with("rule ")).count(), 21);
        assert!(text.starts_with("%THRESHOLD22 s=3 a1=7 a2=7\nrule 0 0 0 1/7\nrule 0 1 1 1/7\n"));
        let back = parse_threshold(&text).unwrap();
        assert_eq!(back, scheme);
        assert_eq!(emit_threshold(&back), text);
    }

    #[test]
    fn threshold_errors_name_the_rule() {
        let text = "%THRESHOLD22 s=1 a1=2 a2=2\nrule 0 0 0 1/2\nrule 0 0 0 1/2\n";
        let e = parse_threshold(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(
            e.kind,
            ParseErrorKind::Threshold(ThresholdError::DuplicatePair { v1: 0, v2: 0 })
        );
        let text = "%THRESHOLD22 s=1 a1=2 a2=2\nrule 0 0 0 1/2\nrule 0 5 0 1/2\n";
        assert_eq!(parse_threshold(text).unwrap_err().line, 3);
        let text = "%THRESHOLD22 s=1 a1=2 a2=2\nrule 0 0 0\n";
        assert_eq!(
            parse_threshold(text).unwrap_err().kind,
            ParseErrorKind::RuleArity
        );
        let text = "%THRESHOLD22 s=1 a1=1 a2=1\nrule 0 0 0 2/2\n";
        let scheme = parse_threshold(text).unwrap();
        assert_eq!(
            emit_threshold(&scheme),
            "%THRESHOLD22 s=1 a1=1 a2=1\nrule 0 0 0 1/1\n"
        );
    }
}
