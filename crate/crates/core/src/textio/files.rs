//! Line-oriented file formats built on the expression parser.
//!
//! * ideals: `ideal(g1, g2, ...)`, optionally several joined by `*` (a product, i.e. a union of zero sets);
//! * rational pairs: numerator on the first nonblank line, denominator on the second;
//! * log data: one `lambda : factor` per line.
//!
//! Lines starting with `#` are comments everywhere.

use thiserror::Error;

use super::parse::{parse_polynomial, ParseError};
use crate::exactalg::{Polynomial, Scalar};
use crate::ideals::{Ideal, IdealError};
use crate::integrals::{IntegralError, LogData, RationalPair};

#[derive(Debug, Error)]
pub enum TextError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Integral(#[from] IntegralError),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

fn format_err(line: usize, message: impl Into<String>) -> TextError {
    TextError::Format { line, message: message.into() }
}

/// Nonblank, non-comment lines with their one-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Shift a parse error found in a substring back to coordinates of the whole text.
fn shift(mut e: ParseError, line: usize, column: usize) -> ParseError {
    if e.line == 1 {
        e.column += column - 1;
    }
    e.line += line - 1;
    e
}

fn line_col(text: &str, byte: usize) -> (usize, usize) {
    let before = &text[..byte];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parse polynomials twice when the ambient is inferred: once to find the largest index, once to build.
fn parse_all(pieces: &[(&str, usize, usize)], nvars: Option<usize>) -> Result<Vec<Polynomial>, TextError> {
    let n = match nvars {
        Some(n) => n,
        None => {
            let mut n = 1;
            for &(s, line, col) in pieces {
                n = n.max(parse_polynomial(s, None).map_err(|e| shift(e, line, col))?.nvars());
            }
            n
        }
    };
    pieces
        .iter()
        .map(|&(s, line, col)| parse_polynomial(s, Some(n)).map_err(|e| shift(e, line, col).into()))
        .collect()
}

/// Split `s` at top-level occurrences of `sep` (outside parentheses).
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..k]));
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Parse `ideal(...) * ideal(...)`; a product of several groups denotes the union of their zero sets.
pub fn parse_ideal(text: &str, nvars: Option<usize>) -> Result<Ideal, TextError> {
    let stripped: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n");
    let mut groups: Vec<Vec<(&str, usize, usize)>> = Vec::new();
    for (offset, part) in split_top(&stripped, '*').into_iter().filter(|(_, p)| p.contains("ideal")) {
        let trimmed = part.trim();
        let lead = offset + (part.len() - part.trim_start().len());
        let (line, _) = line_col(&stripped, lead);
        let inner = trimmed
            .strip_prefix("ideal")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format_err(line, "expected `ideal(g1, g2, ...)`"))?;
        let inner_start = lead + trimmed.find('(').expect("checked above") + 1;
        let gens = split_top(inner, ',')
            .into_iter()
            .map(|(o, g)| {
                let (l, c) = line_col(&stripped, inner_start + o);
                (g, l, c)
            })
            .collect();
        groups.push(gens);
    }
    // Anything other than `ideal(...)` groups and `*` is rejected.
    for (offset, part) in split_top(&stripped, '*') {
        if !part.trim().is_empty() && !part.contains("ideal") {
            return Err(format_err(line_col(&stripped, offset).0, format!("unexpected `{}`", part.trim())));
        }
    }
    if groups.is_empty() {
        return Err(format_err(1, "no `ideal(...)` found"));
    }
    let flat: Vec<(&str, usize, usize)> = groups.iter().flatten().copied().collect();
    let polys = parse_all(&flat, nvars)?;
    let n = polys[0].nvars();
    let mut ideals = Vec::new();
    let mut it = polys.into_iter();
    for g in &groups {
        let gens: Vec<Polynomial> = it.by_ref().take(g.len()).collect();
        ideals.push(Ideal::new(n, gens)?);
    }
    Ok(Ideal::product_all(&ideals)?)
}

/// Parse a rational pair: numerator line, then denominator line.
pub fn parse_rational_pair(text: &str, nvars: Option<usize>) -> Result<RationalPair, TextError> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    if lines.len() != 2 {
        return Err(format_err(lines.get(2).map_or(1, |l| l.0), format!("expected 2 lines (numerator, denominator), found {}", lines.len())));
    }
    let pieces: Vec<_> = lines.iter().map(|&(l, s)| (s, l, 1)).collect();
    let mut polys = parse_all(&pieces, nvars)?;
    let g = polys.pop().expect("two lines");
    let f = polys.pop().expect("two lines");
    Ok(RationalPair::new(f, g)?)
}

/// Parse `lambda : factor` lines into log data.
pub fn parse_log_data(text: &str, nvars: Option<usize>) -> Result<LogData, TextError> {
    let mut lambdas = Vec::new();
    let mut pieces = Vec::new();
    for (line, s) in content_lines(text) {
        let (lam, factor) = s.split_once(':').ok_or_else(|| format_err(line, "expected `lambda : factor`"))?;
        let lambda: Scalar = lam.trim().parse().map_err(|_| format_err(line, format!("invalid residue `{}`", lam.trim())))?;
        lambdas.push(lambda);
        pieces.push((factor, line, lam.chars().count() + 2));
    }
    if pieces.is_empty() {
        return Err(format_err(1, "no factors given"));
    }
    let factors = parse_all(&pieces, nvars)?;
    Ok(LogData::new(factors, lambdas)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::test_support::z;
    use crate::ideals::GroebnerBudget;

    #[test]
    fn ideal_products() {
        let i = parse_ideal("ideal(z1, z2) * ideal(z3)", Some(4)).unwrap();
        assert_eq!(i.generators().len(), 2);
        let expected = Ideal::new(4, vec![&z(1) * &z(3), &z(2) * &z(3)]).unwrap();
        assert!(i.variety_equals(&expected, GroebnerBudget::default()).unwrap());
        let single = parse_ideal("# comment\nideal(2z1z3 - z2^2,\n  z4)", None).unwrap();
        assert_eq!(single.nvars(), 4);
        assert_eq!(single.generators().len(), 2);
    }

    #[test]
    fn ideal_errors() {
        assert!(parse_ideal("z1, z2", None).is_err());
        assert!(parse_ideal("ideal(z1) + z2", None).is_err());
        let e = parse_ideal("ideal(z1,\n z2 +)", None).unwrap_err();
        match e {
            TextError::Parse(p) => assert_eq!(p.line, 2),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn pairs_and_log_data() {
        let pair = parse_rational_pair("z2^2\nz1z3\n", None).unwrap();
        assert_eq!(pair.nvars(), 3);
        assert_eq!(pair.degree(), 2);
        assert!(parse_rational_pair("z1\n", None).is_err());
        let data = parse_log_data("4 : z1\n2 : z4\n-3 : 2z1z3 - z2^2\n", None).unwrap();
        assert_eq!(data.factors().len(), 3);
        assert_eq!(data.lambdas()[2], Scalar::from_int(-3));
        assert!(parse_log_data("x : z1", None).is_err());
    }
}
