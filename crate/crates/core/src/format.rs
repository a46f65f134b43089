//! Plain-text algebra files.
//!
//! ```text
//! # comment
//! dim 3
//! layers 1..2; 3..3
//! bracket 1 2 = 3
//! bracket 1 3 = 2*1 - 1/2*2
//! ```
//!
//! `dim` comes first. `layers` is optional and lists consecutive index
//! ranges, one per layer. Each `bracket a b = ...` line gives `[e_a, e_b]`
//! (with `a < b`) as a sum of terms `c*k` or `k`, where `c` is an integer
//! or a fraction `p/q` and `k` a basis index. Indices are 1-based.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{zero_vec, Rational, Subspace};
use crate::grading::{verify_stratification, Stratification};
use crate::liealg::LieAlgebra;

/// Parsed contents of an algebra file. The algebra is not checked against
/// the Jacobi identity here, so that broken tables can still be inspected.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub algebra: LieAlgebra,
    /// Declared layers as 1-based inclusive index ranges.
    pub layers: Option<Vec<RangeInclusive<usize>>>,
}

impl AlgebraFile {
    pub fn layer_subspaces(&self) -> Option<Vec<Subspace>> {
        let n = self.algebra.dim();
        self.layers.as_ref().map(|ls| ranges_to_layers(n, ls))
    }

    /// Validates the declared layers, if any.
    pub fn stratification(&self) -> Option<Result<Stratification>> {
        self.layer_subspaces()
            .map(|layers| verify_stratification(&self.algebra, &layers))
    }
}

pub fn ranges_to_layers(n: usize, ranges: &[RangeInclusive<usize>]) -> Vec<Subspace> {
    ranges
        .iter()
        .map(|r| Subspace::coordinate(n, (*r.start() - 1)..*r.end()))
        .collect()
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_index(tok: &str, line: usize, dim: usize) -> Result<usize> {
    let i: usize = tok
        .parse()
        .map_err(|_| err(line, format!("expected a basis index, found `{tok}`")))?;
    if i == 0 || i > dim {
        return Err(err(line, format!("index {i} out of range 1..{dim}")));
    }
    Ok(i)
}

pub fn parse_rational(tok: &str) -> Option<Rational> {
    let tok = tok.trim();
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (tok, "1"),
    };
    let ok = |s: &str| {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) || den.starts_with(['-', '+']) {
        return None;
    }
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Parses `1..10` (or a single index `7`) into a 1-based inclusive range.
pub fn parse_range(tok: &str) -> Option<RangeInclusive<usize>> {
    let tok = tok.trim();
    let (a, b) = tok.split_once("..").unwrap_or((tok, tok));
    let a: usize = a.trim().parse().ok()?;
    let b: usize = b.trim().parse().ok()?;
    (a >= 1 && a <= b).then_some(a..=b)
}

fn parse_layers(rest: &str, line: usize, dim: usize) -> Result<Vec<RangeInclusive<usize>>> {
    let mut out = Vec::new();
    let mut next = 1;
    for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let r = parse_range(part).ok_or_else(|| err(line, format!("bad layer range `{part}`")))?;
        if *r.start() != next {
            return Err(err(line, format!("layer `{part}` does not start at index {next}")));
        }
        if *r.end() > dim {
            return Err(err(line, format!("layer `{part}` exceeds dimension {dim}")));
        }
        next = r.end() + 1;
        out.push(r);
    }
    if out.is_empty() {
        return Err(err(line, "empty layers directive"));
    }
    if next != dim + 1 {
        return Err(err(line, format!("layers cover 1..{} but dimension is {dim}", next - 1)));
    }
    Ok(out)
}

fn parse_terms(rhs: &str, line: usize, dim: usize) -> Result<Vec<Rational>> {
    let mut v = zero_vec(dim);
    let compact: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err(line, "empty bracket value"));
    }
    // split before every sign that is not at the start
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for (i, c) in compact.char_indices() {
        if (c == '+' || c == '-') && i > start && !matches!(bytes[i - 1], b'+' | b'-' | b'*' | b'/') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'-' => (-Rational::one(), &term[1..]),
            b'+' => (Rational::one(), &term[1..]),
            _ => (Rational::one(), term),
        };
        let (coef, idx) = match body.split_once('*') {
            Some((c, k)) => (
                parse_rational(c).ok_or_else(|| err(line, format!("bad coefficient `{c}`")))?,
                k,
            ),
            None => (Rational::one(), body),
        };
        let k = parse_index(idx, line, dim)?;
        v[k - 1] += sign * coef;
    }
    Ok(v)
}

pub fn parse(text: &str) -> Result<AlgebraFile> {
    let mut dim: Option<usize> = None;
    let mut layers = None;
    let mut entries = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line, "dimension given twice"));
                }
                let n: usize = rest.parse().map_err(|_| err(line, format!("bad dimension `{rest}`")))?;
                if n == 0 {
                    return Err(err(line, "dimension must be positive"));
                }
                dim = Some(n);
            }
            "layers" => {
                let n = dim.ok_or_else(|| err(line, "`layers` before `dim`"))?;
                if layers.is_some() {
                    return Err(err(line, "layers given twice"));
                }
                layers = Some(parse_layers(rest, line, n)?);
            }
            "bracket" => {
                let n = dim.ok_or_else(|| err(line, "`bracket` before `dim`"))?;
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line, "expected `bracket a b = ...`"))?;
                let idx: Vec<&str> = lhs.split_whitespace().collect();
                if idx.len() != 2 {
                    return Err(err(line, "expected two indices before `=`"));
                }
                let a = parse_index(idx[0], line, n)?;
                let b = parse_index(idx[1], line, n)?;
                if a >= b {
                    return Err(err(line, format!("bracket {a} {b}: first index must be smaller")));
                }
                if !seen.insert((a, b)) {
                    return Err(err(line, format!("bracket {a} {b} given twice")));
                }
                entries.push((a - 1, b - 1, parse_terms(rhs, line, n)?));
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    let dim = dim.ok_or_else(|| err(0, "missing `dim` line"))?;
    Ok(AlgebraFile {
        algebra: LieAlgebra::raw(dim, entries)?,
        layers,
    })
}

fn format_terms(v: &[Rational]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        let _ = write!(out, "{}", k + 1);
    }
    out
}

pub fn format_ranges(ranges: &[RangeInclusive<usize>]) -> String {
    ranges
        .iter()
        .map(|r| format!("{}..{}", r.start(), r.end()))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Canonical text for an algebra, with optional layers and header comment.
pub fn emit(l: &LieAlgebra, layers: Option<&[RangeInclusive<usize>]>, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "dim {}", l.dim());
    if let Some(ls) = layers {
        let _ = writeln!(out, "layers {}", format_ranges(ls));
    }
    for (&(a, b), v) in l.table() {
        let _ = writeln!(out, "bracket {} {} = {}", a + 1, b + 1, format_terms(v));
    }
    out
}

/// Consecutive index ranges for a coordinate-aligned stratification.
pub fn aligned_ranges(s: &Stratification) -> Option<Vec<RangeInclusive<usize>>> {
    if !s.is_coordinate_aligned() {
        return None;
    }
    let mut start = 1;
    Some(
        s.layer_dims()
            .into_iter()
            .map(|d| {
                let r = start..=start + d - 1;
                start += d;
                r
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{frac, q};

    #[test]
    fn heisenberg_file() {
        let f = parse("dim 3\nbracket 1 2 = 3\n").unwrap();
        assert_eq!(f.algebra, LieAlgebra::from_integer_table(3, &[(1, 2, &[(1, 3)])]).unwrap());
        assert!(f.layers.is_none());
    }

    #[test]
    fn terms_with_fractions_and_signs() {
        let f = parse("# test\n dim   4 \n\nbracket 1 2 = 3/2*3 - 4   # trailing\nbracket 1 3=-2*4+-1/3*4\n").unwrap();
        assert_eq!(f.algebra.bracket_basis(0, 1), vec![q(0), q(0), frac(3, 2), q(-1)]);
        assert_eq!(f.algebra.bracket_basis(0, 2), vec![q(0), q(0), q(0), frac(-7, 3)]);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let line_of = |text: &str| match parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(line_of("dim 3\nbracket 2 1 = 3\n"), 2);
        assert_eq!(line_of("dim 3\nbracket 1 2 = 3\nbracket 1 2 = 3\n"), 3);
        assert_eq!(line_of("dim 3\n\nbracket 1 2 = 4\n"), 3);
        assert_eq!(line_of("dim 3\nbracket 1 2 = 1/0*3\n"), 2);
        assert_eq!(line_of("dim 3\nbracket 1 2 = x*3\n"), 2);
        assert_eq!(line_of("bracket 1 2 = 3\n"), 1);
        assert_eq!(line_of("dim 3\nlayers 1..2; 4..4\n"), 2);
        assert_eq!(line_of("dim 3\nlayers 2..3\n"), 2);
        assert_eq!(line_of("dim 3\nfoo 1\n"), 2);
        assert_eq!(line_of(""), 0);
    }

    #[test]
    fn emit_is_canonical() {
        let f = parse("dim 4\nlayers 1..2; 3..3; 4..4\nbracket 1 3 = 4\nbracket 1 2 = 3\n").unwrap();
        let text = emit(&f.algebra, f.layers.as_deref(), Some("filiform"));
        assert_eq!(
            text,
            "# filiform\ndim 4\nlayers 1..2; 3..3; 4..4\nbracket 1 2 = 3\nbracket 1 3 = 4\n"
        );
        let back = parse(&text).unwrap();
        assert_eq!(back.algebra, f.algebra);
        assert_eq!(back.layers, f.layers);
        assert_eq!(format_terms(&[frac(-1, 2), q(1), q(-3)]), "-1/2*1 + 2 - 3*3");
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1..10"), Some(1..=10));
        assert_eq!(parse_range(" 7 "), Some(7..=7));
        assert_eq!(parse_range("3..2"), None);
        assert_eq!(parse_range("0..2"), None);
        assert_eq!(parse_rational("-3/4"), Some(frac(-3, 4)));
        assert_eq!(parse_rational("3/-4"), None);
    }
}
