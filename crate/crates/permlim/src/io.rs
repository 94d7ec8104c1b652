//! Shared text formats.
//!
//! * Permutations: one per line, single-space-separated 1-indexed values
//!   ("5 6 2 4 7 1 3"); blank lines and lines starting with '#' ignored.
//! * Matrices: first line the order k, then k rows of k tokens; tokens are
//!   decimal ("0.25") or exact rational ("1/4") and parse exactly.
//! * Permutons: JSON {"k", "kind": "atomic"|"diffuse", "cdf": [[...]]} with
//!   entries as strings in either token form, row-major.

use num::{BigInt, BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::GeneralMatrix;
use crate::numeric::{format_decimal, format_ratio};
use crate::perm::Permutation;
use crate::permuton::{GridKind, GridPermuton};

/// Parses a number token: optional sign, then "p/q", a decimal, or an
/// integer. Exact: "0.25" becomes 1/4.
pub fn parse_number(token: &str) -> Result<BigRational> {
    let token = token.trim();
    if token.is_empty() {
        return Err(Error::parse("empty number token"));
    }
    let (negative, body) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    if body.is_empty() {
        return Err(Error::parse(format!("bare sign in {token:?}")));
    }
    let value = if let Some((num, den)) = body.split_once('/') {
        let n = parse_bigint(num)?;
        let d = parse_bigint(den)?;
        if d.is_zero() {
            return Err(Error::parse(format!("zero denominator in {token:?}")));
        }
        BigRational::new(n, d)
    } else if let Some((whole, frac)) = body.split_once('.') {
        let whole = if whole.is_empty() {
            BigInt::zero()
        } else {
            parse_bigint(whole)?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("bad decimal {token:?}")));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_int = parse_bigint(frac)?;
        BigRational::new(whole * &scale + frac_int, scale)
    } else {
        BigRational::from_integer(parse_bigint(body)?)
    };
    Ok(if negative { -value } else { value })
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("bad integer {s:?}")));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::parse(format!("bad integer {s:?}: {e}")))
}

/// Parses a single permutation line.
pub fn parse_permutation(line: &str) -> Result<Permutation> {
    let images: Vec<u32> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::parse(format!("bad permutation value {t:?}")))
        })
        .collect::<Result<_>>()?;
    Permutation::new(images)
}

/// Reads every permutation from a text document, skipping blanks and '#'
/// comments.
pub fn parse_permutations(text: &str) -> Result<Vec<Permutation>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_permutation)
        .collect()
}

pub fn format_permutation(p: &Permutation) -> String {
    p.to_string()
}

/// Parses the matrix text format.
pub fn parse_matrix(text: &str) -> Result<GeneralMatrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::parse("empty matrix"))?;
    let k: usize = header
        .parse()
        .map_err(|_| Error::parse(format!("bad matrix order {header:?}")))?;
    if k == 0 {
        return Err(Error::parse("matrix order must be positive"));
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(format!("expected {k} matrix rows")))?;
        let row: Vec<BigRational> = line
            .split_whitespace()
            .map(parse_number)
            .collect::<Result<_>>()?;
        if row.len() != k {
            return Err(Error::parse(format!(
                "row has {} entries, expected {k}",
                row.len()
            )));
        }
        rows.push(row);
    }
    GeneralMatrix::new(rows)
}

/// How numeric values are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    /// "p/q" exact rationals (integers stay bare).
    Rational,
    /// Fixed decimal places.
    Decimal(usize),
}

pub fn format_number(r: &BigRational, style: NumberStyle) -> String {
    match style {
        NumberStyle::Rational => format_ratio(r),
        NumberStyle::Decimal(places) => format_decimal(r, places),
    }
}

pub fn format_matrix(m: &GeneralMatrix, style: NumberStyle) -> String {
    let k = m.order();
    let mut out = String::new();
    out.push_str(&k.to_string());
    out.push('\n');
    for i in 1..=k {
        let row: Vec<String> = (1..=k)
            .map(|j| format_number(m.get(i, j), style))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct PermutonFile {
    k: usize,
    kind: GridKind,
    cdf: Vec<Vec<String>>,
}

/// Parses the permuton JSON document.
pub fn parse_permuton(text: &str) -> Result<GridPermuton> {
    let file: PermutonFile =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("bad permuton JSON: {e}")))?;
    if file.cdf.len() != file.k {
        return Err(Error::parse(format!(
            "cdf has {} rows, expected k = {}",
            file.cdf.len(),
            file.k
        )));
    }
    let rows: Vec<Vec<BigRational>> = file
        .cdf
        .iter()
        .map(|row| {
            if row.len() != file.k {
                return Err(Error::parse(format!(
                    "cdf row has {} entries, expected k = {}",
                    row.len(),
                    file.k
                )));
            }
            row.iter().map(|t| parse_number(t)).collect()
        })
        .collect::<Result<_>>()?;
    GridPermuton::new(GeneralMatrix::new(rows)?, file.kind)
}

/// Serializes a permuton to its JSON document (rational value strings, so
/// the round-trip is exact).
pub fn format_permuton(z: &GridPermuton) -> String {
    let k = z.order();
    let cdf: Vec<Vec<String>> = (1..=k)
        .map(|i| (1..=k).map(|j| format_ratio(z.cdf().get(i, j))).collect())
        .collect();
    let file = PermutonFile {
        k,
        kind: z.kind(),
        cdf,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

/// RFC 4180 CSV field quoting.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    #[test]
    fn number_tokens() {
        assert_eq!(parse_number("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_number("1/4").unwrap(), ratio(1, 4));
        assert_eq!(parse_number("1").unwrap(), ratio(1, 1));
        assert_eq!(parse_number(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_number("-0.75").unwrap(), ratio(-3, 4));
        assert!(parse_number("").is_err());
        assert!(parse_number("1/0").is_err());
        assert!(parse_number("0.2.5").is_err());
        assert!(parse_number("abc").is_err());
        assert!(parse_number("1e3").is_err());
    }

    #[test]
    fn permutation_document() {
        let text = "# sample\n\n5 6 2 4 7 1 3\n2 1\n";
        let perms = parse_permutations(text).unwrap();
        assert_eq!(perms.len(), 2);
        assert_eq!(format_permutation(&perms[0]), "5 6 2 4 7 1 3");
        assert!(parse_permutation("1 1").is_err());
        assert!(parse_permutation("0 1").is_err());
        assert!(parse_permutation("1 x").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = "2\n0.25 0.75\n1/4 3/4\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.get(1, 1), &ratio(1, 4));
        assert_eq!(m.get(2, 2), &ratio(3, 4));
        let emitted = format_matrix(&m, NumberStyle::Rational);
        assert_eq!(parse_matrix(&emitted).unwrap(), m);
        assert_eq!(format_matrix(&m, NumberStyle::Decimal(2)), "2\n0.25 0.75\n0.25 0.75\n");

        assert!(parse_matrix("2\n0.5 0.5\n").is_err());
        assert!(parse_matrix("1\n1.5\n").is_err());
        assert!(parse_matrix("").is_err());
    }

    #[test]
    fn permuton_round_trip() {
        let z = GridPermuton::uniform();
        let text = format_permuton(&z);
        assert_eq!(parse_permuton(&text).unwrap(), z);

        let doc = r#"{"k":2,"kind":"atomic","cdf":[["0","1"],["1/2","1"]]}"#;
        let z = parse_permuton(doc).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(parse_permuton(&format_permuton(&z)).unwrap(), z);

        // non-monotone row rejected
        let doc = r#"{"k":2,"kind":"diffuse","cdf":[["1","0"],["0","1"]]}"#;
        assert!(parse_permuton(doc).is_err());
        // out-of-range entry rejected
        let doc = r#"{"k":1,"kind":"diffuse","cdf":[["2"]]}"#;
        assert!(parse_permuton(doc).is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
