//! Text formats: quaternion literals, polynomial lines, matrix files and
//! boundary-value spec files.
//!
//! A quaternion literal is a whitespace-free sum of signed terms `<float>`,
//! `<float>i`, `<float>j`, `<float>k` in any order; a unit coefficient may be
//! omitted (`-k`, `2+i`).

use std::collections::BTreeMap;

use crate::bvp::BvpSpec;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::QPoly;
use crate::quaternion::Quaternion;

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { column, message: message.into() }
}

/// Parses a quaternion literal such as `1+2i-3j+0.5k`.
///
/// Error columns are 1-based character positions within `text`.
pub fn parse_quaternion(text: &str) -> Result<Quaternion> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(1, "empty literal"));
    }
    let mut comps = [0.0f64; 4];
    let mut pos = 0;
    let mut first = true;
    while pos < bytes.len() {
        let term_start = pos;
        let mut sign = 1.0;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -1.0;
                pos += 1;
            }
            _ if first => {}
            c => return Err(parse_err(pos + 1, format!("expected '+' or '-', found '{}'", c as char))),
        }
        first = false;

        let num_start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'.') {
            pos += 1;
        }
        let mantissa_end = pos;
        if mantissa_end > num_start && pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
            pos += 1;
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                pos += 1;
            }
            let exp_digits = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == exp_digits {
                return Err(parse_err(pos + 1, "missing exponent digits"));
            }
        }
        let coeff = if pos > num_start {
            let s = &text[num_start..pos];
            s.parse::<f64>().map_err(|_| parse_err(num_start + 1, format!("bad number '{s}'")))?
        } else {
            1.0
        };

        let slot = match bytes.get(pos) {
            Some(b'i') => Some(1),
            Some(b'j') => Some(2),
            Some(b'k') => Some(3),
            _ => None,
        };
        let slot = match slot {
            Some(s) => {
                pos += 1;
                s
            }
            None => {
                if pos == num_start {
                    let at = pos + 1;
                    return Err(match bytes.get(pos) {
                        Some(&c) => parse_err(at, format!("unexpected '{}'", c as char)),
                        None => parse_err(at, "dangling sign"),
                    });
                }
                0
            }
        };
        if pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(parse_err(pos + 1, format!("unexpected '{}'", bytes[pos] as char)));
        }
        if pos == term_start {
            return Err(parse_err(pos + 1, "empty term"));
        }
        comps[slot] += sign * coeff;
    }
    Ok(Quaternion::new(comps[0], comps[1], comps[2], comps[3]))
}

/// Formats a real with `digits` significant digits, trimming trailing
/// zeros. Negative zero prints as `0`.
pub fn format_real(v: f64, digits: usize) -> String {
    let digits = digits.clamp(1, 17);
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Formats a quaternion literal that [`parse_quaternion`] reads back.
pub fn format_quaternion(q: Quaternion, digits: usize) -> String {
    let mut out = String::new();
    for (v, unit) in q.components().into_iter().zip(["", "i", "j", "k"]) {
        if v == 0.0 {
            continue;
        }
        let s = format_real(v, digits);
        if !out.is_empty() && !s.starts_with('-') {
            out.push('+');
        }
        out.push_str(&s);
        out.push_str(unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Like [`format_quaternion`], but drops components at round-off level
/// relative to `max(1, |q|)`.
pub fn format_clean(q: Quaternion, digits: usize) -> String {
    let cut = 1e-13 * q.norm().max(1.0);
    let c = q.components().map(|v| if v.abs() <= cut { 0.0 } else { v });
    format_quaternion(Quaternion::new(c[0], c[1], c[2], c[3]), digits)
}

fn parse_list(line: &str, col_offset: usize) -> Result<Vec<Quaternion>> {
    let mut out = Vec::new();
    let mut idx = 0;
    for tok in line.split_whitespace() {
        let start = line[idx..].find(tok).map(|p| p + idx).unwrap_or(idx);
        idx = start + tok.len();
        out.push(parse_quaternion(tok).map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse { column: column + start + col_offset, message },
            other => other,
        })?);
    }
    Ok(out)
}

/// Polynomial line: coefficients in ascending powers, whitespace separated.
pub fn parse_poly(text: &str) -> Result<QPoly> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| Error::InvalidInput("empty polynomial".into()))?;
    let coeffs = parse_list(line, 0)?;
    Ok(QPoly::new(coeffs))
}

pub fn format_poly(p: &QPoly, digits: usize) -> String {
    p.coeffs().iter().map(|c| format_quaternion(*c, digits)).collect::<Vec<_>>().join(" ")
}

/// Matrix file: a header line `rows cols` followed by `rows` lines of `cols`
/// literals.
pub fn parse_matrix(text: &str) -> Result<QMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::InvalidInput("empty matrix file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad matrix header '{header}'")))?;
    let [rows, cols] = dims[..] else {
        return Err(Error::InvalidInput(format!("bad matrix header '{header}'")));
    };
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput("matrix dimensions must be positive".into()));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let line = lines.next().ok_or_else(|| Error::InvalidInput(format!("missing matrix row {}", r + 1)))?;
        let row = parse_list(line, 0)?;
        if row.len() != cols {
            return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
        }
        entries.extend(row);
    }
    if lines.next().is_some() {
        return Err(Error::InvalidInput("trailing rows after matrix".into()));
    }
    QMatrix::from_vec(rows, cols, entries)
}

pub fn format_matrix(m: &QMatrix, digits: usize) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| format_quaternion(m[(r, c)], digits)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Reads `key = value` lines; `#` starts a comment.
fn parse_key_values(text: &str, allowed: &[&str]) -> Result<BTreeMap<String, (String, usize)>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("line {}: expected 'key = value'", lineno + 1)))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(Error::InvalidInput(format!("line {}: unknown key '{key}'", lineno + 1)));
        }
        if map.insert(key.to_string(), (value.trim().to_string(), lineno + 1)).is_some() {
            return Err(Error::InvalidInput(format!("line {}: duplicate key '{key}'", lineno + 1)));
        }
    }
    Ok(map)
}

fn single(value: &(String, usize)) -> Result<Quaternion> {
    let list = parse_list(&value.0, 0)?;
    match list[..] {
        [q] => Ok(q),
        _ => Err(Error::InvalidInput(format!("line {}: expected one quaternion", value.1))),
    }
}

/// Boundary-value spec file with keys `N`, `a`, `b`, `h1`, `h2`, `s`.
///
/// `h1`, `h2` default to zero; `s` is optional and returned separately.
pub fn parse_bvp(text: &str) -> Result<(BvpSpec, Option<Quaternion>)> {
    let map = parse_key_values(text, &["N", "a", "b", "h1", "h2", "s"])?;
    let need = |k: &str| map.get(k).ok_or_else(|| Error::InvalidInput(format!("missing key '{k}'")));
    let n_entry = need("N")?;
    let n: usize = n_entry
        .0
        .parse()
        .map_err(|_| Error::InvalidInput(format!("line {}: N must be a positive integer", n_entry.1)))?;
    let a = parse_list(&need("a")?.0, 0)?;
    let b = parse_list(&need("b")?.0, 0)?;
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.len() });
    }
    if b.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: b.len() });
    }
    let h1 = map.get("h1").map(single).transpose()?.unwrap_or(Quaternion::ZERO);
    let h2 = map.get("h2").map(single).transpose()?.unwrap_or(Quaternion::ZERO);
    let s = map.get("s").map(single).transpose()?;
    Ok((BvpSpec::new(a, b, h1, h2)?, s))
}

pub fn format_bvp(spec: &BvpSpec, s: Option<Quaternion>) -> String {
    let list = |v: &[Quaternion]| v.iter().map(|q| format_quaternion(*q, 17)).collect::<Vec<_>>().join(" ");
    let mut out = format!(
        "N = {}\na = {}\nb = {}\nh1 = {}\nh2 = {}\n",
        spec.n(),
        list(spec.a()),
        list(spec.b()),
        format_quaternion(spec.h1(), 17),
        format_quaternion(spec.h2(), 17)
    );
    if let Some(s) = s {
        out.push_str(&format!("s = {}\n", format_quaternion(s, 17)));
    }
    out
}

/// Reconstruction data: `F = q1 … qN` and `lambda = …` evaluation points.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructData {
    pub coeffs: Vec<Quaternion>,
    pub points: Vec<Quaternion>,
}

pub fn parse_reconstruct_data(text: &str) -> Result<ReconstructData> {
    let map = parse_key_values(text, &["F", "lambda"])?;
    let coeffs = parse_list(&map.get("F").ok_or_else(|| Error::InvalidInput("missing key 'F'".into()))?.0, 0)?;
    let points =
        parse_list(&map.get("lambda").ok_or_else(|| Error::InvalidInput("missing key 'lambda'".into()))?.0, 0)?;
    Ok(ReconstructData { coeffs, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literals() {
        assert_eq!(parse_quaternion("1+2i-3j+0.5k").unwrap(), Quaternion::new(1.0, 2.0, -3.0, 0.5));
        assert_eq!(parse_quaternion("-k").unwrap(), Quaternion::new(0.0, 0.0, 0.0, -1.0));
        assert_eq!(parse_quaternion("0").unwrap(), Quaternion::ZERO);
        assert_eq!(parse_quaternion("j-i").unwrap(), Quaternion::new(0.0, -1.0, 1.0, 0.0));
        assert_eq!(parse_quaternion("1e-3i+2E2").unwrap(), Quaternion::new(200.0, 1e-3, 0.0, 0.0));
        assert_eq!(parse_quaternion("+.5k").unwrap(), Quaternion::new(0.0, 0.0, 0.0, 0.5));
    }

    #[test]
    fn literal_errors_carry_columns() {
        assert_eq!(parse_quaternion("1+2x"), Err(parse_err(4, "unexpected 'x'")));
        assert!(matches!(parse_quaternion(""), Err(Error::Parse { column: 1, .. })));
        assert!(matches!(parse_quaternion("1+"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_quaternion("2ii"), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_quaternion("1e+i"), Err(Error::Parse { .. })));
        assert!(matches!(parse_quaternion("1..2"), Err(Error::Parse { column: 1, .. })));
    }

    #[test]
    fn list_errors_are_offset() {
        let err = parse_poly("1 2 3+q").unwrap_err();
        assert_eq!(err, parse_err(7, "unexpected 'q'"));
    }

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(-0.0, 6), "0");
        assert_eq!(format_real(1.5, 6), "1.5");
        assert_eq!(format_real(3f64.sqrt(), 6), "1.73205");
        assert_eq!(format_real(1234567.0, 6), "1.23457e6");
        assert_eq!(format_real(-1.2e-9, 3), "-1.2e-9");
        assert_eq!(format_real(100.0, 3), "100");
    }

    #[test]
    fn quaternion_formatting() {
        assert_eq!(format_quaternion(Quaternion::new(1.0, 2.0, -3.0, 0.5), 6), "1+2i-3j+0.5k");
        assert_eq!(format_quaternion(Quaternion::new(-0.0, 0.0, 0.0, -1.0), 6), "-1k");
        assert_eq!(format_quaternion(Quaternion::ZERO, 6), "0");
    }

    #[test]
    fn matrix_file() {
        let m = parse_matrix("2 2\nj -i\n-i j\n").unwrap();
        assert_eq!(m[(0, 1)], -Quaternion::I);
        assert_eq!(parse_matrix(&format_matrix(&m, 17)).unwrap(), m);
        assert!(matches!(parse_matrix("2 2\nj -i\n-i\n"), Err(Error::DimensionMismatch { .. })));
        assert!(parse_matrix("2 2\nj -i\n").is_err());
    }

    #[test]
    fn bvp_file() {
        let text = "N = 3\na = j j j\nb = -i -i -i -i\n# comment\ns = 1+k\n";
        let (spec, s) = parse_bvp(text).unwrap();
        assert_eq!(spec.n(), 3);
        assert_eq!(spec.h1(), Quaternion::ZERO);
        assert_eq!(s, Some(Quaternion::ONE + Quaternion::K));
        let (again, s2) = parse_bvp(&format_bvp(&spec, s)).unwrap();
        assert_eq!(again, spec);
        assert_eq!(s2, s);
        assert!(parse_bvp("N = 1\na = j\nb = 1 1\nfoo = 2\n").is_err());
        assert!(matches!(parse_bvp("N = 2\na = j\nb = 1 1 1\n"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_bvp("N = 1\na = j\nb = 0 1\n"), Err(Error::ZeroDivision { .. })));
    }

    proptest! {
        #[test]
        fn literal_roundtrip_at_17_digits(
            w in -1e6f64..1e6, x in -1e6f64..1e6, y in -1e-6f64..1e-6, z in prop::num::f64::NORMAL
        ) {
            let q = Quaternion::new(w, x, y, z);
            let back = parse_quaternion(&format_quaternion(q, 17)).unwrap();
            prop_assert_eq!(back, q);
        }
    }
}
