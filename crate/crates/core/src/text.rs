//! Text form of polynomials: `1+x^3+x^12`, `1+2x^3`, `2*x^5 - x`.
//!
//! The serializer emits ascending exponents, omits unit coefficients and
//! writes `x` for `x^1`; the zero polynomial prints as `0`.

use std::fmt;

use crate::error::{param, Result};

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, u8)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (e, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("x")?,
            (1, c) => write!(f, "{c}x")?,
            (e, 1) => write!(f, "x^{e}")?,
            (e, c) => write!(f, "{c}x^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Parses a polynomial into `(exponent, signed coefficient)` terms. The
/// caller reduces coefficients into its field.
pub fn parse_terms(s: &str) -> Result<Vec<(usize, i64)>> {
    let chars: Vec<char> = s.chars().collect();
    for (i, c) in chars.iter().enumerate() {
        if !c.is_whitespace() {
            continue;
        }
        let before = chars[..i].iter().rev().find(|c| !c.is_whitespace());
        let after = chars[i..].iter().find(|c| !c.is_whitespace());
        if let (Some(b), Some(a)) = (before, after) {
            if (b.is_alphanumeric() || *b == '^') && (a.is_alphanumeric() || *a == '^') {
                return param(format!("unexpected space inside a term in {s:?}"));
            }
        }
    }
    let compact: String = chars.into_iter().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return param("empty polynomial string");
    }
    let bytes = compact.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return param(format!("expected '+' or '-' at offset {i} in {s:?}"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start {
            Some(compact[start..i].parse().map_err(|_| {
                crate::Error::Parameter(format!("coefficient out of range in {s:?}"))
            })?)
        } else {
            None
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            if i >= bytes.len() || bytes[i] != b'x' {
                return param(format!("expected 'x' after '*' in {s:?}"));
            }
        }
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            let mut exp = 1usize;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return param(format!("missing exponent after '^' in {s:?}"));
                }
                exp = compact[es..i].parse().map_err(|_| {
                    crate::Error::Parameter(format!("exponent out of range in {s:?}"))
                })?;
            }
            terms.push((exp, sign * coeff.unwrap_or(1)));
        } else {
            match coeff {
                Some(c) => terms.push((0, sign * c)),
                None => return param(format!("malformed term at offset {start} in {s:?}")),
            }
        }
    }
    Ok(terms)
}
