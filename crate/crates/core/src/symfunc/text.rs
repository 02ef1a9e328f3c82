//! Human-readable and JSON forms of Schur-basis vectors.
//!
//! Text form: `3*s[2] + 1*s[1,1]`, with `0` for the zero vector. JSON form: a
//! list of `{"partition": [..], "coeff": n}` records in canonical basis order,
//! with coefficients written as exact JSON integers of any size.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Partition, SchurVector};
use crate::lincomb::LinComb;

#[derive(Debug, Error)]
pub enum ParseVectorError {
    #[error("malformed term {0:?}; expected something like 3*s[2,1]")]
    Term(String),
    #[error(transparent)]
    Partition(#[from] super::PartitionError),
    #[error("malformed JSON vector: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient {0:?} is not an integer")]
    Coefficient(String),
    #[error("partition {0} occurs twice")]
    Duplicate(Partition),
}

/// Writes `c*label` terms joined by ` + ` / ` - `.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (String, &'a BigInt)>,
{
    let mut first = true;
    for (label, c) in terms {
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{}*{label}", c.abs())?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LinComb<Partition> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.iter().map(|(p, c)| (format!("s{p}"), c)))
    }
}

/// Splits `a + b - c` into signed term strings, ignoring signs inside brackets.
pub(crate) fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut negative = false;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' | '(' => {
                depth += 1;
                cur.push(ch);
            }
            ']' | ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                let t = cur.trim().to_string();
                if !t.is_empty() {
                    out.push((negative, t));
                    negative = ch == '-';
                } else if ch == '-' {
                    negative = !negative;
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    let t = cur.trim().to_string();
    if !t.is_empty() || !out.is_empty() {
        out.push((negative, t));
    }
    out
}

/// Splits `3*s[2]` or `s[2]` into its coefficient and the remaining label.
pub(crate) fn split_coefficient(term: &str) -> Result<(BigInt, &str), ParseVectorError> {
    match term.split_once('*') {
        Some((c, rest)) => {
            let c = c.trim();
            let c = c.parse::<BigInt>().map_err(|_| ParseVectorError::Coefficient(c.to_string()))?;
            Ok((c, rest.trim()))
        }
        None => Ok((BigInt::from(1), term.trim())),
    }
}

fn parse_schur_term(label: &str) -> Result<Partition, ParseVectorError> {
    let label = label.trim();
    let inner = label
        .strip_prefix('s')
        .map(str::trim)
        .filter(|x| x.starts_with('[') || x.starts_with('('))
        .ok_or_else(|| ParseVectorError::Term(label.to_string()))?;
    Ok(inner.parse()?)
}

/// Accepts the output of `Display`, plus bare integers for multiples of `s[]`.
impl FromStr for LinComb<Partition> {
    type Err = ParseVectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = SchurVector::zero();
        if s.trim() == "0" {
            return Ok(out);
        }
        for (negative, term) in split_terms(s) {
            if term.is_empty() {
                return Err(ParseVectorError::Term(s.to_string()));
            }
            let (c, p) = if let Ok(n) = term.parse::<BigInt>() {
                (n, Partition::empty())
            } else {
                let (c, label) = split_coefficient(&term)?;
                (c, parse_schur_term(label)?)
            };
            out.add_term(p, if negative { -c } else { c });
        }
        Ok(out)
    }
}

/// Parses `c*s[..] ⊗ s[..] + ...` into tuples, returning the common arity
/// (0 when the input is `0`).
pub(crate) fn parse_tensor_terms(s: &str) -> Result<(usize, LinComb<Vec<Partition>>), ParseVectorError> {
    let mut out = LinComb::zero();
    let mut arity = None;
    if s.trim() == "0" {
        return Ok((0, out));
    }
    for (negative, term) in split_terms(s) {
        let (c, label) = split_coefficient(&term)?;
        let tuple = label
            .split(['⊗', '@'])
            .map(parse_schur_term)
            .collect::<Result<Vec<_>, _>>()?;
        match arity {
            None => arity = Some(tuple.len()),
            Some(a) if a != tuple.len() => return Err(ParseVectorError::Term(term.clone())),
            Some(_) => {}
        }
        out.add_term(tuple, if negative { -c } else { c });
    }
    Ok((arity.unwrap_or(0), out))
}

#[derive(Serialize, Deserialize)]
struct Record {
    partition: Partition,
    coeff: serde_json::Number,
}

/// Serializes to the canonical list of `{partition, coeff}` records.
pub fn schur_to_json(v: &SchurVector) -> String {
    let records: Vec<Record> = v
        .iter()
        .map(|(p, c)| Record {
            partition: p.clone(),
            coeff: c.to_string().parse().expect("integer literal is a JSON number"),
        })
        .collect();
    serde_json::to_string(&records).expect("records serialize")
}

pub fn schur_from_json(s: &str) -> Result<SchurVector, ParseVectorError> {
    let records: Vec<Record> = serde_json::from_str(s)?;
    let mut out = SchurVector::zero();
    let mut seen = std::collections::BTreeSet::new();
    for r in records {
        let text = r.coeff.to_string();
        let c = text.parse::<BigInt>().map_err(|_| ParseVectorError::Coefficient(text))?;
        if !seen.insert(r.partition.clone()) {
            return Err(ParseVectorError::Duplicate(r.partition));
        }
        out.add_term(r.partition, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{hopf_power, s};

    #[test]
    fn display_matches_expected_form() {
        assert_eq!(hopf_power(2, &s(&[2])).to_string(), "3*s[2] + 1*s[1,1]");
        assert_eq!(SchurVector::zero().to_string(), "0");
        let v = &s(&[1]) - &s(&[2]);
        assert_eq!(v.to_string(), "1*s[1] - 1*s[2]");
        assert_eq!((-&v).to_string(), "-1*s[1] + 1*s[2]");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["3*s[2] + 1*s[1,1]", "0", "-2*s[] - 1*s[3,1]", "s[2]", "5"] {
            let v: SchurVector = text.parse().unwrap();
            let again: SchurVector = v.to_string().parse().unwrap();
            assert_eq!(v, again, "{text}");
        }
        assert_eq!("s[2]".parse::<SchurVector>().unwrap(), s(&[2]));
        assert!("3*t[2]".parse::<SchurVector>().is_err());
        assert!("s[1,2]".parse::<SchurVector>().is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let mut v = s(&[2, 1]);
        v.add_term(Partition::row(4), big.clone());
        v.add_term(Partition::empty(), -7);
        let text = schur_to_json(&v);
        assert!(text.contains("123456789012345678901234567890"));
        assert_eq!(schur_from_json(&text).unwrap(), v);
        assert_eq!(schur_to_json(&schur_from_json(&text).unwrap()), text);
    }

    #[test]
    fn json_rejects_bad_records() {
        assert!(schur_from_json(r#"[{"partition":[1,2],"coeff":1}]"#).is_err());
        assert!(schur_from_json(r#"[{"partition":[1],"coeff":1.5}]"#).is_err());
        assert!(schur_from_json(r#"[{"partition":[1],"coeff":1},{"partition":[1],"coeff":2}]"#).is_err());
    }
}
