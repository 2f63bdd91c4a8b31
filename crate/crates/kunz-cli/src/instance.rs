//! Instance specifications: a semigroup given either by generators or by a
//! Kunz vector, as parsed from flags or instance files.

use kunz::{KunzCoordinates, NumericalSemigroup};
use serde::{Deserialize, Serialize};
use std::fmt;

/// One input semigroup. Exactly one of the two representations is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kunz: Option<(i64, Vec<i64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

/// Parses a comma-separated integer list; whitespace-insensitive;
/// duplicates allowed (normalized on load).
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    for (pos, tok) in s.split(',').enumerate() {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(ParseError(format!("empty entry at position {}", pos + 1)));
        }
        out.push(
            tok.parse::<i64>()
                .map_err(|e| ParseError(format!("entry {} ({tok:?}): {e}", pos + 1)))?,
        );
    }
    if out.is_empty() {
        return Err(ParseError("empty list".into()));
    }
    Ok(out)
}

/// Parses the `m:x1,...,x_{m-1}` form of a Kunz vector.
pub fn parse_kunz_arg(s: &str) -> Result<(i64, Vec<i64>), ParseError> {
    let (m_str, rest) = s
        .split_once(':')
        .ok_or_else(|| ParseError("expected m:x1,x2,... with a colon".into()))?;
    let m = m_str
        .trim()
        .parse::<i64>()
        .map_err(|e| ParseError(format!("multiplicity {m_str:?}: {e}")))?;
    Ok((m, parse_int_list(rest)?))
}

impl InstanceSpec {
    pub fn from_generators(gens: Vec<i64>) -> Self {
        InstanceSpec { label: None, generators: Some(gens), kunz: None }
    }

    pub fn from_kunz(m: i64, coords: Vec<i64>) -> Self {
        InstanceSpec { label: None, generators: None, kunz: Some((m, coords)) }
    }

    /// Validates and loads the instance as Kunz coordinates. Generator
    /// input is normalized (sorted, deduplicated) along the way.
    pub fn load(&self) -> Result<KunzCoordinates, ParseError> {
        match (&self.generators, &self.kunz) {
            (Some(gens), None) => {
                let s = NumericalSemigroup::new(gens).map_err(|e| ParseError(e.to_string()))?;
                s.kunz_coordinates().map_err(|e| ParseError(e.to_string()))
            }
            (None, Some((m, coords))) => KunzCoordinates::new(*m, coords.clone())
                .map_err(|e| ParseError(e.to_string())),
            (Some(_), Some(_)) => {
                Err(ParseError("give either generators or a Kunz vector, not both".into()))
            }
            (None, None) => Err(ParseError("no generators and no Kunz vector given".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lists_with_whitespace_and_duplicates() {
        assert_eq!(parse_int_list(" 5, 11 ,12,18 ").unwrap(), vec![5, 11, 12, 18]);
        let spec = InstanceSpec::from_generators(vec![5, 11, 11, 12, 18]);
        assert_eq!(spec.load().unwrap().coords(), &[2, 2, 3, 4]);
    }

    #[test]
    fn parses_kunz_form() {
        let (m, v) = parse_kunz_arg("5:2,2,3,4").unwrap();
        assert_eq!((m, v.as_slice()), (5, &[2, 2, 3, 4][..]));
        assert!(parse_kunz_arg("5;2,2").is_err());
        assert!(parse_int_list("1,,2").is_err());
    }

    #[test]
    fn load_rejects_bad_instances() {
        assert!(InstanceSpec::from_generators(vec![4, 6]).load().is_err());
        assert!(InstanceSpec::from_kunz(5, vec![1, 1, 3, 1]).load().is_err());
        assert!(InstanceSpec { label: None, generators: None, kunz: None }.load().is_err());
        let both = InstanceSpec {
            label: None,
            generators: Some(vec![2, 3]),
            kunz: Some((2, vec![1])),
        };
        assert!(both.load().is_err());
    }
}
