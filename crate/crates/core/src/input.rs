//! The JSON input document: rank, generators, optional name and bound overrides.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lattice::{LatticePoint, LatticeVector};
use crate::monoid::{AffineMonoid, BoundsOverride};

/// Optional overrides of the analysis bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsInput {
    #[serde(with = "crate::wire::opt_int", default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_window: Option<usize>,
    #[serde(with = "crate::wire::opt_int", default, skip_serializing_if = "Option::is_none")]
    pub root_height: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

impl From<&BoundsInput> for BoundsOverride {
    fn from(b: &BoundsInput) -> Self {
        BoundsOverride {
            degree_bound: b.degree_bound.clone(),
            family_window: b.family_window,
            root_height: b.root_height.clone(),
            max_iter: b.max_iter,
        }
    }
}

/// A validated input document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidInputDocument {
    pub rank: usize,
    pub generators: Vec<LatticePoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsInput>,
}

/// A rejected document, located by line and field path.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}{field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct InputError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl From<InputError> for Error {
    fn from(e: InputError) -> Self {
        Error::InvalidInput(e.to_string())
    }
}

/// Line (1-based) of the start of element `index` of the top-level array field `key`.
fn locate_element(text: &str, key: &str, index: usize) -> Option<usize> {
    let needle = format!("\"{key}\"");
    let start = text.find(&needle)? + needle.len();
    let bytes = text.as_bytes();
    let mut i = start + text[start..].find('[')? + 1;
    let mut depth = 0usize;
    let mut seen = 0usize;
    let mut at_start = true;
    let mut in_str = false;
    while i < bytes.len() {
        let c = bytes[i];
        if in_str {
            if c == b'\\' {
                i += 1;
            } else if c == b'"' {
                in_str = false;
            }
        } else if !c.is_ascii_whitespace() {
            if at_start && depth == 0 && c != b']' {
                if seen == index {
                    return Some(text[..i].matches('\n').count() + 1);
                }
                seen += 1;
                at_start = false;
            }
            match c {
                b'"' => in_str = true,
                b'[' | b'{' => depth += 1,
                b']' | b'}' if depth == 0 => return None,
                b']' | b'}' => depth -= 1,
                b',' if depth == 0 => at_start = true,
                _ => {}
            }
        }
        i += 1;
    }
    None
}

fn line_of_key(text: &str, key: &str) -> Option<usize> {
    let pos = text.find(&format!("\"{key}\""))?;
    Some(text[..pos].matches('\n').count() + 1)
}

impl MonoidInputDocument {
    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: MonoidInputDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            InputError {
                line: Some(inner.line()),
                field: if path == "." { "document".into() } else { path },
                message: inner.to_string(),
            }
        })?;
        doc.validate_in(text)?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<(), InputError> {
        self.validate_in("")
    }

    fn validate_in(&self, text: &str) -> Result<(), InputError> {
        let at = |i: usize, message: String| InputError {
            line: locate_element(text, "generators", i),
            field: format!("generators[{i}]"),
            message,
        };
        if self.rank == 0 {
            return Err(InputError {
                line: line_of_key(text, "rank"),
                field: "rank".into(),
                message: "rank must be positive".into(),
            });
        }
        if self.generators.is_empty() {
            return Err(InputError {
                line: line_of_key(text, "generators"),
                field: "generators".into(),
                message: "at least one generator is required".into(),
            });
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.rank() != self.rank {
                return Err(at(i, format!("has length {} but rank is {}", g.rank(), self.rank)));
            }
            if g.is_zero() {
                return Err(at(i, "the zero vector is not a generator".into()));
            }
            if let Some(j) = self.generators[..i].iter().position(|h| h == g) {
                return Err(at(i, format!("duplicates generators[{j}] {g}")));
            }
        }
        if let Some(b) = &self.bounds {
            let bad = |f: &str| InputError {
                line: line_of_key(text, f),
                field: format!("bounds.{f}"),
                message: "must be positive".into(),
            };
            if b.degree_bound.as_ref().is_some_and(|x| x <= &BigInt::ZERO) {
                return Err(bad("degree_bound"));
            }
            if b.root_height.as_ref().is_some_and(|x| x <= &BigInt::ZERO) {
                return Err(bad("root_height"));
            }
            if b.family_window == Some(0) {
                return Err(bad("family_window"));
            }
            if b.max_iter == Some(0) {
                return Err(bad("max_iter"));
            }
        }
        Ok(())
    }

    pub fn monoid(&self) -> crate::Result<AffineMonoid> {
        AffineMonoid::new(&self.generators)
    }

    pub fn bounds_override(&self) -> BoundsOverride {
        self.bounds.as_ref().map(BoundsOverride::from).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example2() {
        let d = MonoidInputDocument::parse(r#"{"rank":2,"generators":[[1,0],[0,2],[0,3]],"name":"e2"}"#).unwrap();
        assert_eq!(d.generators.len(), 3);
        assert_eq!(d.monoid().unwrap().rank(), 2);
        let back = serde_json::to_string(&d).unwrap();
        assert_eq!(MonoidInputDocument::parse(&back).unwrap(), d);
    }

    #[test]
    fn duplicate_is_located() {
        let text = "{\n  \"rank\": 2,\n  \"generators\": [\n    [1, 0],\n    [1, 0]\n  ]\n}";
        let e = MonoidInputDocument::parse(text).unwrap_err();
        assert_eq!(e.field, "generators[1]");
        assert_eq!(e.line, Some(5));
        assert!(e.message.contains("duplicates"));
    }

    #[test]
    fn rank_mismatch_and_empty() {
        let e = MonoidInputDocument::parse(r#"{"rank":2,"generators":[[1,0],[1]]}"#).unwrap_err();
        assert_eq!(e.field, "generators[1]");
        let e = MonoidInputDocument::parse(r#"{"rank":2,"generators":[]}"#).unwrap_err();
        assert_eq!(e.field, "generators");
        let e = MonoidInputDocument::parse(r#"{"rank":1,"generators":[[0]]}"#).unwrap_err();
        assert!(e.message.contains("zero"));
    }

    #[test]
    fn structural_errors_name_the_field() {
        let e = MonoidInputDocument::parse("{\"rank\":2,\n\"generators\":[[1,\"x\"]]}").unwrap_err();
        assert_eq!(e.field, "generators[0][1]");
        assert_eq!(e.line, Some(2));
        let e = MonoidInputDocument::parse(r#"{"rank":2,"generators":[[1,0]],"extra":1}"#).unwrap_err();
        assert!(e.message.contains("extra"));
        let e = MonoidInputDocument::parse(r#"{"rank":2,"generators":[[1,0]],"bounds":{"degree_bound":0}}"#).unwrap_err();
        assert_eq!(e.field, "bounds.degree_bound");
    }
}
