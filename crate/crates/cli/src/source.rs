//! Compact generator descriptions used on the command line.

use std::fmt;
use std::str::FromStr;

use mincut_core::{generate, Error, Generated, GeneratorKind, Result};

/// A graph family with its parameters, written `name:arg:arg...`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSource {
    text: String,
    kind: GeneratorKind,
}

impl GraphSource {
    pub fn generate(&self, seed: u64) -> Result<Generated> {
        generate(&self.kind, seed)
    }
}

fn field<T: FromStr>(parts: &[&str], i: usize, name: &str, text: &str) -> Result<T> {
    parts
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("`{text}` is missing {name}")))?
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("`{text}` has a malformed {name}")))
}

fn optional<T: FromStr>(parts: &[&str], i: usize, name: &str, text: &str, default: T) -> Result<T> {
    if i < parts.len() {
        field(parts, i, name, text)
    } else {
        Ok(default)
    }
}

impl FromStr for GraphSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let (max_fields, kind) = match parts[0] {
            "cycle" => (2, GeneratorKind::Cycle { n: field(&parts, 1, "n", s)? }),
            "complete" => (2, GeneratorKind::Complete { n: field(&parts, 1, "n", s)? }),
            "planted" => (
                6,
                GeneratorKind::Planted {
                    left: field(&parts, 1, "left size", s)?,
                    right: field(&parts, 2, "right size", s)?,
                    intra: optional(&parts, 3, "intra capacity", s, 10)?,
                    inter: optional(&parts, 4, "inter capacity", s, 1)?,
                    crossing: optional(&parts, 5, "crossing count", s, 1)?,
                },
            ),
            "random" => (
                5,
                GeneratorKind::Random {
                    n: field(&parts, 1, "n", s)?,
                    edge_probability: optional(&parts, 2, "edge probability", s, 0.5)?,
                    min_capacity: optional(&parts, 3, "min capacity", s, 1)?,
                    max_capacity: optional(&parts, 4, "max capacity", s, 10)?,
                },
            ),
            other => return Err(Error::InvalidArgument(format!("unknown graph family `{other}`"))),
        };
        if parts.len() > max_fields {
            return Err(Error::InvalidArgument(format!("`{s}` has too many fields")));
        }
        Ok(Self { text: s.to_string(), kind })
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_families() {
        let c: GraphSource = "cycle:16".parse().unwrap();
        assert_eq!(c.kind, GeneratorKind::Cycle { n: 16 });
        let p: GraphSource = "planted:4:5:8".parse().unwrap();
        assert_eq!(
            p.kind,
            GeneratorKind::Planted { left: 4, right: 5, intra: 8, inter: 1, crossing: 1 }
        );
        assert!("random:10:0.3".parse::<GraphSource>().is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["cycle", "cycle:x", "cycle:4:5", "torus:4", ""] {
            assert!(bad.parse::<GraphSource>().is_err(), "{bad}");
        }
    }
}
