use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::word::{is_generator_name, Word};

/// A finite presentation `<generators | relators>`.
///
/// Relators are stored freely reduced; empty relators are dropped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new<S: Into<String>>(generators: Vec<S>, relators: Vec<Word>) -> Result<Self> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, g) in generators.iter().enumerate() {
            if !is_generator_name(g) {
                return Err(Error::InvalidArgument(format!("bad generator name `{g}`")));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidArgument(format!("duplicate generator `{g}`")));
            }
        }
        let mut p = Presentation {
            generators,
            relators: Vec::new(),
        };
        p.push_relators(relators)?;
        Ok(p)
    }

    /// The free group on the given generators.
    pub fn free<S: Into<String>>(generators: Vec<S>) -> Result<Self> {
        Presentation::new(generators, Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn push_relators(&mut self, words: Vec<Word>) -> Result<()> {
        for w in &words {
            if let Some(g) = w.generators().find(|g| !self.generators.iter().any(|x| x == g)) {
                return Err(Error::UnknownGenerator(g.to_string()));
            }
        }
        self.relators.extend(
            words
                .into_iter()
                .map(|w| w.free_reduce())
                .filter(|w| !w.is_empty()),
        );
        Ok(())
    }

    /// The presentation of this group modulo the normal closure of `extra`.
    pub fn quotient(&self, extra: &[Word]) -> Result<Self> {
        let mut p = self.clone();
        p.push_relators(extra.to_vec())?;
        Ok(p)
    }
}

/// Prints as `<a, b | a^3; b^2>`.
impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { "; " };
            write!(f, "{sep}{r}")?;
        }
        f.write_str(">")
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationRepr {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl serde::Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PresentationRepr {
            generators: self.generators.clone(),
            relators: self.relators.clone(),
        };
        serde::Serialize::serialize(&repr, s)
    }
}

impl<'de> serde::Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = <PresentationRepr as serde::Deserialize>::deserialize(d)?;
        Presentation::new(r.generators, r.relators).map_err(<D::Error as serde::de::Error>::custom)
    }
}

impl FromStr for Presentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('<')
            .and_then(|b| b.strip_suffix('>'))
            .ok_or_else(|| Error::parse("presentation", s))?;
        let (gens, rels) = body
            .split_once('|')
            .ok_or_else(|| Error::parse("presentation", body))?;
        let generators: Vec<String> = gens
            .split(',')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(String::from)
            .collect();
        let relators = rels
            .split(';')
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Word>>>()?;
        Presentation::new(generators, relators)
    }
}
