//! Singularity types as multiplicity sequences.
//!
//! A type `[t1, ..., ts]` lists the multiplicities of the curve at a point
//! before each blow-up of its resolution; `l_r` abbreviates `r` equal
//! entries `l`. A nested entry `M,(|T1|,...,|Tl|)` is a point of
//! multiplicity `M` whose blow-up splits into the infinitely near points
//! `T1..Tl` (an unordered multiset).
//!
//! Text grammar:
//!
//! ```text
//! type    := "[" item ("," item)* "]"
//! item    := int | int "_" int | "(" cluster ("," cluster)* ")"
//! cluster := "|" type "|"
//! ```
//!
//! A cluster group attaches to the multiplicity written just before it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    Mult(BigUint),
    Nested {
        head: BigUint,
        clusters: Vec<SingularityType>,
    },
}

/// Multiplicity sequence of a singular point.
///
/// Multiplicity-1 entries are legal in storage; they keep the
/// self-intersection bookkeeping exact for degree-1 inputs and are hidden
/// by [`SingularityType::pretty`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularityType {
    entries: Vec<Entry>,
}

/// Runs this long or longer print as `l_r`.
const ABBREVIATE_RUN: usize = 3;

impl SingularityType {
    /// A flat sequence of multiplicities, each at least 1.
    pub fn flat<I, T>(multiplicities: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let entries: Vec<Entry> = multiplicities
            .into_iter()
            .map(|m| m.into())
            .map(|m: BigUint| {
                if m.is_zero() {
                    Err(Error::InvalidArgument("multiplicity must be at least 1".into()))
                } else {
                    Ok(Entry::Mult(m))
                }
            })
            .collect::<Result<_>>()?;
        if entries.is_empty() {
            return Err(Error::InvalidArgument("empty singularity type".into()));
        }
        Ok(SingularityType { entries })
    }

    /// `[m_count]` without the tacnode restriction on `m`.
    pub(crate) fn run(m: &BigUint, count: u64) -> Self {
        debug_assert!(count > 0 && !m.is_zero());
        SingularityType {
            entries: (0..count).map(|_| Entry::Mult(m.clone())).collect(),
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn is_flat(&self) -> bool {
        self.entries.iter().all(|e| matches!(e, Entry::Mult(_)))
    }

    /// Decrease of self-intersection caused by resolving this point:
    /// the sum of squared multiplicities over every blow-up.
    pub fn drop(&self) -> BigUint {
        self.entries
            .iter()
            .map(|e| match e {
                Entry::Mult(m) => m * m,
                Entry::Nested { head, clusters } => {
                    head * head + clusters.iter().map(SingularityType::drop).sum::<BigUint>()
                }
            })
            .sum()
    }

    /// Display form with multiplicity-1 entries elided. A type made only of
    /// ones keeps them.
    pub fn pretty(&self) -> String {
        let kept: Vec<Entry> = self
            .entries
            .iter()
            .filter_map(|e| match e {
                Entry::Mult(m) if m.is_one() => None,
                other => Some(other.clone()),
            })
            .collect();
        if kept.is_empty() {
            return self.to_string();
        }
        let mut out = String::from("[");
        write_entries(&mut out, &kept, true);
        out.push(']');
        out
    }
}

/// A `d`-tacnode of order `q`: `d` smooth branches with contact of order
/// `q`, multiplicity sequence `[d_{q+1}]`. Order 0 is an ordinary `d`-fold point.
pub fn tacnode_type(d: u64, q: u64) -> Result<SingularityType> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "a tacnode needs at least two branches, got {d}"
        )));
    }
    Ok(SingularityType::run(&BigUint::from(d), q + 1))
}

/// The point obtained by blowing down a section carrying `clusters`, with
/// multiplicity `head`. A single flat cluster flattens to `[head, ...]`.
pub fn blowdown_type(head: BigUint, clusters: Vec<SingularityType>) -> Result<SingularityType> {
    if head < BigUint::from(2u32) {
        return Err(Error::InvalidArgument(format!(
            "blow-down head multiplicity must be at least 2, got {head}"
        )));
    }
    if clusters.is_empty() {
        return Err(Error::InvalidArgument("blow-down needs at least one cluster".into()));
    }
    Ok(SingularityType {
        entries: canonical_entries(vec![nested_entry(head, clusters)]),
    })
}

fn nested_entry(head: BigUint, mut clusters: Vec<SingularityType>) -> Entry {
    clusters.sort();
    Entry::Nested { head, clusters }
}

/// Canonical entry list: a trailing nested entry whose only cluster is flat
/// is spliced into the sequence.
fn canonical_entries(mut entries: Vec<Entry>) -> Vec<Entry> {
    if let Some(Entry::Nested { clusters, .. }) = entries.last() {
        if clusters.len() == 1 && clusters[0].is_flat() {
            let Some(Entry::Nested { head, mut clusters }) = entries.pop() else {
                unreachable!()
            };
            entries.push(Entry::Mult(head));
            entries.append(&mut clusters.remove(0).entries);
        }
    }
    entries
}

fn write_entries(out: &mut String, entries: &[Entry], pretty: bool) {
    let mut i = 0;
    let mut first = true;
    while i < entries.len() {
        if !first {
            out.push(',');
        }
        first = false;
        match &entries[i] {
            Entry::Mult(m) => {
                let mut run = 1;
                while i + run < entries.len() && entries[i + run] == entries[i] {
                    run += 1;
                }
                if run >= ABBREVIATE_RUN {
                    out.push_str(&format!("{m}_{run}"));
                    i += run;
                } else {
                    out.push_str(&m.to_string());
                    i += 1;
                }
            }
            Entry::Nested { head, clusters } => {
                out.push_str(&format!("{head},("));
                for (j, c) in clusters.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    out.push('|');
                    out.push_str(&if pretty { c.pretty() } else { c.to_string() });
                    out.push('|');
                }
                out.push(')');
                i += 1;
            }
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::from("[");
        write_entries(&mut out, &self.entries, false);
        out.push(']');
        f.write_str(&out)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self) -> Error {
        let rest = &self.src[self.pos..];
        let token: String = rest.chars().take(8).collect();
        Error::parse("singularity type", if token.is_empty() { "end of input".into() } else { token })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn int(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let digits: String = self.src[self.pos..]
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return Err(self.error());
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("decimal digits"))
    }

    fn singularity(&mut self) -> Result<SingularityType> {
        self.expect('[')?;
        let mut entries: Vec<Entry> = Vec::new();
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let mut clusters = Vec::new();
                    loop {
                        self.expect('|')?;
                        clusters.push(self.singularity()?);
                        self.expect('|')?;
                        match self.peek() {
                            Some(',') => self.pos += 1,
                            Some(')') => {
                                self.pos += 1;
                                break;
                            }
                            _ => return Err(self.error()),
                        }
                    }
                    let head = match entries.pop() {
                        Some(Entry::Mult(m)) if m >= BigUint::from(2u32) => m,
                        _ => return Err(self.error()),
                    };
                    entries.push(nested_entry(head, clusters));
                }
                Some(c) if c.is_ascii_digit() => {
                    let m = self.int()?;
                    if m.is_zero() {
                        return Err(Error::parse("singularity type", "0"));
                    }
                    let count = if self.peek() == Some('_') {
                        self.pos += 1;
                        let r = self.int()?;
                        u64::try_from(&r)
                            .ok()
                            .filter(|&r| r > 0)
                            .ok_or_else(|| Error::parse("singularity type", r.to_string()))?
                    } else {
                        1
                    };
                    entries.extend((0..count).map(|_| Entry::Mult(m.clone())));
                }
                _ => return Err(self.error()),
            }
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error()),
            }
        }
        Ok(SingularityType {
            entries: canonical_entries(entries),
        })
    }
}

impl FromStr for SingularityType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { src: s, pos: 0 };
        let t = cur.singularity()?;
        if cur.peek().is_some() {
            return Err(cur.error());
        }
        Ok(t)
    }
}

/// A multiset of singularity types in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SingularityMultiset {
    items: Vec<SingularityType>,
}

impl SingularityMultiset {
    pub fn new() -> Self {
        SingularityMultiset::default()
    }

    pub fn insert(&mut self, t: SingularityType) {
        let at = self.items.partition_point(|x| x <= &t);
        self.items.insert(at, t);
    }

    pub fn insert_many(&mut self, t: SingularityType, count: usize) {
        for _ in 0..count {
            self.insert(t.clone());
        }
    }

    pub fn union(&self, other: &SingularityMultiset) -> SingularityMultiset {
        let mut out = self.clone();
        for t in &other.items {
            out.insert(t.clone());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &SingularityType> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn count(&self, t: &SingularityType) -> usize {
        self.items.iter().filter(|x| *x == t).count()
    }

    pub fn total_drop(&self) -> BigUint {
        self.items.iter().map(SingularityType::drop).sum()
    }
}

impl FromIterator<SingularityType> for SingularityMultiset {
    fn from_iter<I: IntoIterator<Item = SingularityType>>(iter: I) -> Self {
        let mut items: Vec<_> = iter.into_iter().collect();
        items.sort();
        SingularityMultiset { items }
    }
}

crate::intser::serde_as_text!(SingularityType);

impl serde::Serialize for SingularityMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(&self.items)
    }
}

impl<'de> serde::Deserialize<'de> for SingularityMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(<Vec<SingularityType> as serde::Deserialize>::deserialize(d)?.into_iter().collect())
    }
}

impl fmt::Display for SingularityMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}
