//! Zariski pairs: equal combinatorics, distinguished complements, and
//! lifting of a pair through a construction.

use serde::{Deserialize, Serialize};

use crate::constructions::{apply, ConstructionSpec};
use crate::curves::CurveDatum;
use crate::error::{Error, Result};
use crate::extensions::Property;

/// Evidence that the two complements differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distinguisher {
    None,
    /// Left group cyclic, right group certified non-cyclic.
    CyclicVsNoncyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RecordRepr", into = "RecordRepr")]
pub struct ZariskiPairRecord {
    left: CurveDatum,
    right: CurveDatum,
    combinatorics_equal: bool,
    distinguisher: Distinguisher,
    generation: u64,
    lineage: Vec<ConstructionSpec>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordRepr {
    left: CurveDatum,
    right: CurveDatum,
    combinatorics_equal: bool,
    distinguisher: Distinguisher,
    generation: u64,
    parent_spec: Option<ConstructionSpec>,
    lineage: Vec<ConstructionSpec>,
}

impl From<ZariskiPairRecord> for RecordRepr {
    fn from(r: ZariskiPairRecord) -> Self {
        RecordRepr {
            parent_spec: r.parent_spec().cloned(),
            left: r.left,
            right: r.right,
            combinatorics_equal: r.combinatorics_equal,
            distinguisher: r.distinguisher,
            generation: r.generation,
            lineage: r.lineage,
        }
    }
}

impl TryFrom<RecordRepr> for ZariskiPairRecord {
    type Error = Error;

    fn try_from(r: RecordRepr) -> Result<Self> {
        let mut rec = ZariskiPairRecord::seed(r.left, r.right);
        if rec.combinatorics_equal != r.combinatorics_equal || rec.distinguisher != r.distinguisher {
            return Err(Error::Document("pair record flags do not match its curves".into()));
        }
        if r.generation != r.lineage.len() as u64 || r.parent_spec.as_ref() != r.lineage.last() {
            return Err(Error::Document("pair record lineage does not match its generation".into()));
        }
        rec.generation = r.generation;
        rec.lineage = r.lineage;
        Ok(rec)
    }
}

/// Same degree, same component degrees and same singularities.
pub fn combinatorics_equal(a: &CurveDatum, b: &CurveDatum) -> bool {
    let sorted = |c: &CurveDatum| {
        let mut v = c.component_degrees().to_vec();
        v.sort();
        v
    };
    a.degree() == b.degree() && sorted(a) == sorted(b) && a.singularities() == b.singularities()
}

fn distinguish(left: &CurveDatum, right: &CurveDatum) -> Distinguisher {
    if combinatorics_equal(left, right)
        && left.group().is_cyclic_form()
        && right.props().get(Property::Cyclic).is_false()
    {
        Distinguisher::CyclicVsNoncyclic
    } else {
        Distinguisher::None
    }
}

impl ZariskiPairRecord {
    /// A generation-0 record for a user-supplied pair.
    pub fn seed(left: CurveDatum, right: CurveDatum) -> Self {
        ZariskiPairRecord {
            combinatorics_equal: combinatorics_equal(&left, &right),
            distinguisher: distinguish(&left, &right),
            left,
            right,
            generation: 0,
            lineage: Vec::new(),
        }
    }

    pub fn left(&self) -> &CurveDatum {
        &self.left
    }

    pub fn right(&self) -> &CurveDatum {
        &self.right
    }

    pub fn combinatorics_equal(&self) -> bool {
        self.combinatorics_equal
    }

    pub fn distinguisher(&self) -> Distinguisher {
        self.distinguisher
    }

    pub fn generation(&self) -> u64 {
        self.generation
    }

    pub fn parent_spec(&self) -> Option<&ConstructionSpec> {
        self.lineage.last()
    }

    /// Constructions applied since the seed, oldest first.
    pub fn lineage(&self) -> &[ConstructionSpec] {
        &self.lineage
    }

    /// Checks the hypotheses of the lifting rule.
    pub fn check_liftable(&self) -> Result<()> {
        if !self.combinatorics_equal {
            return Err(Error::ZariskiHypothesis("the curves have different combinatorics".into()));
        }
        if !self.left.irreducible() || !self.right.irreducible() {
            return Err(Error::ZariskiHypothesis("both curves must be irreducible".into()));
        }
        if !self.left.group().is_cyclic_form() {
            return Err(Error::ZariskiHypothesis(format!(
                "the left group must be cyclic, got {}",
                self.left.group()
            )));
        }
        if !self.right.props().get(Property::Cyclic).is_false() {
            return Err(Error::ZariskiHypothesis(format!(
                "the right group {} is not certified non-cyclic",
                self.right.group()
            )));
        }
        Ok(())
    }
}

/// Applies `spec` to both curves of a liftable pair.
pub fn lift_pair(p: &ZariskiPairRecord, spec: &ConstructionSpec) -> Result<ZariskiPairRecord> {
    p.check_liftable()?;
    let left = apply(&p.left, spec)?;
    let right = apply(&p.right, spec)?;
    let mut out = ZariskiPairRecord::seed(left, right);
    debug_assert!(out.combinatorics_equal);
    if out.distinguisher != Distinguisher::CyclicVsNoncyclic {
        return Err(Error::ZariskiHypothesis(
            "the lifted groups are no longer distinguished".into(),
        ));
    }
    out.generation = p.generation + 1;
    out.lineage = p.lineage.clone();
    out.lineage.push(spec.clone());
    Ok(out)
}

/// Tuples `(n_1, ..., n_k)` with `k <= bound` and `sum <= bound`, by `k`
/// then lexicographically.
pub fn general_tuples(bound: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, len: usize, budget: u64, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let slots_left = (len - prefix.len() - 1) as u64;
        for x in 1..=budget.saturating_sub(slots_left) {
            prefix.push(x);
            extend(prefix, len, budget - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=bound as usize {
        extend(&mut Vec::new(), k, bound, &mut out);
    }
    out
}

/// All lifts by `general(...)` with at most `bound` lines and steps,
/// dropping lifts whose combinatorics repeat an earlier one.
pub fn enumerate_family(p: &ZariskiPairRecord, bound: u64) -> Result<Vec<ZariskiPairRecord>> {
    p.check_liftable()?;
    let mut out: Vec<ZariskiPairRecord> = Vec::new();
    for ns in general_tuples(bound) {
        let lifted = lift_pair(p, &ConstructionSpec::General(ns))?;
        if !out.iter().any(|r| combinatorics_equal(&r.left, &lifted.left)) {
            out.push(lifted);
        }
    }
    Ok(out)
}
