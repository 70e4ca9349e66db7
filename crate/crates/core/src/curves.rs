//! Combinatorial curve data and the seed catalog.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::{AuditReport, ConstructionSpec};
use crate::error::{Error, Result};
use crate::extensions::{GroupDescriptor, Property, PropertyFlags, Tri};
use crate::fpgroup::{smith_normal_form, AbelianInvariants, IntMatrix};
use crate::singularities::{SingularityMultiset, SingularityType};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyTag {
    Smooth,
    Pencil,
    GenericLines,
    Custom,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Smooth => "smooth",
            FamilyTag::Pencil => "pencil",
            FamilyTag::GenericLines => "generic-lines",
            FamilyTag::Custom => "custom",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smooth" => Ok(FamilyTag::Smooth),
            "pencil" => Ok(FamilyTag::Pencil),
            "generic-lines" => Ok(FamilyTag::GenericLines),
            "custom" => Ok(FamilyTag::Custom),
            other => Err(Error::parse("family tag", other)),
        }
    }
}

/// One provenance record. `seq` numbers entries from 0 in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LogEntry {
    Seed {
        seq: u64,
        family: FamilyTag,
        description: String,
    },
    Construction {
        seq: u64,
        spec: ConstructionSpec,
        #[serde(with = "crate::intser::uint")]
        kernel_order: BigUint,
        audit: Box<AuditReport>,
    },
    Assertion {
        seq: u64,
        property: String,
        value: Tri,
    },
}

impl LogEntry {
    pub fn seq(&self) -> u64 {
        match self {
            LogEntry::Seed { seq, .. }
            | LogEntry::Construction { seq, .. }
            | LogEntry::Assertion { seq, .. } => *seq,
        }
    }
}

/// Degree, components, singularities and complement group of a plane curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveRepr", into = "CurveRepr")]
pub struct CurveDatum {
    component_degrees: Vec<BigUint>,
    singularities: SingularityMultiset,
    group: GroupDescriptor,
    props: PropertyFlags,
    family: Option<FamilyTag>,
    log: Vec<LogEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveRepr {
    #[serde(with = "crate::intser::uint")]
    degree: BigUint,
    #[serde(with = "crate::intser::uint_vec")]
    component_degrees: Vec<BigUint>,
    irreducible: bool,
    singularities: SingularityMultiset,
    group: GroupDescriptor,
    props: PropertyFlags,
    family: Option<FamilyTag>,
    log: Vec<LogEntry>,
}

impl From<CurveDatum> for CurveRepr {
    fn from(c: CurveDatum) -> Self {
        CurveRepr {
            degree: c.degree(),
            irreducible: c.irreducible(),
            component_degrees: c.component_degrees,
            singularities: c.singularities,
            group: c.group,
            props: c.props,
            family: c.family,
            log: c.log,
        }
    }
}

impl TryFrom<CurveRepr> for CurveDatum {
    type Error = Error;

    fn try_from(r: CurveRepr) -> Result<Self> {
        let c = CurveDatum::from_parts(r.component_degrees, r.singularities, r.group, r.props, r.family)?;
        if c.degree() != r.degree {
            return Err(Error::Document(format!(
                "degree {} does not match component degrees (sum {})",
                r.degree,
                c.degree()
            )));
        }
        if c.irreducible() != r.irreducible {
            return Err(Error::Document("irreducible flag does not match components".into()));
        }
        if r.log.iter().enumerate().any(|(i, e)| e.seq() != i as u64) {
            return Err(Error::Document("log entries are not numbered 0, 1, 2, ...".into()));
        }
        Ok(CurveDatum { log: r.log, ..c })
    }
}

impl CurveDatum {
    fn from_parts(
        component_degrees: Vec<BigUint>,
        singularities: SingularityMultiset,
        group: GroupDescriptor,
        props: PropertyFlags,
        family: Option<FamilyTag>,
    ) -> Result<Self> {
        if component_degrees.is_empty() {
            return Err(Error::InvalidArgument("a curve needs at least one component".into()));
        }
        if component_degrees.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("component degrees must be at least 1".into()));
        }
        Ok(CurveDatum {
            component_degrees,
            singularities,
            group: group.canonical(),
            props,
            family,
            log: Vec::new(),
        })
    }

    fn seeded(
        component_degrees: Vec<BigUint>,
        singularities: SingularityMultiset,
        group: GroupDescriptor,
        family: FamilyTag,
        description: String,
    ) -> Result<Self> {
        let props = PropertyFlags::of_descriptor(&group);
        let mut c = CurveDatum::from_parts(component_degrees, singularities, group, props, Some(family.clone()))?;
        c.push_log(|seq| LogEntry::Seed {
            seq,
            family,
            description,
        });
        Ok(c)
    }

    /// A user-supplied seed. Properties are those implied by the group
    /// descriptor, refined by `asserted`; every asserted value is logged.
    pub fn custom(
        component_degrees: Vec<BigUint>,
        singularities: SingularityMultiset,
        group: GroupDescriptor,
        asserted: &[(Property, Tri)],
    ) -> Result<Self> {
        let description = format!("custom seed with group {}", group.clone().canonical());
        let mut c = CurveDatum::seeded(component_degrees, singularities, group, FamilyTag::Custom, description)?;
        for &(p, v) in asserted {
            c = c.assert_property(p, v)?;
        }
        Ok(c)
    }

    /// Records a user assertion about the group.
    pub fn assert_property(mut self, p: Property, value: Tri) -> Result<Self> {
        self.props = self.props.with(p, value)?;
        self.push_log(|seq| LogEntry::Assertion {
            seq,
            property: p.name().to_string(),
            value,
        });
        Ok(self)
    }

    pub(crate) fn push_log(&mut self, make: impl FnOnce(u64) -> LogEntry) {
        let seq = self.log.len() as u64;
        self.log.push(make(seq));
    }

    /// The datum after a construction, with everything but the log replaced.
    pub(crate) fn transformed(
        &self,
        component_degrees: Vec<BigUint>,
        singularities: SingularityMultiset,
        group: GroupDescriptor,
        props: PropertyFlags,
    ) -> CurveDatum {
        CurveDatum {
            component_degrees,
            singularities,
            group: group.canonical(),
            props,
            family: self.family.clone(),
            log: self.log.clone(),
        }
    }

    pub fn degree(&self) -> BigUint {
        self.component_degrees.iter().sum()
    }

    pub fn component_degrees(&self) -> &[BigUint] {
        &self.component_degrees
    }

    pub fn components(&self) -> usize {
        self.component_degrees.len()
    }

    pub fn irreducible(&self) -> bool {
        self.component_degrees.len() == 1
    }

    pub fn singularities(&self) -> &SingularityMultiset {
        &self.singularities
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn props(&self) -> &PropertyFlags {
        &self.props
    }

    pub fn family(&self) -> Option<&FamilyTag> {
        self.family.as_ref()
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn h1(&self) -> AbelianInvariants {
        h1_from_degrees(&self.component_degrees)
    }
}

/// A smooth curve of degree `d >= 1`, with group `Z/d`.
pub fn seed_smooth(d: u64) -> Result<CurveDatum> {
    if d < 1 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    CurveDatum::seeded(
        vec![BigUint::from(d)],
        SingularityMultiset::new(),
        GroupDescriptor::Cyclic(BigUint::from(d)),
        FamilyTag::Smooth,
        format!("smooth curve of degree {d}"),
    )
}

/// `m >= 2` lines through one point, with group `F(m-1)`.
pub fn seed_pencil(m: u64) -> Result<CurveDatum> {
    if m < 2 {
        return Err(Error::InvalidArgument("a pencil needs at least two lines".into()));
    }
    let sings = std::iter::once(SingularityType::flat([m])?).collect();
    CurveDatum::seeded(
        vec![BigUint::one(); m as usize],
        sings,
        GroupDescriptor::free(m - 1),
        FamilyTag::Pencil,
        format!("pencil of {m} lines"),
    )
}

/// `m >= 2` lines in general position, with group `Z^(m-1)`.
pub fn seed_generic_lines(m: u64) -> Result<CurveDatum> {
    if m < 2 {
        return Err(Error::InvalidArgument("an arrangement needs at least two lines".into()));
    }
    let mut sings = SingularityMultiset::new();
    sings.insert_many(SingularityType::flat([2u64])?, (m * (m - 1) / 2) as usize);
    CurveDatum::seeded(
        vec![BigUint::one(); m as usize],
        sings,
        GroupDescriptor::free_abelian(m - 1),
        FamilyTag::GenericLines,
        format!("{m} lines in general position"),
    )
}

/// First homology of the complement of a curve with the given component
/// degrees: `Z^r` modulo the single relation `(d1, ..., dr)`.
pub fn h1_from_degrees(component_degrees: &[BigUint]) -> AbelianInvariants {
    let r = component_degrees.len();
    let mut m = IntMatrix::zeros(1, r);
    for (i, d) in component_degrees.iter().enumerate() {
        m.set(0, i, BigInt::from(d.clone()));
    }
    let factors = smith_normal_form(&m);
    AbelianInvariants::from_factors(r - factors.len(), &factors)
}
