use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

use super::descriptor::GroupDescriptor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Tri {
    True,
    False,
    #[default]
    Unknown,
}

impl Tri {
    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    pub fn is_false(self) -> bool {
        self == Tri::False
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        }
    }
}

impl std::ops::Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tri {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" => Ok(Tri::True),
            "false" => Ok(Tri::False),
            "unknown" => Ok(Tri::Unknown),
            other => Err(Error::parse("tri-state value", other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Finite,
    Abelian,
    Cyclic,
    Nonabelian,
    Solvable,
    Supersolvable,
    Polycyclic,
    Nilpotent,
    VirtuallyNilpotent,
    VirtuallySolvable,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Finite,
        Property::Abelian,
        Property::Cyclic,
        Property::Nonabelian,
        Property::Solvable,
        Property::Supersolvable,
        Property::Polycyclic,
        Property::Nilpotent,
        Property::VirtuallyNilpotent,
        Property::VirtuallySolvable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Finite => "finite",
            Property::Abelian => "abelian",
            Property::Cyclic => "cyclic",
            Property::Nonabelian => "nonabelian",
            Property::Solvable => "solvable",
            Property::Supersolvable => "supersolvable",
            Property::Polycyclic => "polycyclic",
            Property::Nilpotent => "nilpotent",
            Property::VirtuallyNilpotent => "virtually_nilpotent",
            Property::VirtuallySolvable => "virtually_solvable",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::parse("property name", s))
    }
}

/// `premise = true  =>  conclusion = true` (and contrapositively for false).
const IMPLICATIONS: &[(Property, Property)] = {
    use Property::*;
    &[
        (Cyclic, Abelian),
        (Cyclic, Supersolvable),
        (Abelian, Nilpotent),
        (Nilpotent, Solvable),
        (Nilpotent, VirtuallyNilpotent),
        (Supersolvable, Polycyclic),
        (Supersolvable, Solvable),
        (Polycyclic, Solvable),
        (Solvable, VirtuallySolvable),
        (VirtuallyNilpotent, VirtuallySolvable),
        (Finite, VirtuallyNilpotent),
    ]
};

/// Primality test by trial division; the inputs here are small prime candidates.
fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `Some(p)` when `n = p^l` with `l >= 1`.
pub(crate) fn prime_power_base(n: &BigUint) -> Option<u64> {
    if n.is_one() || *n == BigUint::from(0u32) {
        return None;
    }
    let mut m = n.clone();
    let mut p = 2u64;
    loop {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            // m itself is prime
            let base = u64::try_from(&m).ok()?;
            return is_power_of(n, base).then_some(base);
        }
        if (&m % &bp) == BigUint::from(0u32) {
            while (&m % &bp) == BigUint::from(0u32) {
                m /= &bp;
            }
            return m.is_one().then_some(p);
        }
        p += 1;
    }
}

fn is_power_of(n: &BigUint, p: u64) -> bool {
    let bp = BigUint::from(p);
    let mut m = n.clone();
    while m > BigUint::one() && (&m % &bp) == BigUint::from(0u32) {
        m /= &bp;
    }
    m.is_one()
}

/// Tri-state record of group-theoretic properties.
///
/// Every value is closed under the implications between properties
/// (e.g. cyclic implies abelian implies solvable) and `nonabelian` is the
/// negation of `abelian`. Contradictory assertions are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PropertyFlags {
    values: [Tri; 10],
    p_group: Option<(u64, Tri)>,
    nilpotency_class: Option<(u64, u64)>,
}

impl PropertyFlags {
    pub fn unknown() -> Self {
        PropertyFlags::default()
    }

    pub fn get(&self, p: Property) -> Tri {
        self.values[p.index()]
    }

    pub fn p_group(&self) -> Option<(u64, Tri)> {
        self.p_group
    }

    pub fn nilpotency_class(&self) -> Option<(u64, u64)> {
        self.nilpotency_class
    }

    /// Sets one property and closes the result.
    pub fn with(mut self, p: Property, value: Tri) -> Result<Self> {
        self.assign(p, value)?;
        self.close()?;
        Ok(self)
    }

    pub fn with_p_group(mut self, prime: u64, value: Tri) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        match self.p_group {
            Some((q, v)) if q == prime && v != Tri::Unknown && value != Tri::Unknown && v != value => {
                return Err(Error::InconsistentProperties(format!(
                    "p_group({prime}) is both {v} and {value}"
                )));
            }
            Some((q, v)) if q != prime && v.is_true() && value.is_true() => {
                return Err(Error::InconsistentProperties(format!(
                    "cannot be both a {q}-group and a {prime}-group"
                )));
            }
            _ => {}
        }
        self.p_group = if value == Tri::Unknown { None } else { Some((prime, value)) };
        self.close()?;
        Ok(self)
    }

    pub fn with_nilpotency_class(mut self, lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty class interval [{lo}, {hi}]")));
        }
        self.nilpotency_class = Some((lo, hi));
        self.close()?;
        Ok(self)
    }

    fn assign(&mut self, p: Property, value: Tri) -> Result<bool> {
        let slot = &mut self.values[p.index()];
        match (*slot, value) {
            (_, Tri::Unknown) => Ok(false),
            (Tri::Unknown, v) => {
                *slot = v;
                Ok(true)
            }
            (a, b) if a == b => Ok(false),
            (a, b) => Err(Error::InconsistentProperties(format!(
                "{} is both {a} and {b}",
                p.name()
            ))),
        }
    }

    fn close(&mut self) -> Result<()> {
        use Property::*;
        loop {
            let mut changed = false;
            for &(a, b) in IMPLICATIONS {
                if self.get(a).is_true() {
                    changed |= self.assign(b, Tri::True)?;
                }
                if self.get(b).is_false() {
                    changed |= self.assign(a, Tri::False)?;
                }
            }
            changed |= self.assign(Nonabelian, !self.get(Abelian))?;
            changed |= self.assign(Abelian, !self.get(Nonabelian))?;
            if let Some((_, Tri::True)) = self.p_group {
                changed |= self.assign(Nilpotent, Tri::True)?;
                changed |= self.assign(Finite, Tri::True)?;
            }
            if self.get(Nilpotent).is_false() || self.get(Finite).is_false() {
                match self.p_group {
                    Some((_, Tri::True)) => {
                        return Err(Error::InconsistentProperties(
                            "a p-group must be finite and nilpotent".into(),
                        ))
                    }
                    Some((p, Tri::Unknown)) | Some((p, Tri::False)) => {
                        self.p_group = Some((p, Tri::False));
                    }
                    None => {}
                }
            }
            if self.nilpotency_class.is_some() {
                changed |= self.assign(Nilpotent, Tri::True)?;
            }
            if !changed {
                return Ok(());
            }
        }
    }

    /// Combines two sound fact sets about the same group.
    pub fn merge(&self, other: &PropertyFlags) -> Result<PropertyFlags> {
        let mut out = self.clone();
        for p in Property::ALL {
            out.assign(p, other.get(p))?;
        }
        if let Some((prime, v)) = other.p_group {
            out = out.with_p_group(prime, v)?;
        }
        out.nilpotency_class = match (self.nilpotency_class, other.nilpotency_class) {
            (Some((a, b)), Some((c, d))) => {
                let (lo, hi) = (a.max(c), b.min(d));
                if lo > hi {
                    return Err(Error::InconsistentProperties(
                        "disjoint nilpotency class intervals".into(),
                    ));
                }
                Some((lo, hi))
            }
            (x, y) => x.or(y),
        };
        out.close()?;
        Ok(out)
    }

    /// Facts that follow from a classified descriptor alone.
    pub fn of_descriptor(g: &GroupDescriptor) -> PropertyFlags {
        use Property::*;
        let set = |flags: PropertyFlags, p, v| flags.with(p, v).expect("consistent descriptor facts");
        match g {
            GroupDescriptor::Cyclic(r) => {
                let mut f = set(PropertyFlags::unknown(), Cyclic, Tri::True);
                f = set(f, Finite, Tri::True);
                f.nilpotency_class = Some(if r.is_one() { (0, 0) } else { (1, 1) });
                if let Some(p) = prime_power_base(r) {
                    f.p_group = Some((p, Tri::True));
                }
                f
            }
            GroupDescriptor::FreeAbelian(0) | GroupDescriptor::Free(0) => {
                PropertyFlags::of_descriptor(&GroupDescriptor::trivial())
            }
            GroupDescriptor::FreeAbelian(k) | GroupDescriptor::Free(k @ 1) => {
                let mut f = set(PropertyFlags::unknown(), Abelian, Tri::True);
                f = set(f, Finite, Tri::False);
                f = set(f, Polycyclic, Tri::True);
                f = set(f, Supersolvable, Tri::True);
                f = set(f, Cyclic, Tri::from(*k == 1));
                f.nilpotency_class = Some((1, 1));
                f
            }
            GroupDescriptor::Free(_) => {
                let mut f = set(PropertyFlags::unknown(), Nonabelian, Tri::True);
                f = set(f, Finite, Tri::False);
                // free groups of rank >= 2 contain F2 in every finite-index subgroup
                set(f, VirtuallySolvable, Tri::False)
            }
            GroupDescriptor::FiniteTagged { .. } => set(PropertyFlags::unknown(), Finite, Tri::True),
            GroupDescriptor::DirectSum(parts) => direct_sum_facts(parts),
            GroupDescriptor::Tower { base, kernels } => {
                let mut f = PropertyFlags::of_descriptor(base);
                for k in kernels {
                    f = f.propagate(k);
                }
                f
            }
            GroupDescriptor::Opaque { .. } => PropertyFlags::unknown(),
        }
    }

    /// Facts preserved by a central extension by `Z/n`, `n >= 2`.
    ///
    /// True values of finite, nonabelian, solvable, supersolvable,
    /// polycyclic, nilpotent and the virtual properties carry over. Every
    /// property tracked here passes to quotients, so a false value carries
    /// over too (the old group is a quotient of the new one). `abelian` and
    /// `cyclic` degrade from true to unknown; a p-group stays one only when
    /// `n` is a power of `p`; a class interval `[lo, hi]` widens to `[lo, hi + 1]`.
    pub fn propagate(&self, n: &BigUint) -> PropertyFlags {
        use Property::*;
        let mut out = PropertyFlags::unknown();
        for p in Property::ALL {
            let v = self.get(p);
            out.values[p.index()] = match (p, v) {
                (Abelian | Cyclic, Tri::True) => Tri::Unknown,
                (Nonabelian, Tri::False) => Tri::Unknown,
                (_, v) => v,
            };
        }
        out.p_group = match self.p_group {
            Some((p, Tri::True)) if is_power_of(n, p) => Some((p, Tri::True)),
            Some((_, Tri::True)) => None,
            other => other,
        };
        out.nilpotency_class = self.nilpotency_class.map(|(lo, hi)| (lo, hi + 1));
        out.close().expect("propagation keeps consistency");
        out
    }

    /// Properties as `(name, value)` pairs in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = (Property, Tri)> + '_ {
        Property::ALL.into_iter().map(|p| (p, self.get(p)))
    }
}

crate::intser::serde_as_text!(Tri);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PGroupRepr {
    prime: u64,
    value: Tri,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagsRepr {
    finite: Tri,
    abelian: Tri,
    cyclic: Tri,
    nonabelian: Tri,
    solvable: Tri,
    supersolvable: Tri,
    polycyclic: Tri,
    nilpotent: Tri,
    virtually_nilpotent: Tri,
    virtually_solvable: Tri,
    p_group: Option<PGroupRepr>,
    nilpotency_class: Option<[u64; 2]>,
}

impl Serialize for PropertyFlags {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use Property::*;
        FlagsRepr {
            finite: self.get(Finite),
            abelian: self.get(Abelian),
            cyclic: self.get(Cyclic),
            nonabelian: self.get(Nonabelian),
            solvable: self.get(Solvable),
            supersolvable: self.get(Supersolvable),
            polycyclic: self.get(Polycyclic),
            nilpotent: self.get(Nilpotent),
            virtually_nilpotent: self.get(VirtuallyNilpotent),
            virtually_solvable: self.get(VirtuallySolvable),
            p_group: self.p_group.map(|(prime, value)| PGroupRepr { prime, value }),
            nilpotency_class: self.nilpotency_class.map(|(lo, hi)| [lo, hi]),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PropertyFlags {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use Property::*;
        let r = FlagsRepr::deserialize(d)?;
        let pairs = [
            (Finite, r.finite),
            (Abelian, r.abelian),
            (Cyclic, r.cyclic),
            (Nonabelian, r.nonabelian),
            (Solvable, r.solvable),
            (Supersolvable, r.supersolvable),
            (Polycyclic, r.polycyclic),
            (Nilpotent, r.nilpotent),
            (VirtuallyNilpotent, r.virtually_nilpotent),
            (VirtuallySolvable, r.virtually_solvable),
        ];
        let build = || -> Result<PropertyFlags> {
            let mut f = PropertyFlags::unknown();
            for (p, v) in pairs {
                f = f.with(p, v)?;
            }
            if let Some(pg) = &r.p_group {
                f = f.with_p_group(pg.prime, pg.value)?;
            }
            if let Some([lo, hi]) = r.nilpotency_class {
                f = f.with_nilpotency_class(lo, hi)?;
            }
            Ok(f)
        };
        build().map_err(D::Error::custom)
    }
}

fn direct_sum_facts(parts: &[GroupDescriptor]) -> PropertyFlags {
    use Property::*;
    let facts: Vec<PropertyFlags> = parts.iter().map(PropertyFlags::of_descriptor).collect();
    let mut out = PropertyFlags::unknown();
    // closed under finite direct products, subgroups and quotients
    for p in [
        Finite,
        Abelian,
        Solvable,
        Supersolvable,
        Polycyclic,
        Nilpotent,
        VirtuallyNilpotent,
        VirtuallySolvable,
    ] {
        let v = if facts.iter().any(|f| f.get(p).is_false()) {
            Tri::False
        } else if facts.iter().all(|f| f.get(p).is_true()) {
            Tri::True
        } else {
            Tri::Unknown
        };
        out.values[p.index()] = v;
    }
    let classified = parts.iter().all(|g| {
        matches!(
            g,
            GroupDescriptor::Cyclic(_) | GroupDescriptor::FreeAbelian(_) | GroupDescriptor::Free(_)
        )
    });
    if (classified && parts.len() >= 2) || facts.iter().any(|f| f.get(Cyclic).is_false()) {
        out.values[Cyclic.index()] = Tri::False;
    }
    if facts.iter().all(|f| f.nilpotency_class.is_some()) {
        let lo = facts.iter().filter_map(|f| f.nilpotency_class).map(|c| c.0).max();
        let hi = facts.iter().filter_map(|f| f.nilpotency_class).map(|c| c.1).max();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            out.nilpotency_class = Some((lo, hi));
        }
    }
    out.close().expect("consistent descriptor facts");
    out
}
