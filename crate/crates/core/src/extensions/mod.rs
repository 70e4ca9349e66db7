//! Classified group descriptors, the central-extension step and
//! property propagation.

mod descriptor;
mod props;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::curves::FamilyTag;
use crate::error::{Error, Result};
use crate::fpgroup::AbelianInvariants;

pub use descriptor::GroupDescriptor;
pub use props::{Property, PropertyFlags, Tri};

/// What [`central_extend`] needs to know about the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExtensionContext<'a> {
    pub irreducible: bool,
    pub family: Option<&'a FamilyTag>,
}

/// The group of the transformed curve, a central extension of `g` by `Z/n`.
///
/// Rules, first match wins:
/// 1. `Z/r` of an irreducible curve gives `Z/rn`;
/// 2. a free group `Fk` (including `Z`) gives `Fk (+) Z/n`;
/// 3. `Z^k` of a generic line arrangement gives `Z^k (+) Z/n`;
/// 4. a finite group of order prime to `n` gives the direct sum;
/// 5. otherwise the extension stays unresolved as a tower.
pub fn central_extend(g: &GroupDescriptor, n: &BigUint, ctx: ExtensionContext<'_>) -> Result<GroupDescriptor> {
    if *n < BigUint::from(2u32) {
        return Err(Error::InvalidArgument(format!(
            "extension kernel order must be at least 2, got {n}"
        )));
    }
    let kernel = GroupDescriptor::Cyclic(n.clone());
    let g = g.clone().canonical();
    let out = match &g {
        GroupDescriptor::Cyclic(r) if ctx.irreducible => GroupDescriptor::Cyclic(r * n),
        GroupDescriptor::Free(_) | GroupDescriptor::FreeAbelian(1) => {
            GroupDescriptor::direct_sum(vec![g, kernel])
        }
        GroupDescriptor::FreeAbelian(_) if ctx.family == Some(&FamilyTag::GenericLines) => {
            GroupDescriptor::direct_sum(vec![g, kernel])
        }
        _ if g.order().is_some_and(|q| q.gcd(n).is_one()) => {
            GroupDescriptor::direct_sum(vec![g, kernel])
        }
        GroupDescriptor::Tower { base, kernels } => {
            let mut kernels = kernels.clone();
            kernels.push(n.clone());
            GroupDescriptor::Tower {
                base: base.clone(),
                kernels,
            }
        }
        _ => GroupDescriptor::Tower {
            base: Box::new(g),
            kernels: vec![n.clone()],
        },
    };
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    NonSplit,
    SplitsAsDirectSum,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitRule {
    /// `H1` has exactly `r` summands, none prime to the kernel order.
    NonSplitSummandCriterion,
    /// Finite group of order prime to the kernel order.
    CoprimeFiniteDirectSum,
    NoRule,
}

impl SplitRule {
    pub fn tag(self) -> &'static str {
        match self {
            SplitRule::NonSplitSummandCriterion => "non-split-summand-criterion",
            SplitRule::CoprimeFiniteDirectSum => "coprime-finite-direct-sum",
            SplitRule::NoRule => "no-rule",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitVerdict {
    pub kind: SplitKind,
    pub rule: SplitRule,
}

impl fmt::Display for SplitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            SplitKind::NonSplit => "non-split",
            SplitKind::SplitsAsDirectSum => "splits",
            SplitKind::Unknown => "unknown",
        };
        write!(f, "{kind} ({})", self.rule.tag())
    }
}

/// Decides whether the extension by `Z/n` of a group with first homology
/// `h1` (of a curve with `r` components) splits.
pub fn split_test(h1: &AbelianInvariants, r: usize, n: &BigUint) -> SplitVerdict {
    let coprime = |d: &BigUint| d.gcd(n).is_one();
    // a free summand has order 0 and gcd(0, n) = n
    let non_split = n > &BigUint::one()
        && h1.summand_count() == r
        && h1.torsion.iter().all(|d| !coprime(d));
    if non_split {
        return SplitVerdict {
            kind: SplitKind::NonSplit,
            rule: SplitRule::NonSplitSummandCriterion,
        };
    }
    if h1.free_rank == 0 && coprime(&h1.torsion.iter().product()) {
        return SplitVerdict {
            kind: SplitKind::SplitsAsDirectSum,
            rule: SplitRule::CoprimeFiniteDirectSum,
        };
    }
    SplitVerdict {
        kind: SplitKind::Unknown,
        rule: SplitRule::NoRule,
    }
}

/// Properties of the extended group that follow from those of `p`.
pub fn propagate_properties(p: &PropertyFlags, n: &BigUint) -> PropertyFlags {
    p.propagate(n)
}
