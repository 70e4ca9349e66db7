//! The four Cremona constructions acting on curve data, and the
//! self-intersection audit.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::curves::{CurveDatum, LogEntry};
use crate::error::{Error, Result};
use crate::extensions::{central_extend, propagate_properties, ExtensionContext, PropertyFlags};
use crate::singularities::{blowdown_type, SingularityMultiset, SingularityType};

/// Bound on the number of type-1 steps of one construction. Multiplicity
/// sequences are stored expanded, so this bounds their length.
pub const MAX_STEPS: u64 = 1 << 20;

/// Parameters of a construction. Every parameter is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionSpec {
    /// `n` type-1 steps on a single line.
    Uludag(u64),
    /// `n_i` type-1 steps on each of the lines `Q_i`, then all type-2 steps on `P`.
    General(Vec<u64>),
    /// Type-1 steps on the `Q_i`, type-2 steps spread over the `P_j`.
    Mixed { n: Vec<u64>, m: Vec<u64> },
    /// `n` type-1 then `n` type-2 steps on the same line `L`.
    Special(u64),
}

impl ConstructionSpec {
    pub fn uludag(n: u64) -> Result<Self> {
        ConstructionSpec::Uludag(n).validated()
    }

    pub fn general(ns: Vec<u64>) -> Result<Self> {
        ConstructionSpec::General(ns).validated()
    }

    pub fn mixed(n: Vec<u64>, m: Vec<u64>) -> Result<Self> {
        ConstructionSpec::Mixed { n, m }.validated()
    }

    pub fn special(n: u64) -> Result<Self> {
        ConstructionSpec::Special(n).validated()
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(what: &str, xs: &[u64]) -> Result<()> {
            if xs.is_empty() {
                return Err(Error::InvalidArgument(format!("{what} needs at least one parameter")));
            }
            if let Some(i) = xs.iter().position(|&x| x < 1) {
                return Err(Error::InvalidArgument(format!(
                    "{what} parameter {} must be at least 1",
                    i + 1
                )));
            }
            match xs.iter().try_fold(0u64, |acc, &x| acc.checked_add(x)) {
                Some(total) if total <= MAX_STEPS => Ok(()),
                _ => Err(Error::InvalidArgument(format!(
                    "{what} needs more than {MAX_STEPS} elementary transformations"
                ))),
            }
        }
        match self {
            ConstructionSpec::Uludag(n) => positive("uludag", &[*n]),
            ConstructionSpec::Special(n) => positive("special", &[*n]),
            ConstructionSpec::General(ns) => positive("general", ns),
            ConstructionSpec::Mixed { n, m } => {
                positive("mixed", n)?;
                positive("mixed", m)?;
                let (sum_n, sum_m) = (n.iter().sum::<u64>(), m.iter().sum::<u64>());
                if sum_n != sum_m {
                    return Err(Error::UnbalancedMixed { sum_n, sum_m });
                }
                Ok(())
            }
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// The type-1 step counts `(n_1, ..., n_k)`.
    pub fn first_type_counts(&self) -> Vec<u64> {
        match self {
            ConstructionSpec::Uludag(n) | ConstructionSpec::Special(n) => vec![*n],
            ConstructionSpec::General(ns) => ns.clone(),
            ConstructionSpec::Mixed { n, .. } => n.clone(),
        }
    }

    /// Total number of type-1 steps.
    pub fn steps(&self) -> BigUint {
        self.first_type_counts().iter().map(|&x| BigUint::from(x)).sum()
    }

    /// Order `N` of the cyclic kernel of the group extension.
    pub fn kernel_order(&self) -> BigUint {
        self.steps() + 1u32
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[u64]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Uludag(n) => write!(f, "uludag({n})"),
            ConstructionSpec::Special(n) => write!(f, "special({n})"),
            ConstructionSpec::General(ns) => {
                f.write_str("general(")?;
                write_list(f, ns)?;
                f.write_str(")")
            }
            ConstructionSpec::Mixed { n, m } => {
                f.write_str("mixed(")?;
                write_list(f, n)?;
                f.write_str(";")?;
                write_list(f, m)?;
                f.write_str(")")
            }
        }
    }
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>()
                .map_err(|_| Error::parse("construction parameter", if t.is_empty() { "," } else { t }))
        })
        .collect()
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::parse("construction", s))?;
        let name = s[..open].trim();
        let body = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::parse("construction", &s[open..]))?;
        let single = |body: &str| -> Result<u64> {
            match parse_list(body)?.as_slice() {
                [n] => Ok(*n),
                _ => Err(Error::parse("single construction parameter", body)),
            }
        };
        let spec = match name {
            "uludag" => ConstructionSpec::Uludag(single(body)?),
            "special" => ConstructionSpec::Special(single(body)?),
            "general" => ConstructionSpec::General(parse_list(body)?),
            "mixed" => {
                let (n, m) = body
                    .split_once(';')
                    .ok_or_else(|| Error::parse("mixed construction (missing `;`)", body))?;
                ConstructionSpec::Mixed {
                    n: parse_list(n)?,
                    m: parse_list(m)?,
                }
            }
            other => return Err(Error::parse("construction name", other)),
        };
        spec.validated()
    }
}

crate::intser::serde_as_text!(ConstructionSpec);

/// Degree of the transformed curve, `d * N`.
pub fn degree_after(d: &BigUint, spec: &ConstructionSpec) -> BigUint {
    d * spec.kernel_order()
}

fn run(d: &BigUint, count: u64) -> SingularityType {
    SingularityType::run(d, count)
}

/// `[head, cluster]` for a single flat cluster, the nested form otherwise.
fn blowdown(head: BigUint, clusters: Vec<SingularityType>) -> Result<SingularityType> {
    match clusters.as_slice() {
        [only] if only.is_flat() => {
            let mut ms = vec![head];
            ms.extend(only.entries().iter().filter_map(|e| match e {
                crate::singularities::Entry::Mult(m) => Some(m.clone()),
                _ => None,
            }));
            SingularityType::flat(ms)
        }
        _ => blowdown_type(head, clusters),
    }
}

fn tacnodes(d: &BigUint, ns: &[u64]) -> Vec<SingularityType> {
    ns.iter().map(|&n| run(d, n)).collect()
}

/// Singularities created by the construction on a curve of degree `d`.
///
/// For `special(n)` this is the stated type `[2nd, d_2n]`; see
/// [`special_variant_singularities`] for the type that balances the
/// self-intersection count.
pub fn added_singularities(d: &BigUint, spec: &ConstructionSpec) -> Result<SingularityMultiset> {
    spec.validate()?;
    let total = spec.steps();
    let total_u64 = u64::try_from(&total).expect("parameters are u64");
    let mut out: Vec<SingularityType> = Vec::new();
    match spec {
        ConstructionSpec::Uludag(_) | ConstructionSpec::General(_) => {
            out.extend(tacnodes(d, &spec.first_type_counts()));
            out.push(blowdown(d * &total, vec![run(d, total_u64)])?);
        }
        ConstructionSpec::Mixed { n, m } => {
            out.extend(tacnodes(d, n));
            out.push(blowdown(d * &total, tacnodes(d, m))?);
        }
        ConstructionSpec::Special(n) => {
            out.push(blowdown(d * 2u32 * n, vec![run(d, 2 * n)])?);
        }
    }
    Ok(out.into_iter().collect())
}

/// `special(n)` with head multiplicity `nd` instead of `2nd`.
pub fn special_variant_singularities(d: &BigUint, n: u64) -> Result<SingularityMultiset> {
    ConstructionSpec::special(n)?;
    Ok(std::iter::once(blowdown(d * n, vec![run(d, 2 * n)])?).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Discrepancy,
}

/// One evaluation of `d~^2 - sum of drops` against `d^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EvaluationRepr", into = "EvaluationRepr")]
pub struct AuditEvaluation {
    pub added: SingularityMultiset,
    pub computed: BigInt,
    pub residual: BigInt,
}

impl AuditEvaluation {
    fn new(after: &BigUint, before: &BigUint, added: SingularityMultiset) -> Self {
        let computed = BigInt::from(after * after) - BigInt::from(added.total_drop());
        let residual = &computed - BigInt::from(before * before);
        AuditEvaluation {
            added,
            computed,
            residual,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.residual == BigInt::from(0) {
            Verdict::Pass
        } else {
            Verdict::Discrepancy
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluationRepr {
    added: SingularityMultiset,
    #[serde(with = "crate::intser::int")]
    computed: BigInt,
    #[serde(with = "crate::intser::int")]
    residual: BigInt,
    verdict: Verdict,
}

impl From<AuditEvaluation> for EvaluationRepr {
    fn from(e: AuditEvaluation) -> Self {
        EvaluationRepr {
            verdict: e.verdict(),
            added: e.added,
            computed: e.computed,
            residual: e.residual,
        }
    }
}

impl TryFrom<EvaluationRepr> for AuditEvaluation {
    type Error = Error;

    fn try_from(r: EvaluationRepr) -> Result<Self> {
        let e = AuditEvaluation {
            added: r.added,
            computed: r.computed,
            residual: r.residual,
        };
        if e.verdict() != r.verdict {
            return Err(Error::Document("audit verdict does not match its residual".into()));
        }
        Ok(e)
    }
}

/// Self-intersection bookkeeping of one construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditReport {
    pub spec: ConstructionSpec,
    #[serde(with = "crate::intser::uint")]
    pub before_degree: BigUint,
    #[serde(with = "crate::intser::uint")]
    pub after_degree: BigUint,
    #[serde(with = "crate::intser::uint")]
    pub expected_base_self_intersection: BigUint,
    /// Evaluation with the singularity types used by [`apply`].
    pub primary: AuditEvaluation,
    /// Present for `special(n)`: the head multiplicity `nd` variant.
    pub variant: Option<AuditEvaluation>,
}

impl AuditReport {
    pub fn verdict(&self) -> Verdict {
        self.primary.verdict()
    }

    pub fn residual(&self) -> &BigInt {
        &self.primary.residual
    }
}

/// Checks `d~^2 - sum of drops = d^2` for the construction on a curve of degree `d`.
pub fn audit_self_intersection(d: &BigUint, spec: &ConstructionSpec) -> Result<AuditReport> {
    let after = degree_after(d, spec);
    let primary = AuditEvaluation::new(&after, d, added_singularities(d, spec)?);
    let variant = match spec {
        ConstructionSpec::Special(n) => Some(AuditEvaluation::new(
            &after,
            d,
            special_variant_singularities(d, *n)?,
        )),
        _ => None,
    };
    Ok(AuditReport {
        spec: spec.clone(),
        before_degree: d.clone(),
        after_degree: after,
        expected_base_self_intersection: d * d,
        primary,
        variant,
    })
}

/// The transformed curve.
pub fn apply(c: &CurveDatum, spec: &ConstructionSpec) -> Result<CurveDatum> {
    spec.validate()?;
    let n = spec.kernel_order();
    let audit = audit_self_intersection(&c.degree(), spec)?;
    let degrees = c.component_degrees().iter().map(|d| d * &n).collect();
    let singularities = c.singularities().union(&audit.primary.added);
    let ctx = ExtensionContext {
        irreducible: c.irreducible(),
        family: c.family(),
    };
    let group = central_extend(c.group(), &n, ctx)?;
    let props = propagate_properties(c.props(), &n).merge(&PropertyFlags::of_descriptor(&group))?;
    let mut out = c.transformed(degrees, singularities, group, props);
    out.push_log(|seq| LogEntry::Construction {
        seq,
        spec: spec.clone(),
        kernel_order: n,
        audit: Box::new(audit),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{seed_generic_lines, seed_pencil, seed_smooth};

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn spec(s: &str) -> ConstructionSpec {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["uludag(3)", "general(1,2,2)", "mixed(2,1;1,1,1)", "special(2)"] {
            assert_eq!(spec(s).to_string(), s);
        }
        assert_eq!(spec(" general( 1, 2 ) ").to_string(), "general(1,2)");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            "mixed(2;1)".parse::<ConstructionSpec>(),
            Err(Error::UnbalancedMixed { sum_n: 2, sum_m: 1 })
        );
        let err = "general(1,x)".parse::<ConstructionSpec>().unwrap_err();
        assert!(err.to_string().contains("`x`"), "{err}");
        assert!("twist(1)".parse::<ConstructionSpec>().is_err());
        assert!("general(1,0)".parse::<ConstructionSpec>().is_err());
        assert!("uludag(1,2)".parse::<ConstructionSpec>().is_err());
        assert!("general()".parse::<ConstructionSpec>().is_err());
        assert!("mixed(1,1)".parse::<ConstructionSpec>().is_err());
    }

    #[test]
    fn kernel_orders() {
        assert_eq!(spec("uludag(3)").kernel_order(), big(4));
        assert_eq!(spec("general(1,2,2)").kernel_order(), big(6));
        assert_eq!(spec("mixed(2,1;1,1,1)").kernel_order(), big(4));
        assert_eq!(spec("special(2)").kernel_order(), big(3));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree_after(&big(2), &spec("uludag(1)")), big(4));
        assert_eq!(degree_after(&big(3), &spec("general(1,2)")), big(12));
        assert_eq!(degree_after(&big(5), &spec("special(1)")), big(10));
    }

    #[test]
    fn added_singularity_examples() {
        let s = |d, sp| added_singularities(&big(d), &spec(sp)).unwrap().to_string();
        assert_eq!(s(2, "uludag(1)"), "{[2], [2,2]}");
        assert_eq!(s(2, "general(1,2)"), "{[2], [2,2], [6,2_3]}");
        assert_eq!(s(2, "mixed(2;1,1)"), "{[2,2], [4,(|[2]|,|[2]|)]}");
        assert_eq!(s(3, "special(1)"), "{[6,3,3]}");
        assert_eq!(s(1, "uludag(2)"), "{[1,1], [2,1,1]}");
    }

    #[test]
    fn audit_examples() {
        let r = audit_self_intersection(&big(2), &spec("general(1,2)")).unwrap();
        assert_eq!(r.after_degree, big(8));
        assert_eq!(r.primary.computed, BigInt::from(4));
        assert_eq!(r.verdict(), Verdict::Pass);
        assert!(r.variant.is_none());

        let r = audit_self_intersection(&big(1), &spec("special(1)")).unwrap();
        assert_eq!(r.primary.added.to_string(), "{[2,1,1]}");
        assert_eq!(r.primary.computed, BigInt::from(-2));
        assert_eq!(*r.residual(), BigInt::from(-3));
        assert_eq!(r.verdict(), Verdict::Discrepancy);
        let v = r.variant.unwrap();
        assert_eq!(v.added.to_string(), "{[1_3]}");
        assert_eq!(v.computed, BigInt::from(1));
        assert_eq!(v.verdict(), Verdict::Pass);
    }

    #[test]
    fn smooth_conic_uludag() {
        let c = apply(&seed_smooth(2).unwrap(), &spec("uludag(1)")).unwrap();
        assert_eq!(c.degree(), big(4));
        assert_eq!(c.singularities().to_string(), "{[2], [2,2]}");
        assert_eq!(c.group().to_string(), "Z/4");
        assert_eq!(c.log().len(), 2);
    }

    #[test]
    fn pencil_and_lines() {
        let c = apply(&seed_pencil(3).unwrap(), &spec("uludag(2)")).unwrap();
        assert_eq!(c.singularities().to_string(), "{[3], [3,3], [6,3,3]}");
        assert_eq!(c.group().to_string(), "F2 (+) Z/3");
        let c = apply(&seed_generic_lines(3).unwrap(), &spec("general(1,1)")).unwrap();
        assert_eq!(c.group().to_string(), "Z^2 (+) Z/3");
        assert_eq!(c.components(), 3);
        assert!(c.component_degrees().iter().all(|d| *d == big(3)));
        let h = c.h1();
        assert_eq!((h.free_rank, h.torsion.clone()), (2, vec![big(3)]));
    }

    #[test]
    fn uludag_is_general_with_one_line() {
        for d in 1..=4 {
            for n in 1..=4 {
                let c = seed_smooth(d).unwrap();
                let a = apply(&c, &ConstructionSpec::Uludag(n)).unwrap();
                let b = apply(&c, &ConstructionSpec::General(vec![n])).unwrap();
                assert_eq!(a.degree(), b.degree());
                assert_eq!(a.singularities(), b.singularities());
                assert_eq!(a.group(), b.group());
            }
        }
    }

    #[test]
    fn audit_json_round_trip() {
        let r = audit_self_intersection(&big(3), &spec("special(2)")).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"verdict\":\"discrepancy\""));
        let back: AuditReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
