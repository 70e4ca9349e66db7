use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fpgroup::{AbelianInvariants, Presentation};

/// A classified group, or a tower of central extensions that is left unresolved.
///
/// Values built through [`GroupDescriptor::canonical`] (which every
/// constructor and the parser go through) are in canonical form:
/// `F0`, `Z^0` collapse to the trivial group `Z/1`, `F1` becomes `Z`,
/// direct sums are flattened with their abelian part in invariant-factor
/// form, and towers carry only kernels `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupDescriptor {
    Cyclic(BigUint),
    Free(u64),
    FreeAbelian(u64),
    FiniteTagged {
        order: BigUint,
        presentation: Option<Presentation>,
    },
    DirectSum(Vec<GroupDescriptor>),
    Tower {
        base: Box<GroupDescriptor>,
        kernels: Vec<BigUint>,
    },
    /// A user-asserted group outside the classified forms, e.g. a
    /// literature value for a seed curve.
    Opaque {
        label: String,
        presentation: Option<Presentation>,
    },
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor::Cyclic(BigUint::one())
    }

    pub fn cyclic(order: impl Into<BigUint>) -> Result<Self> {
        let order = order.into();
        if order.is_zero() {
            return Err(Error::InvalidArgument("cyclic order must be at least 1".into()));
        }
        Ok(GroupDescriptor::Cyclic(order))
    }

    pub fn free(rank: u64) -> Self {
        GroupDescriptor::Free(rank).canonical()
    }

    pub fn free_abelian(rank: u64) -> Self {
        GroupDescriptor::FreeAbelian(rank).canonical()
    }

    pub fn finite(order: impl Into<BigUint>, presentation: Option<Presentation>) -> Result<Self> {
        let order = order.into();
        if order.is_zero() {
            return Err(Error::InvalidArgument("finite order must be at least 1".into()));
        }
        Ok(GroupDescriptor::FiniteTagged { order, presentation })
    }

    pub fn direct_sum(parts: Vec<GroupDescriptor>) -> Self {
        GroupDescriptor::DirectSum(parts).canonical()
    }

    pub fn tower(base: GroupDescriptor, kernels: Vec<BigUint>) -> Result<Self> {
        if let Some(k) = kernels.iter().find(|k| **k < BigUint::from(2u32)) {
            return Err(Error::InvalidArgument(format!("tower kernel {k} must be at least 2")));
        }
        Ok(GroupDescriptor::Tower {
            base: Box::new(base),
            kernels,
        }
        .canonical())
    }

    pub fn opaque(label: impl Into<String>, presentation: Option<Presentation>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || !label.chars().all(is_label_char) {
            return Err(Error::InvalidArgument(format!("bad group label `{label}`")));
        }
        Ok(GroupDescriptor::Opaque { label, presentation })
    }

    /// Order of the group when it is known to be finite.
    pub fn order(&self) -> Option<BigUint> {
        match self {
            GroupDescriptor::Cyclic(r) => Some(r.clone()),
            GroupDescriptor::Free(0) | GroupDescriptor::FreeAbelian(0) => Some(BigUint::one()),
            GroupDescriptor::Free(_) | GroupDescriptor::FreeAbelian(_) => None,
            GroupDescriptor::FiniteTagged { order, .. } => Some(order.clone()),
            GroupDescriptor::DirectSum(parts) => {
                parts.iter().map(GroupDescriptor::order).product::<Option<BigUint>>()
            }
            GroupDescriptor::Tower { base, kernels } => {
                base.order().map(|o| o * kernels.iter().product::<BigUint>())
            }
            GroupDescriptor::Opaque { .. } => None,
        }
    }

    pub fn is_cyclic_form(&self) -> bool {
        matches!(self, GroupDescriptor::Cyclic(_))
    }

    /// Abelian invariants when the descriptor is an abelian classified form.
    pub fn abelian_invariants(&self) -> Option<AbelianInvariants> {
        let mut orders = Vec::new();
        let parts: Vec<&GroupDescriptor> = match self {
            GroupDescriptor::DirectSum(parts) => parts.iter().collect(),
            other => vec![other],
        };
        for p in parts {
            match p {
                GroupDescriptor::Cyclic(r) => orders.push(r.clone()),
                GroupDescriptor::FreeAbelian(k) => {
                    orders.extend((0..*k).map(|_| BigUint::zero()));
                }
                GroupDescriptor::Free(k) if *k <= 1 => {
                    orders.extend((0..*k).map(|_| BigUint::zero()));
                }
                _ => return None,
            }
        }
        Some(AbelianInvariants::of_cyclic_summands(&orders))
    }

    pub fn canonical(self) -> Self {
        use GroupDescriptor::*;
        match self {
            Free(0) | FreeAbelian(0) => trivial_group(),
            Free(1) => FreeAbelian(1),
            DirectSum(parts) => canonical_sum(parts),
            Tower { base, kernels } => {
                let base = base.canonical();
                let kernels: Vec<BigUint> =
                    kernels.into_iter().filter(|k| !k.is_one()).collect();
                if kernels.is_empty() {
                    base
                } else {
                    Tower {
                        base: Box::new(base),
                        kernels,
                    }
                }
            }
            other => other,
        }
    }
}

fn trivial_group() -> GroupDescriptor {
    GroupDescriptor::Cyclic(BigUint::one())
}

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "_*/+-.^".contains(c)
}

fn canonical_sum(parts: Vec<GroupDescriptor>) -> GroupDescriptor {
    use GroupDescriptor::*;
    let mut flat = Vec::new();
    let mut stack: Vec<GroupDescriptor> = parts;
    stack.reverse();
    while let Some(p) = stack.pop() {
        match p.canonical() {
            DirectSum(inner) => {
                stack.extend(inner.into_iter().rev());
            }
            other => flat.push(other),
        }
    }

    let mut frees = Vec::new();
    let mut cyclic_orders = Vec::new();
    let mut others = Vec::new();
    for p in flat {
        match p {
            Free(k) => frees.push(k),
            FreeAbelian(k) => cyclic_orders.extend((0..k).map(|_| BigUint::zero())),
            Cyclic(r) => cyclic_orders.push(r),
            other => others.push(other),
        }
    }
    frees.sort_unstable();
    others.sort_by_key(|g| g.to_string());

    let abelian = AbelianInvariants::of_cyclic_summands(&cyclic_orders);
    let mut out: Vec<GroupDescriptor> = frees.into_iter().map(Free).collect();
    if abelian.free_rank > 0 {
        out.push(FreeAbelian(abelian.free_rank as u64));
    }
    out.extend(abelian.torsion.into_iter().map(Cyclic));
    out.extend(others);

    match out.len() {
        0 => trivial_group(),
        1 => out.pop().expect("one part"),
        _ => DirectSum(out),
    }
}

/// Canonical text form, e.g. `Z/6`, `F2 (+) Z/3`, `Z^4 (+) Z/5`,
/// `Tower(Z/2; 2,3)`, `Finite(24)`, `Group(label; <a, b | a^2; b^3>)`.
impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(r) => write!(f, "Z/{r}"),
            GroupDescriptor::Free(k) => write!(f, "F{k}"),
            GroupDescriptor::FreeAbelian(1) => f.write_str("Z"),
            GroupDescriptor::FreeAbelian(k) => write!(f, "Z^{k}"),
            GroupDescriptor::FiniteTagged { order, presentation } => match presentation {
                Some(p) => write!(f, "Finite({order}; {p})"),
                None => write!(f, "Finite({order})"),
            },
            GroupDescriptor::DirectSum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" (+) ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            GroupDescriptor::Tower { base, kernels } => {
                let ks: Vec<String> = kernels.iter().map(ToString::to_string).collect();
                write!(f, "Tower({base}; {})", ks.join(","))
            }
            GroupDescriptor::Opaque { label, presentation } => match presentation {
                Some(p) => write!(f, "Group({label}; {p})"),
                None => write!(f, "Group({label})"),
            },
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error(&self) -> Error {
        let token: String = self.rest().chars().take(10).collect();
        Error::parse(
            "group descriptor",
            if token.is_empty() { "end of input".to_string() } else { token },
        )
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn uint(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error());
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("decimal digits"))
    }

    fn small(&mut self) -> Result<u64> {
        let v = self.uint()?;
        u64::try_from(&v).map_err(|_| Error::parse("group descriptor", v.to_string()))
    }

    fn presentation(&mut self) -> Result<Presentation> {
        self.skip_ws();
        let end = self.rest().find('>').ok_or_else(|| self.error())?;
        let text = &self.rest()[..=end];
        let p = text.parse()?;
        self.pos += text.len();
        Ok(p)
    }

    fn sum(&mut self) -> Result<GroupDescriptor> {
        let mut parts = vec![self.atom()?];
        while self.eat("(+)") {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part").canonical()
        } else {
            GroupDescriptor::direct_sum(parts)
        })
    }

    fn atom(&mut self) -> Result<GroupDescriptor> {
        if self.eat("Tower(") {
            let base = self.sum()?;
            self.expect(";")?;
            let mut kernels = vec![self.uint()?];
            while self.eat(",") {
                kernels.push(self.uint()?);
            }
            self.expect(")")?;
            return GroupDescriptor::tower(base, kernels);
        }
        if self.eat("Finite(") {
            let order = self.uint()?;
            let presentation = if self.eat(";") { Some(self.presentation()?) } else { None };
            self.expect(")")?;
            return GroupDescriptor::finite(order, presentation);
        }
        if self.eat("Group(") {
            self.skip_ws();
            let label: String = self.rest().chars().take_while(|c| is_label_char(*c)).collect();
            self.pos += label.len();
            let presentation = if self.eat(";") { Some(self.presentation()?) } else { None };
            self.expect(")")?;
            return GroupDescriptor::opaque(label, presentation);
        }
        if self.eat("Z/") {
            return GroupDescriptor::cyclic(self.uint()?);
        }
        if self.eat("Z^") {
            return Ok(GroupDescriptor::free_abelian(self.small()?));
        }
        if self.eat("Z") {
            return Ok(GroupDescriptor::free_abelian(1));
        }
        if self.eat("F") {
            return Ok(GroupDescriptor::free(self.small()?));
        }
        Err(self.error())
    }
}

crate::intser::serde_as_text!(GroupDescriptor);

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let g = p.sum()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return Err(p.error());
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_strings_round_trip() {
        for s in [
            "Z/6",
            "Z/1",
            "Z",
            "F2 (+) Z/3",
            "Z^4 (+) Z/5",
            "Tower(Z/2; 2,3)",
            "Z/2 (+) Z/2",
            "Z (+) Z/2",
            "Finite(24)",
            "Finite(6; <a, b | a^3; b^2; a b a b>)",
            "Group(Z/2*Z/3; <a, b | a^2; b^3>)",
            "Tower(F2 (+) Z/3; 4)",
        ] {
            assert_eq!(g(s).to_string(), s);
        }
    }

    #[test]
    fn coprime_cyclics_merge() {
        assert_eq!(g("Z/2 (+) Z/3"), g("Z/6"));
        assert_eq!(g("Z/3 (+) Z/2 (+) Z/2").to_string(), "Z/2 (+) Z/6");
        assert_eq!(g("Z/4 (+) Z/1").to_string(), "Z/4");
        assert_ne!(g("Z/2 (+) Z/2"), g("Z/4"));
    }

    #[test]
    fn degenerate_ranks() {
        assert_eq!(g("F1"), g("Z"));
        assert_eq!(g("F0"), GroupDescriptor::trivial());
        assert_eq!(g("Z^0"), GroupDescriptor::trivial());
        assert_eq!(g("Z (+) Z"), g("Z^2"));
    }

    #[test]
    fn orders() {
        assert_eq!(g("Z/2 (+) Z/6").order(), Some(BigUint::from(12u32)));
        assert_eq!(g("Tower(Z/2; 2,3)").order(), Some(BigUint::from(12u32)));
        assert_eq!(g("F2 (+) Z/3").order(), None);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "Z/", "Z/0", "Tower(Z/2; 1)", "Q", "Z/2 (+)", "F2 x"] {
            assert!(bad.parse::<GroupDescriptor>().is_err(), "{bad}");
        }
    }
}
