//! Free-group words, finite presentations and their abelianizations.
//!
//! Only abelian-level consequences of a presentation are ever computed;
//! the word problem is not attempted.

mod presentation;
mod snf;
mod word;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub use presentation::Presentation;
pub use snf::{smith_normal_form, IntMatrix};
pub use word::{Letter, Word};

/// Invariants of a finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// with `d1 | d2 | ... | dk` and every `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    /// Builds invariants from raw invariant factors, dropping unit factors.
    pub fn from_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let torsion = factors
            .iter()
            .map(|d| d.abs().to_biguint().expect("absolute value"))
            .filter(|d| !d.is_one())
            .collect();
        AbelianInvariants { free_rank, torsion }
    }

    /// Invariants of the direct sum of the given cyclic groups (0 means `Z`).
    pub fn of_cyclic_summands(orders: &[BigUint]) -> Self {
        let mut m = IntMatrix::zeros(orders.len(), orders.len());
        for (i, o) in orders.iter().enumerate() {
            m.set(i, i, BigInt::from(o.clone()));
        }
        let factors = smith_normal_form(&m);
        AbelianInvariants::from_factors(orders.len() - factors.len(), &factors)
    }

    /// Number of summands in the invariant-factor decomposition.
    pub fn summand_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigUint> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" (+) "))
        }
    }
}

/// Relator exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.generators().len());
    for (r, rel) in p.relators().iter().enumerate() {
        for (c, g) in p.generators().iter().enumerate() {
            m.set(r, c, BigInt::from(rel.exponent_sum(g)));
        }
    }
    m
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let factors = smith_normal_form(&relation_matrix(p));
    AbelianInvariants::from_factors(p.generators().len() - factors.len(), &factors)
}

pub fn quotient(p: &Presentation, extra: &[Word]) -> Result<Presentation> {
    p.quotient(extra)
}

/// Name of the meridian of the `i`-th line through the blown-up point (1-based).
pub fn line_generator(i: usize) -> String {
    format!("alpha{i}")
}

/// Name of the central generator `alpha = alpha1 alpha2 ... alphak`.
pub const CENTRAL_GENERATOR: &str = "alpha";

/// The local group `Z ⊕ F_{k-1}` around `k >= 2` lines through one point:
/// `<alpha, alpha2, ..., alphak | [alpha, alphai], 2 <= i <= k>`.
pub fn local_group(k: usize) -> Result<Presentation> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "local group needs at least two lines, got {k}"
        )));
    }
    let alpha = Word::generator(CENTRAL_GENERATOR);
    let mut generators = vec![CENTRAL_GENERATOR.to_string()];
    let mut relators = Vec::with_capacity(k - 1);
    for i in 2..=k {
        let name = line_generator(i);
        relators.push(Word::commutator(&alpha, &Word::generator(name.as_str())));
        generators.push(name);
    }
    Presentation::new(generators, relators)
}

/// The degenerate single-line local group `Z = <alpha | >`.
pub fn single_line_local_group() -> Presentation {
    Presentation::free(vec![CENTRAL_GENERATOR]).expect("valid generator name")
}

/// The change of variables `alpha = alpha1 alpha2 ... alphak` over the line meridians.
pub fn central_word(k: usize) -> Word {
    let names: Vec<String> = (1..=k).map(line_generator).collect();
    Word::product_of(&names)
}

/// Order of the local group modulo the relations `alpha^{n1} alpha1` and
/// `alpha^{ni} alphai`, computed in homology over the basis
/// `alpha, alpha2, ..., alphak` with `alpha1 = alpha - (alpha2 + ... + alphak)`.
pub fn cyclic_quotient_order(ns: &[u64]) -> Result<BigUint> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("empty parameter tuple".into()));
    }
    if let Some(i) = ns.iter().position(|&n| n < 1) {
        return Err(Error::InvalidArgument(format!(
            "parameter n{} must be at least 1",
            i + 1
        )));
    }
    let k = ns.len();
    let mut m = IntMatrix::zeros(k, k);
    // row 0: alpha^{n1} alpha1 = (n1 + 1) alpha - alpha2 - ... - alphak
    m.set(0, 0, BigInt::from(ns[0]) + 1);
    for c in 1..k {
        m.set(0, c, BigInt::from(-1));
    }
    for (i, &n) in ns.iter().enumerate().skip(1) {
        m.set(i, 0, BigInt::from(n));
        m.set(i, i, BigInt::one());
    }
    let factors = smith_normal_form(&m);
    if factors.len() != k {
        return Err(Error::InvalidArgument("relation matrix is singular".into()));
    }
    Ok(factors
        .iter()
        .map(|d| d.to_biguint().expect("positive invariant factor"))
        .product())
}
