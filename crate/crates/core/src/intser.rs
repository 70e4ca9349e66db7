//! Serde helpers for arbitrary-precision integers.
//!
//! Values up to 2^53 - 1 are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use num_bigint::{BigInt, BigUint};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const SAFE_MAX: u64 = (1 << 53) - 1;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Repr {
    Unsigned(u64),
    Signed(i64),
    Text(String),
}

fn to_repr(v: &BigInt) -> Repr {
    match i64::try_from(v) {
        Ok(x) if x.unsigned_abs() <= SAFE_MAX => {
            if x >= 0 {
                Repr::Unsigned(x as u64)
            } else {
                Repr::Signed(x)
            }
        }
        _ => Repr::Text(v.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: Repr) -> Result<BigInt, E> {
    match r {
        Repr::Unsigned(x) => Ok(BigInt::from(x)),
        Repr::Signed(x) => Ok(BigInt::from(x)),
        Repr::Text(s) => s.trim().parse().map_err(E::custom),
    }
}

pub mod uint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        to_repr(&BigInt::from(v.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        from_repr::<D::Error>(Repr::deserialize(d)?)?
            .to_biguint()
            .ok_or_else(|| D::Error::custom("expected a nonnegative integer"))
    }
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_repr(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }
}

pub mod uint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<Repr> = v.iter().map(|x| to_repr(&BigInt::from(x.clone()))).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Repr>::deserialize(d)?
            .into_iter()
            .map(|r| {
                from_repr::<D::Error>(r)?
                    .to_biguint()
                    .ok_or_else(|| D::Error::custom("expected a nonnegative integer"))
            })
            .collect()
    }
}

/// Serializes a type through its `Display` / `FromStr` text form.
macro_rules! serde_as_text {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let text = <String as serde::Deserialize>::deserialize(d)?;
                text.parse().map_err(<D::Error as serde::de::Error>::custom)
            }
        }
    };
}

pub(crate) use serde_as_text;
