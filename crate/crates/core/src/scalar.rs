//! Exact rational scalars.
//!
//! Every coordinate in the crate is a [`Scalar`]. On the wire a scalar is the
//! string `"numerator/denominator"`; parsing additionally accepts a bare integer.

use num::{BigInt, BigRational, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_bigint(v: BigInt) -> Scalar {
    BigRational::from_integer(v)
}

pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
    (a + b) / int(2)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn abs(a: &Scalar) -> Scalar {
    a.abs()
}

pub fn to_fraction_string(q: &Scalar) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Parses a comma separated list such as `1/3,2,5/7`.
pub fn parse_scalar_list(s: &str) -> Result<Vec<Scalar>> {
    s.split(',').map(parse_scalar).collect()
}

/// Serde adapter for a single scalar field.
pub mod serde_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Scalar, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&to_fraction_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(de)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of scalars.
pub mod serde_scalars {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Scalar], ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&to_fraction_string(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Scalar>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.iter()
            .map(|s| parse_scalar(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for an optional scalar.
pub mod serde_opt_scalar {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        q: &Option<Scalar>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => ser.serialize_some(&to_fraction_string(q)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Scalar>, D::Error> {
        Option::<String>::deserialize(de)?
            .map(|s| parse_scalar(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
