//! Exact integers in JSON output.
//!
//! Group orders and coset indices routinely exceed the 2^53 range that
//! lossy JSON consumers can hold in a double, so values above that bound
//! are serialized as decimal strings. Values at or below the bound stay
//! plain numbers.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const SAFE_MAX: u128 = 1 << 53;

/// Exact unsigned integer that survives JSON round-trips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactInt(pub u128);

impl fmt::Display for ExactInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u128> for ExactInt {
    fn from(v: u128) -> Self {
        ExactInt(v)
    }
}

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 <= SAFE_MAX {
            serializer.serialize_u64(self.0 as u64)
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

struct ExactIntVisitor;

impl Visitor<'_> for ExactIntVisitor {
    type Value = ExactInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an unsigned integer or a decimal string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExactInt, E> {
        Ok(ExactInt(v as u128))
    }

    fn visit_u128<E: de::Error>(self, v: u128) -> std::result::Result<ExactInt, E> {
        Ok(ExactInt(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExactInt, E> {
        v.parse::<u128>().map(ExactInt).map_err(de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(ExactIntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_stay_numbers() {
        let s = serde_json::to_string(&ExactInt(20160)).unwrap();
        assert_eq!(s, "20160");
        let back: ExactInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ExactInt(20160));
    }

    #[test]
    fn large_values_become_strings() {
        let v = ExactInt(475_566_474_240_000_000_000);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "\"475566474240000000000\"");
        let back: ExactInt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
