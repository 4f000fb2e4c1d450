//! JSON helpers. Big integers are written as decimal strings and rationals
//! as `{"num": "…", "den": "…"}`, so exact values survive serialization.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::{json, Value};

pub fn decimal<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    Exact(x).serialize(s)
}

pub fn rational_opt<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => Exact(x).serialize(s),
        None => s.serialize_none(),
    }
}

pub fn rational_vec<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(Exact))
}

/// Serializes a rational as `{"num", "den"}`.
pub struct Exact<'a>(pub &'a BigRational);

impl Serialize for Exact<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &self.0.numer().to_string())?;
        m.serialize_entry("den", &self.0.denom().to_string())?;
        m.end()
    }
}

pub fn rational_value(x: &BigRational) -> Value {
    json!({"num": x.numer().to_string(), "den": x.denom().to_string()})
}

/// Parse `{"num", "den"}` back into a rational.
pub fn parse_rational(v: &Value) -> Option<BigRational> {
    let num: BigInt = v.get("num")?.as_str()?.parse().ok()?;
    let den: BigInt = v.get("den")?.as_str()?.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}
