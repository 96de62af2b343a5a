//! Serialization helpers shared by the report types.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Writes a big integer as a plain JSON number when it fits in 64 bits,
/// otherwise as a decimal string.
pub fn bigint_decimal<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    if let Some(v) = value.to_i64() {
        s.serialize_i64(v)
    } else if let Some(v) = value.to_u64() {
        s.serialize_u64(v)
    } else {
        s.serialize_str(&value.to_string())
    }
}

/// Same rule, producing a JSON value.
pub fn bigint_value(value: &BigInt) -> serde_json::Value {
    if let Some(v) = value.to_i64() {
        v.into()
    } else if let Some(v) = value.to_u64() {
        v.into()
    } else {
        value.to_string().into()
    }
}
