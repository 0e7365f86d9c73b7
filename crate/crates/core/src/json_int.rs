//! JSON encoding of arbitrary-precision integers.
//!
//! Values up to 15 decimal digits are written as plain JSON numbers; larger
//! magnitudes are written as decimal strings so that readers limited to
//! double-precision JSON numbers cannot corrupt them. Both forms are
//! accepted on input and round-trip bit-exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::IntMatrix;

/// Largest magnitude still serialized as a bare JSON number (15 digits).
const NUMBER_LIMIT: i64 = 1_000_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if let Some(small) = to_small(&self.0) {
            serializer.serialize_i64(small)
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

fn to_small(x: &BigInt) -> Option<i64> {
    let v = i64::try_from(x).ok()?;
    if v.abs() < NUMBER_LIMIT {
        Some(v)
    } else {
        None
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(JsonIntVisitor)
    }
}

struct JsonIntVisitor;

impl Visitor<'_> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonInt, E> {
        Err(E::custom(format!(
            "expected an exact integer, got float {v}; write large values as decimal strings"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        BigInt::from_str(v.trim())
            .map(JsonInt)
            .map_err(|_| E::custom(format!("invalid decimal integer string {v:?}")))
    }
}

/// A matrix as nested row arrays of `JsonInt`, the on-disk form.
pub fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    (0..m.n_rows())
        .map(|i| m.row(i).iter().cloned().map(JsonInt).collect())
        .collect()
}

/// Rebuilds a matrix from nested row arrays; fails on ragged or empty input.
pub fn matrix_from_rows(rows: &[Vec<JsonInt>]) -> Result<IntMatrix, String> {
    if rows.is_empty() {
        return Err("matrix needs at least one row".into());
    }
    let cols = rows[0].len();
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err("matrix rows must be non-empty and of equal length".into());
    }
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    Ok(IntMatrix::from_rows(&rows))
}
