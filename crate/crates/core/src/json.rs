//! JSON helpers shared by the report types.

use num_traits::ToPrimitive;
use serde_json::Value;

use crate::intlattice::Int;

/// Integers as JSON numbers when they fit in `i64`, decimal strings otherwise.
pub fn int(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn ints(xs: &[Int]) -> Vec<Value> {
    xs.iter().map(int).collect()
}
