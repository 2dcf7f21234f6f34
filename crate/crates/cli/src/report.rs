//! Machine-readable reports with stable float formatting.
//!
//! Every finite float in a report is printed with 17 significant
//! digits, enough to reproduce the f64 bit pattern on reparse, so a
//! report is a faithful record of what the process computed.

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub fn digest_hex(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// A float as a JSON number literal with 17 significant digits; null
/// when not finite (JSON has no inf or nan).
pub fn json_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&format!("{x:.16e}")).expect("float literal is valid JSON")
}

pub fn json_complex(z: Complex64) -> Value {
    json!([json_float(z.re), json_float(z.im)])
}

/// Rewrite every non-integer number in the tree through json_float so
/// serialized values inherit the 17-digit convention.
pub fn canonicalize_floats(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if !n.is_i64() && !n.is_u64() {
                let x = n.as_f64().expect("non-integer JSON number is an f64");
                *v = json_float(x);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(canonicalize_floats),
        Value::Object(map) => map.values_mut().for_each(canonicalize_floats),
        _ => {}
    }
}

/// The report envelope shared by every subcommand.
pub fn report(
    command: &str,
    input_digest: Option<String>,
    result: Value,
    residuals: Option<Value>,
    total_ms: f64,
) -> Value {
    let mut map = Map::new();
    map.insert("command".into(), json!(command));
    map.insert(
        "input_digest".into(),
        input_digest.map_or(Value::Null, Value::String),
    );
    map.insert("result".into(), result);
    if let Some(r) = residuals {
        map.insert("residuals".into(), r);
    }
    map.insert("timings".into(), json!({ "total_ms": total_ms }));
    let mut v = Value::Object(map);
    canonicalize_floats(&mut v);
    v
}
