//! JSON building blocks and the plain-text rendering of reports.

use std::fmt::Write;

use num_bigint::BigUint;
use semiflows::{PetriNet, RationalCoeffs, Semiflow, Support};
use serde_json::{Map, Number, Value};

/// Exact integer as a JSON number, whatever its size.
pub fn big(n: &BigUint) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal digits form a JSON number"))
}

pub fn count(n: usize) -> Value {
    Value::from(n)
}

pub fn coords(v: &[BigUint]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

pub fn semiflow(v: &Semiflow) -> Value {
    coords(v.coords())
}

pub fn semiflows(vs: &[Semiflow]) -> Value {
    Value::Array(vs.iter().map(semiflow).collect())
}

pub fn support(net: &PetriNet, s: &Support) -> Value {
    Value::Array(s.names(net).into_iter().map(Value::from).collect())
}

pub fn places(net: &PetriNet, indices: &[usize]) -> Value {
    Value::Array(indices.iter().map(|&p| Value::from(net.places()[p].as_str())).collect())
}

/// Rationals as "num/den" strings, always with an explicit denominator.
pub fn rationals(c: &RationalCoeffs) -> Value {
    Value::Array(
        c.values()
            .iter()
            .map(|q| Value::from(format!("{}/{}", q.numer(), q.denom())))
            .collect(),
    )
}

pub fn object<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// Plain-text form: one `key: value` line per field, nested objects indented,
/// number lists as `(a,b,c)` and string lists as `{a,b}`.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn inline(key: &str, value: &Value) -> Option<String> {
    match value {
        Value::Null if key.starts_with("is_") => Some("unknown".into()),
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("none".into()),
        Value::Array(items) if items.iter().all(|v| v.is_number() || v.is_boolean()) => Some(format!(
            "({})",
            items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        )),
        Value::Array(items) if items.iter().all(Value::is_string) => Some(format!(
            "{{{}}}",
            items.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(",")
        )),
        _ => None,
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match inline(k, v) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_value(out, v, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline("", item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, item, indent + 1);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                let _ = writeln!(out, "{pad}{line}");
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline("", other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_integers_stay_exact() {
        let n: BigUint = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big(&n).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn text_layout() {
        let v = object([
            ("sperner", Value::from(6)),
            ("classes", Value::Array(vec![Value::Array(vec!["p1".into(), "p2".into()])])),
            ("is_live", Value::Null),
            ("witness", Value::Null),
            ("dead", Value::Array(vec![])),
            ("text", "a\nb".into()),
        ]);
        assert_eq!(
            to_text(&v),
            "sperner: 6\nclasses:\n  {p1,p2}\nis_live: unknown\nwitness: none\ndead: none\ntext:\n  a\n  b\n"
        );
    }
}
