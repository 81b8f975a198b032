//! Plain-text rendering of report values.

use serde_json::Value;

fn int_tuple(v: &Value) -> Option<String> {
    let items = v.as_array()?;
    let ints: Option<Vec<String>> = items.iter().map(|x| x.as_i64().map(|i| i.to_string())).collect();
    Some(format!("({})", ints?.join(",")))
}

fn tuple_list(v: &Value) -> Option<String> {
    let items = v.as_array()?;
    if items.is_empty() {
        return Some("()".into());
    }
    let parts: Option<Vec<String>> = items.iter().map(int_tuple).collect();
    Some(parts?.join(" "))
}

/// One-line form for scalars, integer tuples and lists of tuples.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(_) => int_tuple(v).or_else(|| tuple_list(v)),
        Value::Object(_) => None,
    }
}

pub fn text(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        text(out, x, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

fn is_tuple(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(Value::is_number))
}

fn is_tuple_like(v: &Value) -> bool {
    is_tuple(v) || v.as_array().is_some_and(|a| a.iter().all(is_tuple))
}

/// Pretty JSON with integer tuples and lists of tuples kept on one line.
pub fn json(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{pad}{}: ", Value::String(k.clone())));
                json(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}}}", "  ".repeat(depth)));
        }
        Value::Array(items) if !items.is_empty() && !is_tuple_like(v) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                json(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}]", "  ".repeat(depth)));
        }
        other => out.push_str(&serde_json::to_string(other).expect("json values serialize")),
    }
}
