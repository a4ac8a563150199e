//! Experiment config files: flat `key = value` lines or a JSON object.
//!
//! Pattern fields hold hypergraph text; in the flat form semicolons stand in
//! for newlines, e.g. `pattern = 3 5 2; 0 1 2; 2 3 4` or, rooted,
//! `pattern = 3 3 1; 0 1 2; roots: 0`.

use std::path::Path;

use serde_json::{Map, Value};
use zol_core::ExperimentConfig;

use crate::commands::CliError;

fn normalize_pattern(raw: &str) -> String {
    let mut out = String::new();
    for part in raw.replace(';', "\n").lines() {
        let line = part.trim();
        if !line.is_empty() {
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

fn parse_scalar(raw: &str) -> Value {
    let t = raw.trim();
    if let Ok(i) = t.parse::<i64>() {
        return Value::from(i);
    }
    if let Ok(f) = t.parse::<f64>() {
        // Fractions like 17/12 fail the parse above and stay strings.
        return Value::from(f);
    }
    match t {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => Value::from(t.to_string()),
    }
}

fn from_key_value(text: &str) -> Result<Map<String, Value>, CliError> {
    let mut map = Map::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("config line {}: expected key = value", idx + 1))
        })?;
        let key = key.trim().to_string();
        let value = if key == "pattern" {
            Value::from(normalize_pattern(value))
        } else {
            parse_scalar(value)
        };
        map.insert(key, value);
    }
    Ok(map)
}

fn canonical_kind(kind: &str) -> Result<&'static str, CliError> {
    match kind.replace('-', "_").as_str() {
        "poisson" => Ok("poisson"),
        "threshold" => Ok("threshold"),
        "extensions" => Ok("extensions"),
        "closure_bound" => Ok("closure_bound"),
        other => Err(CliError::usage(format!(
            "unknown experiment kind {other:?}; expected poisson, threshold, extensions or closure_bound"
        ))),
    }
}

/// Loads and validates a config, forcing the command-line kind.
pub fn load(kind: &str, path: &Path) -> Result<ExperimentConfig, CliError> {
    let kind = canonical_kind(kind)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut map = if text.trim_start().starts_with('{') {
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("invalid JSON config: {e}")))?;
        match value {
            Value::Object(mut m) => {
                if let Some(Value::String(p)) = m.get("pattern").cloned() {
                    m.insert("pattern".into(), Value::from(normalize_pattern(&p)));
                }
                m
            }
            _ => return Err(CliError::usage("JSON config must be an object")),
        }
    } else {
        from_key_value(&text)?
    };
    if !map.contains_key("seed") {
        map.insert("seed".into(), Value::from(0u64));
    }
    map.insert("kind".into(), Value::from(kind));
    serde_json::from_value(Value::Object(map))
        .map_err(|e| CliError::usage(format!("config does not fit kind {kind}: {e}")))
}
