//! Job-spec parsing and validation. Specs are JSON objects; every
//! validation error carries the path of the offending field.

use std::sync::Arc;

use serde_json::Value;

use folcoh_core::homotopy::{RegularFoliatedForm, RegularModel};
use folcoh_core::polyring::{parse_polynomial, Polynomial};
use folcoh_core::williamson::{BlockLabel, WilliamsonBasis};

use crate::CliError;

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError { code: 1, kind: "invalid_spec".into(), message: msg.into(), extra: Value::Null }
}

pub fn get_object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| invalid(format!("{path}: expected a JSON object")))
}

pub fn get_field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value, CliError> {
    get_object(v, path)?
        .get(key)
        .ok_or_else(|| invalid(format!("{path}.{key}: missing required field")))
}

pub fn get_usize(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| invalid(format!("{path}: expected a nonnegative integer")))
}

pub fn get_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| invalid(format!("{path}: expected a string")))
}

/// {"type": ["e", "h", "ff", ...]} expanded positionally to pair indices;
/// the object form {"type": {"blocks": [...]}} is accepted as well.
pub fn williamson_type(spec: &Value) -> Result<Arc<WilliamsonBasis>, CliError> {
    let field = get_field(spec, "spec", "type")?;
    let field = match field {
        Value::Object(map) => map
            .get("blocks")
            .ok_or_else(|| invalid("spec.type.blocks: missing required field"))?,
        other => other,
    };
    let arr = field
        .as_array()
        .ok_or_else(|| invalid("spec.type: expected an array of block kinds"))?;
    if arr.is_empty() {
        return Err(invalid("spec.type: needs at least one block"));
    }
    let mut labels = Vec::new();
    for (i, v) in arr.iter().enumerate() {
        let s = get_str(v, &format!("spec.type[{i}]"))?;
        labels.push(
            BlockLabel::parse(s)
                .map_err(|e| invalid(format!("spec.type[{i}]: {e}")))?,
        );
    }
    Ok(Arc::new(WilliamsonBasis::new(&labels)))
}

pub fn polynomial_field(
    spec: &Value,
    key: &str,
    basis: &WilliamsonBasis,
) -> Result<Polynomial, CliError> {
    let text = get_str(get_field(spec, "spec", key)?, &format!("spec.{key}"))?;
    parse_polynomial(text, basis.coords()).map_err(|e| invalid(format!("spec.{key}: {e}")))
}

/// {"model": {"m": 4, "n": 2}}
pub fn regular_model(spec: &Value) -> Result<RegularModel, CliError> {
    let model = get_field(spec, "spec", "model")?;
    let m = get_usize(get_field(model, "spec.model", "m")?, "spec.model.m")?;
    let n = get_usize(get_field(model, "spec.model", "n")?, "spec.model.n")?;
    RegularModel::new(m, n).map_err(|e| invalid(format!("spec.model: {e}")))
}

pub fn regular_form_field(
    spec: &Value,
    key: &str,
    model: &RegularModel,
) -> Result<RegularFoliatedForm, CliError> {
    let v = get_field(spec, "spec", key)?;
    RegularFoliatedForm::from_json(v, model).map_err(|e| invalid(format!("spec.{key}: {e}")))
}

/// Degrees requested by "d": either a single integer or an array.
pub fn degree_list(spec: &Value) -> Result<Vec<u32>, CliError> {
    let v = get_field(spec, "spec", "d")?;
    match v {
        Value::Number(_) => Ok(vec![get_usize(v, "spec.d")? as u32]),
        Value::Array(items) => {
            if items.is_empty() {
                return Err(invalid("spec.d: empty degree list"));
            }
            items
                .iter()
                .enumerate()
                .map(|(i, x)| Ok(get_usize(x, &format!("spec.d[{i}]"))? as u32))
                .collect()
        }
        _ => Err(invalid("spec.d: expected an integer or an array of integers")),
    }
}

/// Rejects specs whose embedded "command" disagrees with the subcommand.
pub fn check_command(spec: &Value, expected: &str) -> Result<(), CliError> {
    if let Some(cmd) = spec.get("command") {
        let s = get_str(cmd, "spec.command")?;
        if s != expected {
            return Err(invalid(format!(
                "spec.command: `{s}` does not match the `{expected}` subcommand"
            )));
        }
    }
    Ok(())
}
