//! JSON and DOT encodings of proofs and truncated models.
//!
//! Proof documents are trees of objects with the keys `rule`,
//! `conclusion` (antecedent and succedent as worm strings), `params` and
//! `premises`. Keys are emitted in sorted order.

use std::fmt;
use std::fmt::Write;

use serde_json::{json, Map, Value};
use wormcalc_core::calculus::Judgment;
use wormcalc_core::{Ordinal, ParseError, Proof, Rule, TruncatedModel, Worm};

#[derive(Debug)]
pub enum FormatError {
    Json(serde_json::Error),
    Syntax(ParseError),
    Shape(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Json(e) => write!(f, "invalid JSON: {e}"),
            FormatError::Syntax(e) => write!(f, "{e}"),
            FormatError::Shape(msg) => write!(f, "malformed proof document: {msg}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<ParseError> for FormatError {
    fn from(e: ParseError) -> Self {
        FormatError::Syntax(e)
    }
}

fn shape(msg: impl Into<String>) -> FormatError {
    FormatError::Shape(msg.into())
}

pub fn proof_to_value(proof: &Proof) -> Value {
    let params = match &proof.rule {
        Rule::Ax1 => json!({}),
        Rule::AxTransitivity { alpha } | Rule::Necessitation { alpha } => {
            json!({ "alpha": alpha.to_string() })
        }
        Rule::AxMonotonicity { alpha, beta } => {
            json!({ "alpha": alpha.to_string(), "beta": beta.to_string() })
        }
        Rule::Cut { middle } => json!({ "middle": middle.to_string() }),
        Rule::R3 { alpha, split } => json!({ "alpha": alpha.to_string(), "split": split }),
    };
    json!({
        "rule": proof.rule.name(),
        "conclusion": [proof.antecedent().to_string(), proof.succedent().to_string()],
        "params": params,
        "premises": proof.premises.iter().map(proof_to_value).collect::<Vec<_>>(),
    })
}

/// Pretty-printed canonical JSON, newline terminated.
pub fn proof_to_json(proof: &Proof) -> String {
    let mut s = serde_json::to_string_pretty(&proof_to_value(proof)).expect("serializable");
    s.push('\n');
    s
}

pub fn proof_from_json(text: &str) -> Result<Proof, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(FormatError::Json)?;
    proof_from_value(&value)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| shape(format!("missing field `{key}`")))
}

fn string_param<'a>(params: &'a Map<String, Value>, key: &str) -> Result<&'a str, FormatError> {
    field(params, key)?
        .as_str()
        .ok_or_else(|| shape(format!("parameter `{key}` must be a string")))
}

fn ordinal_param(params: &Map<String, Value>, key: &str) -> Result<Ordinal, FormatError> {
    Ok(string_param(params, key)?.parse()?)
}

pub fn proof_from_value(value: &Value) -> Result<Proof, FormatError> {
    let obj = value
        .as_object()
        .ok_or_else(|| shape("node must be an object"))?;
    let conclusion = field(obj, "conclusion")?
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| shape("`conclusion` must hold two worm strings"))?;
    let worm = |v: &Value| -> Result<Worm, FormatError> {
        Ok(v.as_str()
            .ok_or_else(|| shape("worms must be strings"))?
            .parse()?)
    };
    let conclusion = Judgment::new(worm(&conclusion[0])?, worm(&conclusion[1])?);
    let params = field(obj, "params")?
        .as_object()
        .ok_or_else(|| shape("`params` must be an object"))?;
    let name = field(obj, "rule")?
        .as_str()
        .ok_or_else(|| shape("`rule` must be a string"))?;
    let rule = match name {
        "Ax1" => Rule::Ax1,
        "AxTransitivity" => Rule::AxTransitivity {
            alpha: ordinal_param(params, "alpha")?,
        },
        "AxMonotonicity" => Rule::AxMonotonicity {
            alpha: ordinal_param(params, "alpha")?,
            beta: ordinal_param(params, "beta")?,
        },
        "Cut" => Rule::Cut {
            middle: string_param(params, "middle")?.parse()?,
        },
        "Necessitation" => Rule::Necessitation {
            alpha: ordinal_param(params, "alpha")?,
        },
        "R3" => Rule::R3 {
            alpha: ordinal_param(params, "alpha")?,
            split: field(params, "split")?
                .as_u64()
                .ok_or_else(|| shape("`split` must be a natural number"))?
                as usize,
        },
        other => return Err(shape(format!("unknown rule `{other}`"))),
    };
    let premises = field(obj, "premises")?
        .as_array()
        .ok_or_else(|| shape("`premises` must be an array"))?
        .iter()
        .map(proof_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Proof {
        conclusion,
        rule,
        premises,
    })
}

/// Points as index-to-ordinal maps over every index of the model, and a
/// flat list of relation triples.
pub fn model_to_value(model: &TruncatedModel) -> Value {
    let points: Vec<Value> = (0..model.len())
        .map(|x| {
            let coords: Map<String, Value> = model
                .coords(x)
                .iter()
                .enumerate()
                .map(|(i, v)| (i.to_string(), Value::String(v.to_string())))
                .collect();
            Value::Object(coords)
        })
        .collect();
    let relations: Vec<Value> = (0..model.width())
        .flat_map(|xi| {
            model
                .relation(xi)
                .into_iter()
                .map(move |(from, to)| json!({ "index": xi, "from": from, "to": to }))
        })
        .collect();
    json!({ "width": model.width(), "points": points, "relations": relations })
}

pub fn model_to_json(model: &TruncatedModel) -> String {
    let mut s = serde_json::to_string_pretty(&model_to_value(model)).expect("serializable");
    s.push('\n');
    s
}

const EDGE_STYLES: [&str; 4] = ["solid", "dashed", "dotted", "bold"];

/// Graphviz rendering; relation `ξ` uses edge style `ξ mod 4` and the
/// label `ξ`.
pub fn model_to_dot(model: &TruncatedModel) -> String {
    let mut s = String::from("digraph truncation {\n");
    for x in 0..model.len() {
        let label = model.point(x).display_width(model.width());
        writeln!(s, "  p{x} [label=\"{label}\"];").unwrap();
    }
    for xi in 0..model.width() {
        let style = EDGE_STYLES[xi % EDGE_STYLES.len()];
        for (from, to) in model.relation(xi) {
            writeln!(s, "  p{from} -> p{to} [label=\"{xi}\", style={style}];").unwrap();
        }
    }
    s.push_str("}\n");
    s
}
