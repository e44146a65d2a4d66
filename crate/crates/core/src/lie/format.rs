//! JSON text form of elements and presentations.
//!
//! A tree is a generator name or a two-element array `[left, right]`; an element
//! is a list of `[numerator, denominator, tree]` triples; a presentation is
//! `{"generators": [{"name", "degree"}...], "truncation": N, "differential": {name: element}}`.
//! Integers that do not fit in 64 bits are written as decimal strings.
//! The writer is deterministic, so files can be compared byte for byte.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{Map, Value};

use super::presentation::{FreeCdglPresentation, Generator};
use super::tensor::Letter;
use super::tree::{BracketTree, LieElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::input(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::input(format!("coefficient {s:?} is not an integer"))),
        other => Err(Error::input(format!("expected an integer, found {other}"))),
    }
}

pub fn tree_to_json(t: &BracketTree, names: &dyn Fn(Letter) -> String) -> Value {
    match t {
        BracketTree::Leaf(l) => Value::String(names(*l)),
        BracketTree::Node(a, b) => Value::Array(vec![tree_to_json(a, names), tree_to_json(b, names)]),
    }
}

pub fn tree_from_json(v: &Value, index: &HashMap<String, Letter>) -> Result<BracketTree> {
    match v {
        Value::String(s) => index
            .get(s)
            .map(|&l| BracketTree::Leaf(l))
            .ok_or_else(|| Error::input(format!("unknown generator {s:?}"))),
        Value::Array(items) if items.len() == 2 => Ok(BracketTree::node(
            tree_from_json(&items[0], index)?,
            tree_from_json(&items[1], index)?,
        )),
        other => Err(Error::input(format!("malformed bracket tree {other}"))),
    }
}

pub fn element_to_json(x: &LieElement, names: &dyn Fn(Letter) -> String) -> Value {
    Value::Array(
        x.terms()
            .map(|(t, c)| {
                Value::Array(vec![
                    int_to_json(c.numer()),
                    int_to_json(c.denom()),
                    tree_to_json(t, names),
                ])
            })
            .collect(),
    )
}

pub fn element_from_json(v: &Value, index: &HashMap<String, Letter>) -> Result<LieElement> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::input("an element must be a list of [num, den, tree] triples"))?;
    let mut out = LieElement::zero();
    for item in items {
        let triple = item
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::input(format!("malformed term {item}")))?;
        let num = int_from_json(&triple[0])?;
        let den = int_from_json(&triple[1])?;
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        let t = tree_from_json(&triple[2], index)?;
        out.add_term(t, Scalar::new(num, den));
    }
    Ok(out)
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

/// Text of a presentation, one generator and one differential image per line,
/// followed by any extra top-level fields in the given order.
pub fn write_presentation(p: &FreeCdglPresentation, extras: &[(&str, Value)]) -> String {
    let names = p.names();
    let mut s = String::from("{\n");
    for (k, v) in extras.iter().filter(|(k, _)| *k == "n") {
        s.push_str(&format!("  {}: {},\n", compact(&Value::from(*k)), compact(v)));
    }
    s.push_str("  \"generators\": [");
    for (i, g) in p.generators().iter().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        s.push_str(&format!(
            "    {{\"name\": {}, \"degree\": {}}}",
            compact(&Value::from(g.name.clone())),
            g.degree
        ));
    }
    s.push_str(if p.generators().is_empty() { "],\n" } else { "\n  ],\n" });
    s.push_str(&format!("  \"truncation\": {},\n", p.truncation()));
    s.push_str("  \"differential\": {");
    for (i, (g, dg)) in p.generators().iter().zip(p.differential()).enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        s.push_str(&format!(
            "    {}: {}",
            compact(&Value::from(g.name.clone())),
            compact(&element_to_json(dg, &names))
        ));
    }
    s.push_str(if p.generators().is_empty() { "}" } else { "\n  }" });
    for (k, v) in extras.iter().filter(|(k, _)| *k != "n") {
        s.push_str(&format!(",\n  {}: {}", compact(&Value::from(*k)), pretty_lines(v, 2)));
    }
    s.push_str("\n}\n");
    s
}

/// Arrays of objects get one entry per line; everything else is compact.
fn pretty_lines(v: &Value, indent: usize) -> String {
    match v {
        Value::Array(items) if !items.is_empty() => {
            let pad = " ".repeat(indent + 2);
            let body: Vec<String> = items.iter().map(|x| format!("{pad}{}", compact(x))).collect();
            format!("[\n{}\n{}]", body.join(",\n"), " ".repeat(indent))
        }
        _ => compact(v),
    }
}

/// Parse a presentation; returns it together with the remaining top-level fields.
pub fn parse_presentation(text: &str) -> Result<(FreeCdglPresentation, Map<String, Value>)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))?;
    presentation_from_value(v)
}

pub fn presentation_from_value(v: Value) -> Result<(FreeCdglPresentation, Map<String, Value>)> {
    let Value::Object(mut obj) = v else {
        return Err(Error::input("a presentation must be a JSON object"));
    };
    let gens_v = obj
        .remove("generators")
        .ok_or_else(|| Error::input("missing \"generators\""))?;
    let gens_arr = gens_v
        .as_array()
        .ok_or_else(|| Error::input("\"generators\" must be a list"))?;
    let mut generators = Vec::with_capacity(gens_arr.len());
    for g in gens_arr {
        let name = g
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::input(format!("generator without a name: {g}")))?;
        let degree = g
            .get("degree")
            .and_then(Value::as_i64)
            .and_then(|d| i32::try_from(d).ok())
            .ok_or_else(|| Error::input(format!("generator {name:?} without an integer degree")))?;
        generators.push(Generator::new(name, degree));
    }
    let truncation = obj
        .remove("truncation")
        .and_then(|t| t.as_u64())
        .ok_or_else(|| Error::input("missing or invalid \"truncation\""))? as usize;
    let mut index = HashMap::new();
    for (i, g) in generators.iter().enumerate() {
        if index.insert(g.name.clone(), i as Letter).is_some() {
            return Err(Error::input(format!("duplicate generator name {:?}", g.name)));
        }
    }
    let diff = obj.remove("differential").unwrap_or(Value::Object(Map::new()));
    let diff = diff
        .as_object()
        .ok_or_else(|| Error::input("\"differential\" must be an object"))?;
    let mut images = vec![LieElement::zero(); generators.len()];
    for (name, e) in diff {
        let l = *index
            .get(name)
            .ok_or_else(|| Error::input(format!("differential of unknown generator {name:?}")))?;
        images[l as usize] = element_from_json(e, &index)?;
    }
    let p = FreeCdglPresentation::new(generators, truncation, images)?;
    Ok((p, obj))
}
