//! JSON documents for models, cochains and jets.
//!
//! Every number in a document is exact: a string such as `"3"` or `"-1/2"`,
//! or a JSON integer. Floating-point literals are rejected. Tensors are
//! written as a shape and a flat entry list in lexicographic index order.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "kind": "algebra",
//!   "dim": 2,
//!   "basis": ["1", "x"],
//!   "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
//!   "unit": ["1", "0"]
//! }
//! ```
//!
//! Prime fields are written `{"Fp": 5}`. Bialgebras add `comul` (a
//! `dim × dim × dim` array, `comul[i][j][k]` the coefficient of `e_j ⊗ e_k`
//! in `Δ(e_i)`) and `counit`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::deformation::{DeformationError, DeformationJet, GaugeJet};
use crate::models::{
    build_algebra_model, build_bialgebra_model, AlgebraPresentation, BialgebraPresentation,
    Cochain, CochainModel, ModelError, ModelKind, Presentation,
};
use crate::scalar::{FieldSpec, Scalar};
use crate::tensor::Tensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Jet(#[from] DeformationError),
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> DocumentError {
    DocumentError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn field_at<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    location: &str,
) -> Result<&'a Value, DocumentError> {
    obj.get(key)
        .ok_or_else(|| parse_error(location, format!("missing field \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, location: &str) -> Result<&'a Map<String, Value>, DocumentError> {
    v.as_object()
        .ok_or_else(|| parse_error(location, "expected an object"))
}

fn as_array<'a>(v: &'a Value, location: &str) -> Result<&'a Vec<Value>, DocumentError> {
    v.as_array()
        .ok_or_else(|| parse_error(location, "expected an array"))
}

fn as_usize(v: &Value, location: &str) -> Result<usize, DocumentError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_error(location, "expected a non-negative integer"))
}

fn parse_scalar(field: FieldSpec, v: &Value, location: &str) -> Result<Scalar, DocumentError> {
    match v {
        Value::String(s) => field.parse(s).map_err(|e| parse_error(location, e.to_string())),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            field.parse(&n.to_string()).map_err(|e| parse_error(location, e.to_string()))
        }
        Value::Number(n) => Err(parse_error(
            location,
            format!("floating-point literal {n} is not allowed; write exact numbers as strings like \"1/2\""),
        )),
        _ => Err(parse_error(location, "expected an exact number")),
    }
}

fn parse_vector(
    field: FieldSpec,
    v: &Value,
    len: usize,
    location: &str,
) -> Result<Vec<Scalar>, DocumentError> {
    let items = as_array(v, location)?;
    if items.len() != len {
        return Err(parse_error(
            location,
            format!("expected {len} entries, found {}", items.len()),
        ));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| parse_scalar(field, x, &format!("{location}[{i}]")))
        .collect()
}

/// A nested `d × d × d` array of numbers.
fn parse_cube(
    field: FieldSpec,
    v: &Value,
    d: usize,
    location: &str,
) -> Result<Tensor, DocumentError> {
    let mut data = Vec::with_capacity(d * d * d);
    let outer = as_array(v, location)?;
    if outer.len() != d {
        return Err(parse_error(
            location,
            format!("expected {d} entries, found {}", outer.len()),
        ));
    }
    for (i, plane) in outer.iter().enumerate() {
        let loc_i = format!("{location}[{i}]");
        let rows = as_array(plane, &loc_i)?;
        if rows.len() != d {
            return Err(parse_error(
                &loc_i,
                format!("expected {d} entries, found {}", rows.len()),
            ));
        }
        for (j, row) in rows.iter().enumerate() {
            data.extend(parse_vector(field, row, d, &format!("{loc_i}[{j}]"))?);
        }
    }
    Ok(Tensor::from_vec(field, &[d, d, d], data).expect("length checked"))
}

fn parse_field(v: &Value) -> Result<FieldSpec, DocumentError> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldSpec::Rationals),
        Value::Object(obj) => {
            let p = obj
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_error("field", "expected \"Q\" or {\"Fp\": p}"))?;
            FieldSpec::prime(p).map_err(|e| parse_error("field.Fp", e.to_string()))
        }
        _ => Err(parse_error("field", "expected \"Q\" or {\"Fp\": p}")),
    }
}

/// A presentation read from a document, not yet validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDocument {
    pub presentation: Presentation,
}

impl ModelDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            parse_error(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, DocumentError> {
        let obj = as_object(value, "document")?;
        let field = parse_field(field_at(obj, "field", "document")?)?;
        let kind = match field_at(obj, "kind", "document")?.as_str() {
            Some("algebra") => ModelKind::Algebra,
            Some("bialgebra") => ModelKind::Bialgebra,
            _ => return Err(parse_error("kind", "expected \"algebra\" or \"bialgebra\"")),
        };
        let d = as_usize(field_at(obj, "dim", "document")?, "dim")?;
        if d == 0 {
            return Err(parse_error("dim", "dimension must be positive"));
        }
        let basis_v = as_array(field_at(obj, "basis", "document")?, "basis")?;
        if basis_v.len() != d {
            return Err(parse_error(
                "basis",
                format!("expected {d} names, found {}", basis_v.len()),
            ));
        }
        let basis_names = basis_v
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| parse_error(format!("basis[{i}]"), "expected a string"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let algebra = AlgebraPresentation {
            field,
            basis_names,
            mul: parse_cube(field, field_at(obj, "mul", "document")?, d, "mul")?,
            unit: parse_vector(field, field_at(obj, "unit", "document")?, d, "unit")?,
        };
        let presentation = match kind {
            ModelKind::Algebra => {
                for key in ["comul", "counit"] {
                    if obj.contains_key(key) {
                        return Err(parse_error(
                            key,
                            "only bialgebra documents carry a coalgebra structure",
                        ));
                    }
                }
                Presentation::Algebra(algebra)
            }
            ModelKind::Bialgebra => Presentation::Bialgebra(BialgebraPresentation {
                algebra,
                comul: parse_cube(field, field_at(obj, "comul", "document")?, d, "comul")?,
                counit: parse_vector(field, field_at(obj, "counit", "document")?, d, "counit")?,
            }),
        };
        Ok(ModelDocument { presentation })
    }

    /// Canonical form: fixed key order, numbers as reduced strings.
    pub fn to_value(&self) -> Value {
        presentation_value(&self.presentation)
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(&self.to_value())
    }

    pub fn build(self) -> Result<CochainModel, DocumentError> {
        Ok(match self.presentation {
            Presentation::Algebra(p) => build_algebra_model(p)?,
            Presentation::Bialgebra(p) => build_bialgebra_model(p)?,
        })
    }
}

/// Parses and validates a model document.
pub fn parse_model(text: &str) -> Result<CochainModel, DocumentError> {
    ModelDocument::from_json(text)?.build()
}

fn scalar_value(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn cube_value(t: &Tensor) -> Value {
    let d = t.shape()[0];
    Value::Array(
        (0..d)
            .map(|i| {
                Value::Array(
                    (0..d)
                        .map(|j| {
                            Value::Array((0..d).map(|k| scalar_value(t.get(&[i, j, k]))).collect())
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn field_value(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::PrimeField(p) => json!({ "Fp": p }),
    }
}

fn presentation_value(p: &Presentation) -> Value {
    let a = p.algebra();
    let mut obj = Map::new();
    obj.insert("field".into(), field_value(a.field));
    obj.insert(
        "kind".into(),
        json!(match p {
            Presentation::Algebra(_) => "algebra",
            Presentation::Bialgebra(_) => "bialgebra",
        }),
    );
    obj.insert("dim".into(), json!(a.dim()));
    obj.insert("basis".into(), json!(a.basis_names));
    obj.insert("mul".into(), cube_value(&a.mul));
    obj.insert(
        "unit".into(),
        Value::Array(a.unit.iter().map(scalar_value).collect()),
    );
    if let Presentation::Bialgebra(b) = p {
        obj.insert("comul".into(), cube_value(&b.comul));
        obj.insert(
            "counit".into(),
            Value::Array(b.counit.iter().map(scalar_value).collect()),
        );
    }
    Value::Object(obj)
}

pub fn model_to_json(model: &CochainModel) -> String {
    to_canonical_json(&presentation_value(model.presentation()))
}

/// Indented JSON with sorted keys, arrays of plain values kept on one
/// line, and a trailing newline.
pub fn to_canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_leaf) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        leaf => out.push_str(&leaf.to_string()),
    }
}

/// `{"degree": k, "shape": [...], "entries": [...]}`.
pub fn cochain_value(c: &Cochain) -> Value {
    json!({
        "degree": c.degree(),
        "shape": c.payload().shape(),
        "entries": c.payload().data().iter().map(scalar_value).collect::<Vec<_>>(),
    })
}

pub fn parse_cochain_value(
    model: &CochainModel,
    v: &Value,
    location: &str,
) -> Result<Cochain, DocumentError> {
    let obj = as_object(v, location)?;
    let degree = as_usize(
        field_at(obj, "degree", location)?,
        &format!("{location}.degree"),
    )?;
    let expected = model.cochain_shape(degree);
    if let Some(shape) = obj.get("shape") {
        let shape: Vec<usize> = as_array(shape, &format!("{location}.shape"))?
            .iter()
            .enumerate()
            .map(|(i, x)| as_usize(x, &format!("{location}.shape[{i}]")))
            .collect::<Result<_, _>>()?;
        if shape != expected {
            return Err(parse_error(
                format!("{location}.shape"),
                format!("a degree-{degree} cochain of this model has shape {expected:?}, found {shape:?}"),
            ));
        }
    }
    let data = parse_vector(
        model.field(),
        field_at(obj, "entries", location)?,
        model.cochain_dim(degree),
        &format!("{location}.entries"),
    )?;
    Ok(model.cochain_from_vector(degree, data)?)
}

pub fn parse_cochain(model: &CochainModel, text: &str) -> Result<Cochain, DocumentError> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        parse_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    parse_cochain_value(model, &v, "cochain")
}

fn parse_terms(
    model: &CochainModel,
    text: &str,
    degree: usize,
) -> Result<Vec<Cochain>, DocumentError> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        parse_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = as_object(&v, "jet")?;
    let terms = as_array(field_at(obj, "terms", "jet")?, "jet.terms")?;
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let location = format!("jet.terms[{i}]");
            let mut t = t.clone();
            if let Some(o) = t.as_object_mut() {
                o.entry("degree").or_insert(json!(degree));
            }
            let c = parse_cochain_value(model, &t, &location)?;
            if c.degree() != degree {
                return Err(parse_error(
                    location,
                    format!("jet terms have degree {degree}"),
                ));
            }
            Ok(c)
        })
        .collect()
}

/// `{"terms": [cochain, …]}` with degree-2 terms, the first equal to `μ`.
pub fn parse_deformation_jet(
    model: &CochainModel,
    text: &str,
) -> Result<DeformationJet, DocumentError> {
    Ok(DeformationJet::new(model, parse_terms(model, text, 2)?)?)
}

/// `{"terms": [cochain, …]}` with degree-1 terms, the first the identity.
pub fn parse_gauge_jet(model: &CochainModel, text: &str) -> Result<GaugeJet, DocumentError> {
    Ok(GaugeJet::new(model, parse_terms(model, text, 1)?)?)
}

pub fn jet_value(terms: &[Cochain]) -> Value {
    json!({ "terms": terms.iter().map(cochain_value).collect::<Vec<_>>() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets::*;

    #[test]
    fn round_trip_is_canonical() {
        for p in [
            Presentation::Algebra(dual_numbers(FieldSpec::Rationals)),
            Presentation::Bialgebra(group_algebra(FieldSpec::prime(5).unwrap(), &[3])),
        ] {
            let doc = ModelDocument { presentation: p };
            let text = doc.to_json();
            let again = ModelDocument::from_json(&text).unwrap();
            assert_eq!(again, doc);
            assert_eq!(again.to_json(), text);
        }
    }

    #[test]
    fn floats_are_rejected_with_location() {
        let text = ModelDocument {
            presentation: Presentation::Algebra(dual_numbers(FieldSpec::Rationals)),
        }
        .to_json();
        let mut v: Value = serde_json::from_str(&text).unwrap();
        v["unit"][1] = json!(0.5);
        match ModelDocument::from_value(&v) {
            Err(DocumentError::Parse { location, .. }) => assert_eq!(location, "unit[1]"),
            other => panic!("{other:?}"),
        }
        v["unit"][1] = json!("0.5");
        assert!(matches!(
            ModelDocument::from_value(&v),
            Err(DocumentError::Parse { .. })
        ));
        v["unit"][1] = json!(0);
        assert!(ModelDocument::from_value(&v).is_ok());
    }

    #[test]
    fn fractions_are_reduced() {
        let text = r#"{"field":"Q","kind":"algebra","dim":1,"basis":["1"],"mul":[[["2/2"]]],"unit":["3/3"]}"#;
        let doc = ModelDocument::from_json(text).unwrap();
        assert!(doc.to_json().contains("\"1\""));
        doc.build().unwrap();
    }

    #[test]
    fn cochain_documents() {
        let m = build_bialgebra_model(group_algebra(FieldSpec::Rationals, &[2])).unwrap();
        let c = m
            .basis_cochain(2, 3)
            .scale(&FieldSpec::Rationals.fraction(-1, 2).unwrap());
        let text = to_canonical_json(&cochain_value(&c));
        assert!(text.contains("\"-1/2\""));
        assert_eq!(parse_cochain(&m, &text).unwrap(), c);
        let jet = parse_deformation_jet(&m, &to_canonical_json(&jet_value(&[m.mu(), c.clone()])))
            .unwrap();
        assert_eq!(jet.term(1), &c);
        assert!(parse_deformation_jet(&m, &to_canonical_json(&jet_value(&[c]))).is_err());
    }
}
