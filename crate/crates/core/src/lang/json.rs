//! JSON interchange for scalars, elements and states.
//!
//! Integers are written as JSON numbers of arbitrary size; object keys are
//! emitted in sorted order, so output is byte-stable for a fixed value.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Number, Value as Json};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::scalar::{Cyclo, ScalarContext};
use crate::state::State;

fn big(n: &BigInt) -> Json {
    Json::Number(Number::from_str(&n.to_string()).expect("integer literal is valid JSON"))
}

pub fn cyclo_to_json(x: &Cyclo) -> Json {
    let coeffs: Vec<Json> = x
        .terms()
        .iter()
        .map(|(k, c)| Json::Array(vec![json!(k), big(c.numer()), big(c.denom())]))
        .collect();
    json!({ "M": x.modulus(), "coeffs": coeffs })
}

pub fn element_to_json(x: &Element) -> Json {
    let terms: Vec<Json> = x
        .terms()
        .iter()
        .map(|(m, c)| json!({ "exps": m.exps(), "scalar": cyclo_to_json(c) }))
        .collect();
    json!({ "N": x.dim(), "n": x.n(), "terms": terms })
}

pub fn state_to_json(s: &State) -> Json {
    let terms: Vec<Json> = s
        .coeffs()
        .iter()
        .map(|(a, c)| json!({ "a": a, "scalar": cyclo_to_json(c) }))
        .collect();
    json!({ "N": s.ctx().dim(), "n": s.n(), "terms": terms })
}

/// Compact serialization.
pub fn to_string(v: &Json) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn field<'a>(obj: &'a Map<String, Json>, key: &str) -> Result<&'a Json> {
    obj.get(key).ok_or_else(|| schema(format!("missing field '{key}'")))
}

fn as_object<'a>(v: &'a Json, what: &str) -> Result<&'a Map<String, Json>> {
    v.as_object().ok_or_else(|| schema(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Json, what: &str) -> Result<&'a Vec<Json>> {
    v.as_array().ok_or_else(|| schema(format!("{what} must be an array")))
}

fn as_bigint(v: &Json, what: &str) -> Result<BigInt> {
    match v {
        Json::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| schema(format!("{what} must be an integer"))),
        _ => Err(schema(format!("{what} must be an integer"))),
    }
}

fn as_u64(v: &Json, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| schema(format!("{what} must be a non-negative integer")))
}

fn as_i64_vec(v: &Json, what: &str) -> Result<Vec<i64>> {
    as_array(v, what)?
        .iter()
        .map(|e| e.as_i64().ok_or_else(|| schema(format!("{what} entries must be integers"))))
        .collect()
}

fn parse_cyclo(v: &Json, ctx: &Arc<ScalarContext>) -> Result<Cyclo> {
    let obj = as_object(v, "scalar")?;
    let m = as_u64(field(obj, "M")?, "M")?;
    if m != ctx.modulus() as u64 {
        return Err(Error::ModulusMismatch {
            expected: ctx.modulus() as u64,
            found: m,
        });
    }
    let mut raw = Vec::new();
    for entry in as_array(field(obj, "coeffs")?, "coeffs")? {
        let triple = as_array(entry, "coefficient entry")?;
        if triple.len() != 3 {
            return Err(schema("coefficient entries are [index, numerator, denominator]"));
        }
        let index = as_u64(&triple[0], "index")?;
        if index >= m {
            return Err(schema(format!("index {index} not below modulus {m}")));
        }
        let num = as_bigint(&triple[1], "numerator")?;
        let den = as_bigint(&triple[2], "denominator")?;
        if den.is_zero() || den.is_negative() {
            return Err(schema("denominator must be positive"));
        }
        raw.push((index as u32, BigRational::new(num, den)));
    }
    Ok(Cyclo::from_raw(ctx.field(), raw))
}

fn parse_text(text: &str) -> Result<Json> {
    Ok(serde_json::from_str(text)?)
}

/// Reads a scalar; its modulus must match the context.
pub fn cyclo_from_json(text: &str, ctx: &Arc<ScalarContext>) -> Result<Cyclo> {
    parse_cyclo(&parse_text(text)?, ctx)
}

fn header(obj: &Map<String, Json>) -> Result<(Arc<ScalarContext>, usize)> {
    let dim = as_u64(field(obj, "N")?, "N")?;
    let n = as_u64(field(obj, "n")?, "n")? as usize;
    let dim = u32::try_from(dim).map_err(|_| schema("N out of range"))?;
    if n == 0 {
        return Err(Error::InvalidQuditCount(0));
    }
    Ok((ScalarContext::new(dim)?, n))
}

fn parse_terms(
    obj: &Map<String, Json>,
    label: &str,
    ctx: &Arc<ScalarContext>,
) -> Result<Vec<(Vec<i64>, Cyclo)>> {
    as_array(field(obj, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let t = as_object(t, "term")?;
            Ok((as_i64_vec(field(t, label)?, label)?, parse_cyclo(field(t, "scalar")?, ctx)?))
        })
        .collect()
}

pub fn element_from_json(text: &str) -> Result<Element> {
    element_from_value(&parse_text(text)?)
}

fn element_from_value(v: &Json) -> Result<Element> {
    let obj = as_object(v, "element")?;
    let (ctx, n) = header(obj)?;
    let terms = parse_terms(obj, "exps", &ctx)?;
    Element::from_terms(&ctx, n, terms).map_err(|e| match e {
        Error::Precondition(m) => Error::Schema(m),
        other => other,
    })
}

pub fn state_from_json(text: &str) -> Result<State> {
    state_from_value(&parse_text(text)?)
}

fn state_from_value(v: &Json) -> Result<State> {
    let obj = as_object(v, "state")?;
    let (ctx, n) = header(obj)?;
    let terms = parse_terms(obj, "a", &ctx)?;
    State::from_terms(&ctx, n, terms).map_err(|e| match e {
        Error::Precondition(m) => Error::Schema(m),
        other => other,
    })
}

/// A deserialized value whose kind was detected from its shape.
#[derive(Clone, Debug)]
pub enum Decoded {
    Scalar(Cyclo),
    Element(Element),
    State(State),
}

/// Detects the kind of a serialized value: objects with "M" are scalars,
/// terms carrying "a" are states, everything else with "terms" is an element
/// (an empty term list therefore reads as the zero element).
pub fn decode(text: &str) -> Result<Decoded> {
    let v = parse_text(text)?;
    let obj = as_object(&v, "value")?;
    if obj.contains_key("M") {
        let m = as_u64(field(obj, "M")?, "M")?;
        // M = 16 N^2 determines N
        let dim = ((m / 16) as f64).sqrt().round() as u64;
        if dim < 2 || 16 * dim * dim != m {
            return Err(schema(format!("modulus {m} is not of the form 16 N^2")));
        }
        let dim = u32::try_from(dim).map_err(|_| schema("modulus out of range"))?;
        return Ok(Decoded::Scalar(parse_cyclo(&v, &ScalarContext::new(dim)?)?));
    }
    let is_state = as_array(field(obj, "terms")?, "terms")?
        .first()
        .and_then(Json::as_object)
        .is_some_and(|t| t.contains_key("a"));
    if is_state {
        Ok(Decoded::State(state_from_value(&v)?))
    } else {
        Ok(Decoded::Element(element_from_value(&v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::braid_element;

    #[test]
    fn identity_serializes_to_one_term() {
        let ctx = ScalarContext::new(3).unwrap();
        let text = to_string(&element_to_json(&Element::identity(&ctx, 2)));
        assert_eq!(
            text,
            r#"{"N":3,"n":2,"terms":[{"exps":[0,0,0,0],"scalar":{"M":144,"coeffs":[[0,1,1]]}}]}"#
        );
    }

    #[test]
    fn ground_state_serializes() {
        let ctx = ScalarContext::new(2).unwrap();
        let text = to_string(&state_to_json(&State::ground(&ctx, 2).unwrap()));
        assert_eq!(text, r#"{"N":2,"n":2,"terms":[{"a":[0,0],"scalar":{"M":64,"coeffs":[[0,1,1]]}}]}"#);
    }

    #[test]
    fn braid_round_trip_is_stable() {
        let ctx = ScalarContext::new(3).unwrap();
        let b = braid_element(&ctx, 2, 1, 2).unwrap();
        let text = to_string(&element_to_json(&b));
        let back = element_from_json(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(to_string(&element_to_json(&back)), text);
        assert!(matches!(decode(&text).unwrap(), Decoded::Element(x) if x == b));
    }

    #[test]
    fn scalar_round_trip_and_detection() {
        let ctx = ScalarContext::new(4).unwrap();
        let x = ctx.omega_sqrt() * &ctx.inv_sqrt_n();
        let text = to_string(&cyclo_to_json(&x));
        assert_eq!(cyclo_from_json(&text, &ctx).unwrap(), x);
        assert!(matches!(decode(&text).unwrap(), Decoded::Scalar(y) if y == x));
    }

    #[test]
    fn huge_integers_survive() {
        let ctx = ScalarContext::new(2).unwrap();
        let r = BigRational::new(BigInt::from(7).pow(60u32), BigInt::from(3).pow(45u32));
        let x = ctx.rational(r);
        let text = to_string(&cyclo_to_json(&x));
        assert_eq!(cyclo_from_json(&text, &ctx).unwrap(), x);
    }

    #[test]
    fn malformed_inputs() {
        let ctx = ScalarContext::new(3).unwrap();
        assert!(matches!(cyclo_from_json("{", &ctx), Err(Error::Json(_))));
        assert!(matches!(
            cyclo_from_json(r#"{"M":64,"coeffs":[]}"#, &ctx),
            Err(Error::ModulusMismatch { expected: 144, found: 64 })
        ));
        assert!(matches!(cyclo_from_json(r#"{"M":144,"coeffs":[[0,1,0]]}"#, &ctx), Err(Error::Schema(_))));
        assert!(matches!(cyclo_from_json(r#"{"M":144}"#, &ctx), Err(Error::Schema(_))));
        assert!(matches!(
            element_from_json(r#"{"N":3,"n":1,"terms":[{"exps":[1],"scalar":{"M":144,"coeffs":[]}}]}"#),
            Err(Error::Schema(_))
        ));
    }
}
