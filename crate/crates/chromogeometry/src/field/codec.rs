//! Text and JSON forms for fields and their elements.
//!
//! Field descriptors serialize as tagged JSON objects:
//!
//! ```json
//! {"kind": "rational"}
//! {"kind": "prime", "p": 10007}
//! {"kind": "quadratic", "base": {"kind": "rational"}, "d": "6"}
//! ```
//!
//! Elements serialize as strings for rationals (`"3"`, `"-5/2"`) and prime
//! residues (`"42"`), and as `{"a": …, "b": …}` records for tower elements,
//! nesting as deep as the tower does. Parsing requires the target field as
//! context; every value a report prints parses back to the same element.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value as Json};

use super::{Field, FieldElement, FieldError, Value};

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            super::FieldRepr::Rational => write!(f, "rational"),
            super::FieldRepr::Prime { p } => write!(f, "fp:{p}"),
            super::FieldRepr::Quadratic { base, d } => write!(f, "{base}(\u{221a}{d})"),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Prime(r) => write!(f, "{r}"),
            Value::Quadratic(x) => write!(f, "{{{}, {}}}", x[0], x[1]),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

/// Parse a rational from `"n"` or `"n/m"` form.
pub fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::Parse(format!("not a rational: {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(FieldError::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(n, d))
}

impl Field {
    /// Parse an element of this field from its JSON form. Strings hold
    /// rationals and prime residues; `{a, b}` records hold tower
    /// coefficients. As a convenience, a bare string or number parses into
    /// a tower as the embedding of a ground-field value.
    pub fn parse_element(&self, json: &Json) -> Result<FieldElement, FieldError> {
        match (&*self.0, json) {
            (super::FieldRepr::Rational, Json::String(s)) => {
                Ok(self.element_from_value(Value::Rational(parse_rational(s)?)))
            }
            (super::FieldRepr::Rational, Json::Number(n)) => {
                let v = n
                    .as_i64()
                    .ok_or_else(|| FieldError::Parse(format!("not an exact integer: {n}")))?;
                Ok(self.from_i64(v))
            }
            (super::FieldRepr::Prime { p }, Json::String(s)) => {
                let r: i64 = s
                    .trim()
                    .parse()
                    .map_err(|_| FieldError::Parse(format!("not a residue: {s:?}")))?;
                Ok(self.from_i64(r.rem_euclid(*p as i64)))
            }
            (super::FieldRepr::Prime { .. }, Json::Number(n)) => {
                let v = n
                    .as_i64()
                    .ok_or_else(|| FieldError::Parse(format!("not an exact integer: {n}")))?;
                Ok(self.from_i64(v))
            }
            (super::FieldRepr::Quadratic { base, .. }, Json::Object(map)) => {
                let field_of = |key: &str| -> Result<FieldElement, FieldError> {
                    let v = map
                        .get(key)
                        .ok_or_else(|| FieldError::Parse(format!("missing key {key:?}")))?;
                    base.parse_element(v)
                };
                if map.len() != 2 {
                    return Err(FieldError::Parse(format!(
                        "tower element needs exactly keys \"a\" and \"b\", got {}",
                        Json::Object(map.clone())
                    )));
                }
                let a = field_of("a")?;
                let b = field_of("b")?;
                Ok(self.element_from_value(Value::Quadratic(Box::new([a, b]))))
            }
            (super::FieldRepr::Quadratic { .. }, Json::String(_) | Json::Number(_)) => {
                let ground = self.ground().parse_element(json)?;
                self.embed(&ground)
            }
            _ => Err(FieldError::Parse(format!(
                "cannot read {json} as an element of {self}"
            ))),
        }
    }

    /// Parse an element from plain text (the string form of
    /// [`Field::parse_element`]).
    pub fn parse_element_str(&self, text: &str) -> Result<FieldElement, FieldError> {
        self.parse_element(&Json::String(text.to_owned()))
    }

    /// The JSON descriptor of this field.
    pub fn to_json(&self) -> Json {
        match &*self.0 {
            super::FieldRepr::Rational => json!({"kind": "rational"}),
            super::FieldRepr::Prime { p } => json!({"kind": "prime", "p": p}),
            super::FieldRepr::Quadratic { base, d } => json!({
                "kind": "quadratic",
                "base": base.to_json(),
                "d": d.to_json(),
            }),
        }
    }

    /// Rebuild a field from its JSON descriptor.
    pub fn from_json(json: &Json) -> Result<Field, FieldError> {
        let obj = json
            .as_object()
            .ok_or_else(|| FieldError::Parse(format!("descriptor must be an object: {json}")))?;
        let kind = obj
            .get("kind")
            .and_then(Json::as_str)
            .ok_or_else(|| FieldError::Parse("descriptor missing \"kind\"".into()))?;
        match kind {
            "rational" => Ok(Field::rational()),
            "prime" => {
                let p = obj
                    .get("p")
                    .and_then(Json::as_u64)
                    .ok_or_else(|| FieldError::Parse("prime descriptor missing \"p\"".into()))?;
                Field::prime(p)
            }
            "quadratic" => {
                let base = Field::from_json(
                    obj.get("base")
                        .ok_or_else(|| FieldError::Parse("quadratic descriptor missing \"base\"".into()))?,
                )?;
                let d = base.parse_element(
                    obj.get("d")
                        .ok_or_else(|| FieldError::Parse("quadratic descriptor missing \"d\"".into()))?,
                )?;
                Field::quadratic(&base, d)
            }
            other => Err(FieldError::Parse(format!("unknown field kind {other:?}"))),
        }
    }
}

impl FieldElement {
    /// The JSON form of this element; see the module docs for the shapes.
    pub fn to_json(&self) -> Json {
        match &self.value {
            Value::Rational(_) | Value::Prime(_) => Json::String(self.to_string()),
            Value::Quadratic(x) => {
                let mut map = Map::new();
                map.insert("a".into(), x[0].to_json());
                map.insert("b".into(), x[1].to_json());
                Json::Object(map)
            }
        }
    }

    /// Approximate numeric value under the real embedding, for display and
    /// rendering only; the mathematical core never calls this. `None` for
    /// prime fields and for towers with a negative radicand.
    #[allow(clippy::float_arithmetic)]
    pub fn to_f64_lossy(&self) -> Option<f64> {
        match &self.value {
            Value::Rational(r) => r.to_f64(),
            Value::Prime(_) => None,
            Value::Quadratic(x) => {
                let d = self.field.radicand().expect("quadratic field");
                let dv = d.to_f64_lossy()?;
                if dv < 0.0 {
                    return None;
                }
                Some(x[0].to_f64_lossy()? + x[1].to_f64_lossy()? * dv.sqrt())
            }
        }
    }
}
