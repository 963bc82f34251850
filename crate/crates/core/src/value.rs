use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::algebra::{format_rational, Poly, Rational};
use crate::series::Series;

/// An exact value produced by a sequence or one side of an identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Rational(Rational),
    Poly(Poly),
    Series(Series<Rational>),
    /// Several values compared componentwise, e.g. an identity together with
    /// its specialization.
    List(Vec<Value>),
}

impl Value {
    /// Coefficient strings, lowest order first (one entry for a rational).
    pub fn coefficient_strings(&self) -> Vec<String> {
        match self {
            Value::Rational(r) => vec![format_rational(r)],
            Value::Poly(p) => p.coeffs().iter().map(format_rational).collect(),
            Value::Series(s) => s.coeffs().iter().map(format_rational).collect(),
            Value::List(items) => items.iter().map(|v| v.to_string()).collect(),
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl From<Poly> for Value {
    fn from(p: Poly) -> Self {
        Value::Poly(p)
    }
}

impl From<Series<Rational>> for Value {
    fn from(s: Series<Rational>) -> Self {
        Value::Series(s)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Series(s) => write!(f, "{s} + O(t^{})", s.order() + 1),
            Value::List(items) => {
                write!(f, "(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        match self {
            Value::Rational(r) => {
                map.serialize_entry("type", "rational")?;
                map.serialize_entry("value", &format_rational(r))?;
            }
            Value::Poly(_) => {
                map.serialize_entry("type", "poly")?;
                map.serialize_entry("coeffs", &self.coefficient_strings())?;
            }
            Value::Series(s) => {
                map.serialize_entry("type", "series")?;
                map.serialize_entry("order", &s.order())?;
                map.serialize_entry("coeffs", &self.coefficient_strings())?;
            }
            Value::List(items) => {
                map.serialize_entry("type", "list")?;
                map.serialize_entry("items", items)?;
            }
        }
        map.end()
    }
}
