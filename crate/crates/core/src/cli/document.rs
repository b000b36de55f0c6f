//! Polygon documents: the JSON input format of every subcommand.
//!
//! ```json
//! { "schema": "midpoly.polygon/1", "vertices": [["0", "0"], ["22/7", "-5/3"]] }
//! ```
//!
//! Coordinates are strings so that fractions survive untouched. Exact mode
//! accepts integers and fractions; float mode additionally accepts decimals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::exact_poly::{PlanePoint, Polygon};
use crate::rational::Rational;
use crate::spectral::FloatPolygon;

pub const POLYGON_SCHEMA: &str = "midpoly.polygon/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub vertices: Vec<[String; 2]>,
}

impl PolygonDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| ParseError::Document(e.to_string()))?;
        if let Some(schema) = &doc.schema {
            if schema != POLYGON_SCHEMA {
                return Err(ParseError::Document(format!("unsupported schema {schema:?}")));
            }
        }
        if doc.vertices.is_empty() {
            return Err(ParseError::EmptyPolygon);
        }
        Ok(doc)
    }

    pub fn from_polygon(p: &Polygon) -> Self {
        Self {
            schema: Some(POLYGON_SCHEMA.to_string()),
            vertices: p.vertices().iter().map(|v| [v.x.to_string(), v.y.to_string()]).collect(),
        }
    }

    pub fn to_exact(&self) -> Result<Polygon, ParseError> {
        let vertices = self
            .vertices
            .iter()
            .map(|[x, y]| Ok(PlanePoint::new(x.parse::<Rational>()?, y.parse::<Rational>()?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        Polygon::new(vertices).map_err(|_| ParseError::EmptyPolygon)
    }

    pub fn to_float(&self) -> Result<FloatPolygon, ParseError> {
        let vertices = self
            .vertices
            .iter()
            .map(|[x, y]| Ok(Complex64::new(parse_float(x)?, parse_float(y)?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        FloatPolygon::new(vertices).ok_or(ParseError::EmptyPolygon)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// Integer, fraction or finite decimal, always with `.` as the decimal point.
pub fn parse_float(s: &str) -> Result<f64, ParseError> {
    match s.parse::<Rational>() {
        Ok(r) => Ok(r.to_f64()),
        Err(ParseError::DecimalInExactMode(_)) => {
            let t = s.trim();
            let plain = t.bytes().all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
            match t.parse::<f64>() {
                Ok(v) if plain && v.is_finite() => Ok(v),
                _ => Err(ParseError::BadNumber(s.to_string())),
            }
        }
        Err(e) => Err(e),
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}
