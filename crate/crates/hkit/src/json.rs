//! Wire formats. Integers are JSON numbers when they fit in 64 bits and
//! decimal strings otherwise; rationals are `{"num": "…", "den": "…"}`.

use std::str::FromStr;

use hkit_core::characterization::DivisorData;
use hkit_core::{Int, IntMatrix, LatticeVector, Rat};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("invalid integer {0:?}")]
    BadInteger(String),
    #[error("invalid rational: {0}")]
    BadRational(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// An integer given as a JSON number or a decimal string.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntJson {
    Small(i64),
    Text(String),
}

impl IntJson {
    pub fn to_int(&self) -> Result<Int, SchemaError> {
        match self {
            IntJson::Small(x) => Ok(Int::from(*x)),
            IntJson::Text(s) => Int::from_str(s.trim()).map_err(|_| SchemaError::BadInteger(s.clone())),
        }
    }
}

pub fn int_value(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<IntJson>>,
    /// Column count; only needed when `rows` is empty.
    #[serde(default)]
    pub cols: Option<usize>,
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<IntMatrix, SchemaError> {
        let cols = match (self.rows.first(), self.cols) {
            (Some(r), _) => r.len(),
            (None, Some(c)) => c,
            (None, None) => return Err(SchemaError::Shape("empty matrix needs \"cols\"".into())),
        };
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(IntJson::to_int).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_rows(cols, rows).map_err(|e| SchemaError::Shape(e.to_string()))
    }
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = m.iter_rows().map(|r| Value::Array(r.iter().map(int_value).collect())).collect();
    json!({ "rows": rows, "cols": m.cols() })
}

pub fn vector_value(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int_value).collect())
}

/// A rational given as an integer, a string `"p/q"`, or `{"num", "den"}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RatJson {
    Int(IntJson),
    Frac { num: IntJson, den: IntJson },
}

impl RatJson {
    pub fn to_rat(&self) -> Result<Rat, SchemaError> {
        match self {
            RatJson::Int(IntJson::Text(s)) => parse_rat(s),
            RatJson::Int(x) => Ok(Rat::from_integer(x.to_int()?)),
            RatJson::Frac { num, den } => {
                let den = den.to_int()?;
                if den.is_zero() {
                    return Err(SchemaError::BadRational("zero denominator".into()));
                }
                Ok(Rat::new(num.to_int()?, den))
            }
        }
    }
}

/// `"3"`, `"-1/2"`.
pub fn parse_rat(s: &str) -> Result<Rat, SchemaError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num = Int::from_str(num).map_err(|_| SchemaError::BadRational(s.into()))?;
    let den = Int::from_str(den).map_err(|_| SchemaError::BadRational(s.into()))?;
    if den.is_zero() {
        return Err(SchemaError::BadRational(s.into()));
    }
    Ok(Rat::new(num, den))
}

pub fn rat_value(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

#[derive(Clone, Debug, Deserialize)]
pub struct WallJson {
    pub normal: Vec<IntJson>,
    pub mult: u32,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DivisorJson {
    pub n: usize,
    pub walls: Vec<WallJson>,
}

impl DivisorJson {
    pub fn to_divisor(&self) -> Result<Result<DivisorData, hkit_core::Error>, SchemaError> {
        let entries = self
            .walls
            .iter()
            .map(|w| {
                let coords = w.normal.iter().map(IntJson::to_int).collect::<Result<Vec<_>, _>>()?;
                Ok((LatticeVector::new(coords), w.mult))
            })
            .collect::<Result<Vec<_>, SchemaError>>()?;
        Ok(DivisorData::new(self.n, entries))
    }
}

pub fn divisor_value(d: &DivisorData) -> Value {
    let walls: Vec<Value> = d.entries().iter().map(|(v, m)| json!({ "normal": vector_value(v), "mult": m })).collect();
    json!({ "n": d.n(), "walls": walls })
}

/// Input of `local-model`: a single multiplicity and torus rank.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalModelJson {
    pub m: u32,
    pub n: usize,
}

/// Input of `deform`: the matrix `B` and optional seed offsets.
#[derive(Clone, Debug, Deserialize)]
pub struct DeformJson {
    #[serde(flatten)]
    pub matrix: MatrixJson,
    #[serde(default)]
    pub offsets: Option<Vec<RatJson>>,
}
