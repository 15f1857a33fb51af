//! Matrix text format: `{"rows": R, "cols": C, "data": [[…], …]}`.
//! Entries are JSON integers when they fit in 64 bits and decimal strings
//! otherwise; both spellings are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::matrix::ZMatrix;
use crate::error::{Error, Result};

pub(crate) fn int_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub(crate) fn value_to_int(v: &Value) -> std::result::Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("not an integer: {n}")),
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad integer {s:?}: {e}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Value>>,
}

impl Serialize for ZMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixDoc {
            rows: self.rows(),
            cols: self.cols(),
            data: (0..self.rows())
                .map(|i| self.row(i).iter().map(int_to_value).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(d)?;
        matrix_from_doc(doc).map_err(serde::de::Error::custom)
    }
}

fn matrix_from_doc(doc: MatrixDoc) -> Result<ZMatrix> {
    if doc.data.len() != doc.rows {
        return Err(Error::Parse(format!(
            "declared {} rows, found {}",
            doc.rows,
            doc.data.len()
        )));
    }
    let mut entries = Vec::with_capacity(doc.rows * doc.cols);
    for (i, row) in doc.data.iter().enumerate() {
        if row.len() != doc.cols {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, declared {} columns",
                row.len(),
                doc.cols
            )));
        }
        for v in row {
            entries.push(value_to_int(v).map_err(Error::Parse)?);
        }
    }
    ZMatrix::from_vec(doc.rows, doc.cols, entries)
}

pub fn matrix_from_json(text: &str) -> Result<ZMatrix> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn matrix_to_json(m: &ZMatrix) -> String {
    serde_json::to_string(m).expect("matrix serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_spellings() {
        let m = matrix_from_json(
            r#"{"rows":2,"cols":2,"data":[[1,"-2"],["123456789012345678901234567890",0]]}"#,
        )
        .unwrap();
        assert_eq!(m[(0, 1)], BigInt::from(-2));
        assert_eq!(m[(1, 0)].to_string(), "123456789012345678901234567890");
        let text = matrix_to_json(&m);
        assert_eq!(
            text,
            r#"{"rows":2,"cols":2,"data":[[1,-2],["123456789012345678901234567890",0]]}"#
        );
        assert_eq!(matrix_from_json(&text).unwrap(), m);
    }

    #[test]
    fn rejects_shape_mismatch() {
        assert!(matrix_from_json(r#"{"rows":2,"cols":2,"data":[[1,2]]}"#).is_err());
        assert!(matrix_from_json(r#"{"rows":1,"cols":2,"data":[[1]]}"#).is_err());
        assert!(matrix_from_json(r#"{"rows":1,"cols":1,"data":[[1.5]]}"#).is_err());
    }
}
