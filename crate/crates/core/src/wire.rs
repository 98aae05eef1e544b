//! JSON encodings shared by every module: complex numbers as `[re, im]`,
//! matrices as row-major nested arrays of pairs, tuples as
//! `{"d": …, "n": …, "matrices": […]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{c64, CMat, CVec, MatrixTuple, C64};

pub type WireComplex = [f64; 2];
pub type WireMatrix = Vec<Vec<WireComplex>>;
pub type WireVector = Vec<WireComplex>;

pub fn complex_to_wire(z: C64) -> WireComplex {
    [z.re, z.im]
}

pub fn complex_from_wire(z: WireComplex, path: &str) -> Result<C64> {
    if !z[0].is_finite() || !z[1].is_finite() {
        return Err(Error::schema(path, "non-finite complex entry"));
    }
    Ok(c64(z[0], z[1]))
}

pub fn matrix_to_wire(m: &CMat) -> WireMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_to_wire(m[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_wire(rows: &WireMatrix, path: &str) -> Result<CMat> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    let mut m = CMat::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::schema(
                format!("{path}[{i}]"),
                format!("row has {} entries, expected {c}", row.len()),
            ));
        }
        for (j, &z) in row.iter().enumerate() {
            m[(i, j)] = complex_from_wire(z, &format!("{path}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

pub fn vector_to_wire(v: &CVec) -> WireVector {
    v.iter().map(|&z| complex_to_wire(z)).collect()
}

pub fn vector_from_wire(v: &WireVector, path: &str) -> Result<CVec> {
    let entries = v
        .iter()
        .enumerate()
        .map(|(i, &z)| complex_from_wire(z, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(CVec::from_vec(entries))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleWire {
    pub d: usize,
    pub n: usize,
    pub matrices: Vec<WireMatrix>,
}

impl From<&MatrixTuple> for TupleWire {
    fn from(x: &MatrixTuple) -> Self {
        TupleWire {
            d: x.d(),
            n: x.n(),
            matrices: x.iter().map(matrix_to_wire).collect(),
        }
    }
}

impl TupleWire {
    pub fn into_tuple(self) -> Result<MatrixTuple> {
        if self.matrices.len() != self.d {
            return Err(Error::schema(
                "$.matrices",
                format!("{} matrices listed but d = {}", self.matrices.len(), self.d),
            ));
        }
        let mut mats = Vec::with_capacity(self.d);
        for (i, m) in self.matrices.iter().enumerate() {
            let path = format!("$.matrices[{i}]");
            let m = matrix_from_wire(m, &path)?;
            if m.nrows() != self.n || m.ncols() != self.n {
                return Err(Error::schema(
                    path,
                    format!("matrix is {}x{}, expected n = {}", m.nrows(), m.ncols(), self.n),
                ));
            }
            mats.push(m);
        }
        MatrixTuple::new(mats)
    }
}

pub fn tuple_to_json(x: &MatrixTuple) -> serde_json::Value {
    serde_json::to_value(TupleWire::from(x)).expect("tuple serializes")
}

pub fn tuple_from_json(s: &str) -> Result<MatrixTuple> {
    let wire: TupleWire = serde_json::from_str(s).map_err(|e| Error::schema("$", e.to_string()))?;
    wire.into_tuple()
}
