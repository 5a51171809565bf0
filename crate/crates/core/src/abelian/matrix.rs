use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Sparse integer matrix; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, dense: &[Vec<i64>]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, row) in dense.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.set(i, j, BigInt::from(x));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    *acc.entry((i, j)).or_insert_with(BigInt::zero) += a * b;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        IntMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.rows
            && self.entries.iter().all(|(&(i, j), v)| i == j && v.is_one())
    }

    pub(crate) fn to_i64_dense(&self) -> Option<Vec<Vec<i64>>> {
        let mut d = vec![vec![0i64; self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.to_i64()?;
        }
        Some(d)
    }

    pub(crate) fn to_big_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(i, j), v)| match v.to_i64() {
                Some(x) => json!([i, j, x]),
                None => json!([i, j, v.to_string()]),
            })
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": entries })
    }

    pub fn from_json(value: &Value) -> Result<IntMatrix> {
        let field = |name: &str| {
            value
                .get(name)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Schema(format!("IntMatrix needs integer {name:?}")))
        };
        let mut m = IntMatrix::zeros(field("rows")?, field("cols")?);
        let entries = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("IntMatrix needs \"entries\"".into()))?;
        for e in entries {
            let triple =
                e.as_array().filter(|a| a.len() == 3).ok_or_else(|| Error::Schema("entry must be [i, j, v]".into()))?;
            let idx =
                |k: usize| triple[k].as_u64().map(|x| x as usize).ok_or_else(|| Error::Schema("bad index".into()));
            let (i, j) = (idx(0)?, idx(1)?);
            if i >= m.rows || j >= m.cols {
                return Err(Error::Schema(format!("entry ({i}, {j}) out of range")));
            }
            let v = match &triple[2] {
                Value::Number(n) => n.as_i64().map(BigInt::from),
                Value::String(s) => s.parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| Error::Schema("bad entry value".into()))?;
            m.set(i, j, v);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut m = IntMatrix::zeros(2, 3);
        m.set(0, 2, BigInt::from(-5));
        m.set(1, 0, "123456789012345678901234567890".parse().unwrap());
        let back = IntMatrix::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);
        assert!(IntMatrix::from_json(&json!({"rows": 1, "cols": 1, "entries": [[1, 0, 3]]})).is_err());
    }

    #[test]
    fn product() {
        let a = IntMatrix::from_i64(2, 2, &[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_i64(2, 1, &[vec![5], vec![6]]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64(2, 1, &[vec![17], vec![39]]));
        assert!(IntMatrix::identity(3).is_identity());
    }
}
