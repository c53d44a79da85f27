use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MatZ {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl MatZ {
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged integer matrix rows".into()));
        }
        Ok(MatZ {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
        .expect("ragged literal matrix")
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        MatZ {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * prev })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        self.row(i)
                            .iter()
                            .map(|x| match i64::try_from(x) {
                                Ok(v) => serde_json::Value::from(v),
                                Err(_) => serde_json::Value::String(x.to_string()),
                            })
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn sub_scaled(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// The result is square (`cols × cols`), upper triangular with positive
/// diagonal, and every entry above a pivot lies in `[0, pivot)`. The rows of
/// `m` must span a full-rank lattice in `ℤ^cols`.
pub fn hnf(m: &MatZ) -> Result<MatZ> {
    let k = m.cols;
    let mut rows = m.row_vecs();
    if rows.len() < k {
        return Err(Error::RankDeficient);
    }
    for col in 0..k {
        loop {
            let pivot = (col..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else {
                return Err(Error::RankDeficient);
            };
            rows.swap(col, p);
            let (head, tail) = rows.split_at_mut(col + 1);
            let prow = &head[col];
            let mut clean = true;
            for r in tail.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&prow[col]);
                sub_scaled(r, &q, prow);
                if !r[col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[col][col].is_negative() {
            for x in rows[col].iter_mut() {
                *x = -&*x;
            }
        }
        let (head, tail) = rows.split_at_mut(col);
        let prow = &tail[0];
        for r in head.iter_mut() {
            let q = r[col].div_floor(&prow[col]);
            if !q.is_zero() {
                sub_scaled(r, &q, prow);
            }
        }
    }
    rows.truncate(k);
    MatZ::from_rows(rows, k)
}

/// Smith decomposition of a nonsingular square integer matrix `B`.
///
/// `invariants` are the diagonal `d_1 | d_2 | … | d_k` of `U·B·V`, and
/// `col_transform_inv` is `V⁻¹`. Row `i` of `V⁻¹` maps to the generator of
/// the `i`-th cyclic factor of `ℤ^k / (row lattice of B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub invariants: Vec<BigInt>,
    pub col_transform_inv: MatZ,
}

pub fn smith(m: &MatZ) -> Result<Smith> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let k = m.rows;
    let mut a = m.row_vecs();
    let mut vinv = MatZ::identity(k).row_vecs();
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::Singular);
            };
            a.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..k {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                sub_scaled(&mut tail[0], &q, &head[t]);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..k {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                // column op col_j -= q·col_t has inverse row op row_t += q·row_j on V⁻¹
                let rj = vinv[j].clone();
                for (x, y) in vinv[t].iter_mut().zip(&rj) {
                    *x += &q * y;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..k).find(|&i| (t + 1..k).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let ri = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&ri) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    Ok(Smith {
        invariants: (0..k).map(|i| a[i][i].clone()).collect(),
        col_transform_inv: MatZ::from_rows(vinv, k)?,
    })
}

/// Invariant factors `d_1 | … | d_k` of a nonsingular square matrix.
pub fn snf_invariants(m: &MatZ) -> Result<Vec<BigInt>> {
    Ok(smith(m)?.invariants)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_examples() {
        let a = MatZ::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(hnf(&a).unwrap(), a);
        assert_eq!(
            hnf(&MatZ::from_i64(&[&[0, 1], &[1, 0]])).unwrap(),
            MatZ::identity(2)
        );
        assert_eq!(
            hnf(&MatZ::from_i64(&[&[2, 0], &[1, 3]])).unwrap(),
            MatZ::from_i64(&[&[1, 3], &[0, 6]])
        );
    }

    #[test]
    fn hnf_rank_deficient() {
        assert_eq!(
            hnf(&MatZ::from_i64(&[&[1, 2], &[2, 4]])),
            Err(Error::RankDeficient)
        );
        assert_eq!(hnf(&MatZ::from_i64(&[&[1, 2]])), Err(Error::RankDeficient));
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            snf_invariants(&MatZ::from_i64(&[&[2, 0], &[0, 4]])).unwrap(),
            ints(&[2, 4])
        );
        assert_eq!(
            snf_invariants(&MatZ::from_i64(&[&[1, 0], &[0, 6]])).unwrap(),
            ints(&[1, 6])
        );
        assert_eq!(
            snf_invariants(&MatZ::from_i64(&[&[2, 2], &[0, 4]])).unwrap(),
            ints(&[2, 4])
        );
        assert_eq!(
            snf_invariants(&MatZ::from_i64(&[&[2, 0], &[0, 3]])).unwrap(),
            ints(&[1, 6])
        );
    }

    #[test]
    fn snf_singular() {
        assert_eq!(
            snf_invariants(&MatZ::from_i64(&[&[1, 2], &[2, 4]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn det_bareiss() {
        assert_eq!(
            MatZ::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]])
                .det()
                .unwrap(),
            BigInt::from(18)
        );
        assert_eq!(
            MatZ::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(),
            BigInt::from(-1)
        );
    }
}
