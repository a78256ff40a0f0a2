//! Exact integer matrices and Smith normal form.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LabError::Dimension {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntegerMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(LabError::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = acc
                        .checked_add(self.get(i, k) as i128 * other.get(k, j) as i128)
                        .ok_or(LabError::Overflow("matrix product"))?;
                }
                out.set(
                    i,
                    j,
                    i64::try_from(acc).map_err(|_| LabError::Overflow("matrix product"))?,
                );
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(LabError::Dimension {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        let ovf = || LabError::Overflow("determinant");
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .ok_or_else(ovf)?;
                    a[i][j] = t / prev;
                }
            }
            prev = a[k][k];
        }
        i64::try_from(sign * a[n - 1][n - 1]).map_err(|_| ovf())
    }
}

impl From<IntegerMatrix> for Vec<Vec<i64>> {
    fn from(m: IntegerMatrix) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntegerMatrix {
    type Error = LabError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntegerMatrix::from_rows(&rows)
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal in divisor-chain
/// form. The inverses of `U` and `V` are kept because quotient and subgroup
/// coordinates need them.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }
}

type Dense = Vec<Vec<i128>>;

fn dense(m: &IntegerMatrix) -> Dense {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| x as i128).collect())
        .collect()
}

fn eye(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn back(m: &Dense, cols: usize) -> Result<IntegerMatrix> {
    let mut out = IntegerMatrix::zeros(m.len(), cols);
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out.set(
                i,
                j,
                i64::try_from(x).map_err(|_| LabError::Overflow("smith normal form"))?,
            );
        }
    }
    Ok(out)
}

const OVF: LabError = LabError::Overflow("smith normal form");

/// `row[dst] += q * row[src]`
fn row_axpy(m: &mut Dense, dst: usize, src: usize, q: i128) -> Result<()> {
    for j in 0..m[dst].len() {
        let add = m[src][j].checked_mul(q).ok_or(OVF)?;
        m[dst][j] = m[dst][j].checked_add(add).ok_or(OVF)?;
    }
    Ok(())
}

/// `col[dst] += q * col[src]`
fn col_axpy(m: &mut Dense, dst: usize, src: usize, q: i128) -> Result<()> {
    for row in m.iter_mut() {
        let add = row[src].checked_mul(q).ok_or(OVF)?;
        row[dst] = row[dst].checked_add(add).ok_or(OVF)?;
    }
    Ok(())
}

fn col_swap(m: &mut Dense, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

struct Tracker {
    a: Dense,
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

impl Tracker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            col_swap(&mut self.u_inv, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            col_swap(&mut self.a, i, j);
            col_swap(&mut self.v, i, j);
            self.v_inv.swap(i, j);
        }
    }

    /// row i += q * row t
    fn add_row(&mut self, i: usize, t: usize, q: i128) -> Result<()> {
        row_axpy(&mut self.a, i, t, q)?;
        row_axpy(&mut self.u, i, t, q)?;
        col_axpy(&mut self.u_inv, t, i, -q)
    }

    /// col j += q * col t
    fn add_col(&mut self, j: usize, t: usize, q: i128) -> Result<()> {
        col_axpy(&mut self.a, j, t, q)?;
        col_axpy(&mut self.v, j, t, q)?;
        row_axpy(&mut self.v_inv, t, j, -q)
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -*x;
        }
        for x in self.u[t].iter_mut() {
            *x = -*x;
        }
        for row in self.u_inv.iter_mut() {
            row[t] = -row[t];
        }
    }
}

/// Smith normal form with transformation matrices, using checked 128-bit
/// intermediate arithmetic. Overflow is reported, never wrapped.
pub fn smith_normal_form(a: &IntegerMatrix) -> Result<SmithForm> {
    let (m, n) = (a.rows(), a.cols());
    let mut t = Tracker {
        a: dense(a),
        u: eye(m),
        u_inv: eye(m),
        v: eye(n),
        v_inv: eye(n),
    };
    for p in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in p..m {
                for j in p..n {
                    let x = t.a[i][j];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < t.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            t.swap_rows(p, bi);
            t.swap_cols(p, bj);
            let piv = t.a[p][p];
            let mut clean = true;
            for i in p + 1..m {
                let q = t.a[i][p] / piv;
                if q != 0 {
                    t.add_row(i, p, -q)?;
                }
                clean &= t.a[i][p] == 0;
            }
            for j in p + 1..n {
                let q = t.a[p][j] / piv;
                if q != 0 {
                    t.add_col(j, p, -q)?;
                }
                clean &= t.a[p][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (p + 1..m).find(|&i| (p + 1..n).any(|j| t.a[i][j] % piv != 0));
            match bad {
                Some(i) => t.add_row(p, i, 1)?,
                None => break,
            }
        }
        if t.a[p][p] < 0 {
            t.negate_row(p);
        }
    }
    Ok(SmithForm {
        u: back(&t.u, m)?,
        d: back(&t.a, n)?,
        v: back(&t.v, n)?,
        u_inv: back(&t.u_inv, m)?,
        v_inv: back(&t.v_inv, n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntegerMatrix) {
        let s = smith_normal_form(a).unwrap();
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.u.determinant().unwrap().abs(), 1);
        assert_eq!(s.v.determinant().unwrap().abs(), 1);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntegerMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntegerMatrix::identity(a.cols()));
        let d = s.diagonal();
        for w in d.windows(2) {
            assert!(w[0] >= 0);
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0);
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let s = smith_normal_form(&IntegerMatrix::identity(2)).unwrap();
        assert_eq!(s.diagonal(), vec![1, 1]);
    }

    #[test]
    fn single_entry() {
        let s = smith_normal_form(&IntegerMatrix::from_rows(&[vec![6]]).unwrap()).unwrap();
        assert_eq!(s.diagonal(), vec![6]);
    }

    #[test]
    fn rank_one() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![4, 8]]).unwrap();
        check(&a);
        assert_eq!(smith_normal_form(&a).unwrap().diagonal(), vec![2, 0]);
    }

    #[test]
    fn divisor_chain_repair() {
        let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        check(&a);
        assert_eq!(smith_normal_form(&a).unwrap().diagonal(), vec![1, 6]);
    }

    #[test]
    fn rectangular_and_empty() {
        check(&IntegerMatrix::from_rows(&[vec![4, 6, 10]]).unwrap());
        check(&IntegerMatrix::from_rows(&[vec![4], vec![6], vec![9]]).unwrap());
        check(&IntegerMatrix::zeros(0, 3));
        check(&IntegerMatrix::zeros(2, 2));
    }

    #[test]
    fn determinant_small() {
        let a = IntegerMatrix::from_rows(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]).unwrap();
        assert_eq!(a.determinant().unwrap(), 18);
    }
}
