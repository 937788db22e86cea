//! Dense matrices over the rational function field and exact elimination.

pub mod reduction;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ratfunc::{RatFunc, Q};

pub use reduction::{
    linear_reduction, minimal_scalar_equation, reduce_with_zeros, LinearReduction, ScalarEquation,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<RatFunc>,
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatrixF,
    pub pivots: Vec<usize>,
}

impl MatrixF {
    pub fn new(rows: usize, cols: usize, nvars: usize, data: Vec<RatFunc>) -> MatrixF {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        MatrixF {
            rows,
            cols,
            nvars,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> MatrixF {
        MatrixF::new(rows, cols, nvars, vec![RatFunc::zero(nvars); rows * cols])
    }

    pub fn identity(n: usize, nvars: usize) -> MatrixF {
        let mut m = MatrixF::zeros(n, n, nvars);
        for i in 0..n {
            m[(i, i)] = RatFunc::one(nvars);
        }
        m
    }

    pub fn diagonal(d: &[RatFunc], nvars: usize) -> MatrixF {
        let mut m = MatrixF::zeros(d.len(), d.len(), nvars);
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>, nvars: usize) -> MatrixF {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        MatrixF::new(r, c, nvars, rows.into_iter().flatten().collect())
    }

    pub fn from_cols(cols: &[Vec<RatFunc>], rows: usize, nvars: usize) -> MatrixF {
        let mut m = MatrixF::zeros(rows, cols.len(), nvars);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[RatFunc], nvars: usize) -> MatrixF {
        MatrixF::new(v.len(), 1, nvars, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<RatFunc> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<RatFunc>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn map<F: FnMut(&RatFunc) -> RatFunc>(&self, f: F) -> MatrixF {
        MatrixF::new(self.rows, self.cols, self.nvars, self.data.iter().map(f).collect())
    }

    pub fn try_map<F: FnMut(&RatFunc) -> Result<RatFunc>>(&self, f: F) -> Result<MatrixF> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(MatrixF::new(self.rows, self.cols, self.nvars, data))
    }

    pub fn transpose(&self) -> MatrixF {
        let mut m = MatrixF::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, o: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut m = MatrixF::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] = &m[(i, j)] + &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RatFunc::zero(self.nvars);
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(self.rows, v.len(), "dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = RatFunc::zero(self.nvars);
                for (k, x) in v.iter().enumerate() {
                    let a = &self[(k, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(x * a);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        MatrixF::new(self.rows, self.cols, self.nvars, data)
    }

    pub fn sub(&self, o: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        MatrixF::new(self.rows, self.cols, self.nvars, data)
    }

    pub fn scale(&self, s: &RatFunc) -> MatrixF {
        self.map(|x| x * s)
    }

    pub fn scale_q(&self, s: &Q) -> MatrixF {
        self.map(|x| x.scale(s))
    }

    pub fn hstack(&self, o: &MatrixF) -> MatrixF {
        assert_eq!(self.rows, o.rows, "row count mismatch");
        let mut m = MatrixF::zeros(self.rows, self.cols + o.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..o.cols {
                m[(i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, o: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, o.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        MatrixF::new(self.rows + o.rows, self.cols, self.nvars, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> MatrixF {
        let cols: Vec<Vec<RatFunc>> = idx.iter().map(|&j| self.col(j)).collect();
        MatrixF::from_cols(&cols, self.rows, self.nvars)
    }

    pub fn select_rows(&self, idx: &[usize]) -> MatrixF {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend(self.row(i));
        }
        MatrixF::new(idx.len(), self.cols, self.nvars, data)
    }

    fn to_rows(&self) -> Vec<Vec<RatFunc>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Reduced row echelon form; the pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for x in m[r].iter_mut().skip(c) {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (j, x) in row.iter_mut().enumerate().skip(c) {
                    if !pivot_row[j].is_zero() {
                        *x = &*x - &(&f * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: MatrixF::from_rows_sized(m, self.rows, self.cols, self.nvars),
            pivots,
        }
    }

    fn from_rows_sized(rows: Vec<Vec<RatFunc>>, r: usize, c: usize, nvars: usize) -> MatrixF {
        MatrixF::new(r, c, nvars, rows.into_iter().flatten().collect())
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel in reduced echelon normal form: one vector
    /// per free column, with a one there and zeros at the other free
    /// columns.
    pub fn nullspace(&self) -> Vec<Vec<RatFunc>> {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RatFunc::zero(self.nvars); self.cols];
                v[f] = RatFunc::one(self.nvars);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&matrix[(i, f)];
                }
                v
            })
            .collect()
    }

    /// Kernel basis as the columns of a matrix.
    pub fn nullspace_matrix(&self) -> MatrixF {
        MatrixF::from_cols(&self.nullspace(), self.cols, self.nvars)
    }

    /// Some `X` with `self * X = b`.
    pub fn solve(&self, b: &MatrixF) -> Option<MatrixF> {
        assert_eq!(self.rows, b.rows, "dimension mismatch");
        let aug = self.hstack(b);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = MatrixF::zeros(self.cols, b.cols, self.nvars);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = matrix[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<MatrixF> {
        if !self.is_square() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let aug = self.hstack(&MatrixF::identity(n, self.nvars));
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Ok(matrix.select_cols(&idx))
    }

    pub fn det(&self) -> RatFunc {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.to_rows();
        let n = self.rows;
        let mut det = RatFunc::one(self.nvars);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return RatFunc::zero(self.nvars);
            };
            if p != c {
                m.swap(p, c);
                det = -&det;
            }
            det = &det * &m[c][c];
            let inv = m[c][c].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = &m[i][c] * &inv;
                for j in c..n {
                    let t = &f * &m[c][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        det
    }

    /// Indices of a maximal set of independent columns (the pivot columns).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Coefficients `c_0..c_n` (with `c_n = 1`) of `det(x I - self)` by
    /// the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<RatFunc> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let nv = self.nvars;
        let mut coeffs = vec![RatFunc::zero(nv); n + 1];
        coeffs[n] = RatFunc::one(nv);
        let mut m = MatrixF::zeros(n, n, nv);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] = &next[(i, i)] + &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            let mut tr = RatFunc::zero(nv);
            for i in 0..n {
                tr = &tr + &am[(i, i)];
            }
            coeffs[n - k] = tr.scale(&Q::new((-1).into(), (k as i64).into()));
        }
        coeffs
    }

    /// Render with variable names, one row per line.
    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string_with(names)).collect();
            out.push('[');
            out.push_str(&cells.join(", "));
            out.push_str("]\n");
        }
        out
    }
}

impl Index<(usize, usize)> for MatrixF {
    type Output = RatFunc;
    fn index(&self, (i, j): (usize, usize)) -> &RatFunc {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatrixF {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut RatFunc {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_string_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::Vars;

    fn vars() -> Vars {
        Vars::new(&["x", "y"]).unwrap()
    }

    fn mat(v: &Vars, rows: &[&[&str]]) -> MatrixF {
        MatrixF::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| v.parse(s).unwrap()).collect())
                .collect(),
            v.len(),
        )
    }

    #[test]
    fn nullspace_example() {
        let v = vars();
        let m = mat(&v, &[&["1", "1"], &["2", "2"]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![RatFunc::int(2, -1), RatFunc::int(2, 1)]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let v = vars();
        let i = MatrixF::identity(3, 2);
        assert_eq!(i.inverse().unwrap(), i);
        let m = mat(&v, &[&["x", "1"], &["y", "x+y"]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let b = mat(&v, &[&["1"], &["x"]]);
        let sol = m.solve(&b).unwrap();
        assert_eq!(m.mul(&sol), b);
        let s = mat(&v, &[&["x", "y"], &["2*x", "2*y"]]);
        assert!(matches!(s.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn det_and_charpoly() {
        let v = vars();
        let m = mat(&v, &[&["x", "1"], &["y", "x+y"]]);
        let det = m.det();
        assert_eq!(det, v.parse("x*(x+y) - y").unwrap());
        let cp = m.charpoly();
        assert_eq!(cp[0], det);
        assert_eq!(cp[1], v.parse("-(2*x+y)").unwrap());
    }
}
