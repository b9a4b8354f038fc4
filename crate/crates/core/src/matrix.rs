//! Dense matrices over F_p[t] and over F_p.

use std::fmt;

use crate::error::{Error, Result};
use crate::field;
use crate::poly::{Polynomial, Var};

/// A dense matrix with entries in F_p[t], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, entries: vec![Polynomial::zero(p, Var::T); rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(p, Var::T));
        }
        m
    }

    pub fn from_rows(p: u32, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch(format!("ragged row of length {} (expected {c})", row.len())));
            }
            for e in row {
                if e.modulus() != p {
                    return Err(Error::ModulusMismatch(p, e.modulus()));
                }
                entries.push(e.with_var(Var::T));
            }
        }
        Ok(Self { p, rows: r, cols: c, entries })
    }

    /// Convenience constructor from integer coefficient lists.
    pub fn from_int_rows(p: u32, rows: &[Vec<Vec<i64>>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|c| Polynomial::from_coeffs(p, Var::T, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(p, rows)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Polynomial) {
        debug_assert_eq!(v.modulus(), self.p);
        self.entries[r * self.cols + c] = v.with_var(Var::T);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out.get_mut(i, j).add_scaled_assign(&prod, 1, 0);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, self.p - 1)
    }

    fn combine(&self, other: &Self, c: u32) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!("{}x{} and {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            e.add_scaled_assign(o, c, 0);
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut out = Self::zeros(self.p, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Specializes `t ↦ a`.
    pub fn eval_at(&self, a: u32) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).eval(a));
            }
        }
        out
    }

    /// Largest entry degree (0 for the zero matrix).
    pub fn max_degree(&self) -> usize {
        self.entries.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let prod = s * f;
            self.get_mut(dst, c).add_scaled_assign(&prod, 1, 0);
        }
    }

    /// col[dst] += f * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.get(r, src);
            if s.is_zero() {
                continue;
            }
            let prod = s * f;
            self.get_mut(r, dst).add_scaled_assign(&prod, 1, 0);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, c: u32) {
        for j in 0..self.cols {
            let v = self.get(r, j).scale(c);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A dense matrix over F_p, used for finite-dimensional linear algebra
/// (centers, fibers, faithfulness ranks).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v % p);
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

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field::add(out.get(i, j), field::mul(a, other.get(k, j), p), p);
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(pr * self.cols + c, row * self.cols + c);
            }
            let iv = field::inv(self.get(row, col), p);
            for c in 0..self.cols {
                let v = field::mul(self.get(row, c), iv, p);
                self.data[row * self.cols + c] = v;
            }
            for r in 0..self.rows {
                let f = self.get(r, col);
                if r == row || f == 0 {
                    continue;
                }
                for c in 0..self.cols {
                    let v = field::sub(self.get(r, c), field::mul(f, self.get(row, c), p), p);
                    self.data[r * self.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = field::neg(m.get(i, f), p);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_kronecker() {
        let a = PolyMatrix::from_int_rows(3, &[vec![vec![0, 1], vec![1]], vec![vec![], vec![2]]]).unwrap();
        let i = PolyMatrix::identity(3, 2);
        assert_eq!(a.try_mul(&i).unwrap(), a);
        let k = i.kronecker(&a);
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(2, 2), a.get(0, 0));
        assert!(a.try_mul(&PolyMatrix::identity(3, 3)).is_err());
    }

    #[test]
    fn fp_kernel() {
        // [1 1 0; 0 0 1] over F_3 has kernel spanned by (-1, 1, 0)
        let m = FpMatrix::from_columns(3, 2, &[vec![1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel(), vec![vec![2, 1, 0]]);
    }
}
