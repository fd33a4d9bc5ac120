//! Dense exact matrices over a [`FieldSpec`].
//!
//! Storage is row-major. Prime-field entries are kept as reduced `u64`
//! residues, rational entries as `BigRational`; all elimination routines are
//! generic over a small private arithmetic trait so both paths share one
//! implementation. Elimination always picks the first nonzero entry in the
//! pivot column, so results are reproducible.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{inv_mod, FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Data {
    Fp(Vec<u64>),
    Q(Vec<BigRational>),
}

trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
}

struct ModP(u64);
struct Rat;

impl Arith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + self.0 - b * c % self.0) % self.0
    }
}

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
}

/// Gauss-Jordan elimination in place; returns the pivot columns.
fn rref_impl<A: Arith>(k: &A, d: &mut [A::E], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !k.is_zero(&d[i * cols + c])) else {
            continue;
        };
        if i != r {
            for j in 0..cols {
                d.swap(i * cols + j, r * cols + j);
            }
        }
        let inv = k.inv(&d[r * cols + c]);
        for j in c..cols {
            let v = k.mul(&d[r * cols + j], &inv);
            d[r * cols + j] = v;
        }
        for i in 0..rows {
            if i == r || k.is_zero(&d[i * cols + c]) {
                continue;
            }
            let f = d[i * cols + c].clone();
            for j in c..cols {
                if k.is_zero(&d[r * cols + j]) {
                    continue;
                }
                let v = k.sub_mul(&d[i * cols + j], &f, &d[r * cols + j]);
                d[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn mul_impl<A: Arith>(k: &A, a: &[A::E], b: &[A::E], m: usize, n: usize, p: usize) -> Vec<A::E> {
    let mut out = vec![k.zero(); m * p];
    for i in 0..m {
        for l in 0..n {
            let x = &a[i * n + l];
            if k.is_zero(x) {
                continue;
            }
            for j in 0..p {
                let y = &b[l * p + j];
                if k.is_zero(y) {
                    continue;
                }
                let t = k.mul(x, y);
                out[i * p + j] = k.add(&out[i * p + j], &t);
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Data,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({}x{} over {}) {}", self.rows, self.cols, self.field, self)
    }
}

impl fmt::Display for Matrix {
    /// Row-major literal `[[a,b],[c,d]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

macro_rules! with_arith {
    ($field:expr, $data:expr, |$k:ident, $v:ident| $body:expr) => {
        match ($field, $data) {
            (FieldSpec::Prime(p), Data::Fp($v)) => {
                let $k = ModP(p);
                $body
            }
            (FieldSpec::Rationals, Data::Q($v)) => {
                let $k = Rat;
                $body
            }
            _ => unreachable!("matrix storage does not match its field"),
        }
    };
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let data = match field {
            FieldSpec::Prime(_) => Data::Fp(vec![0; rows * cols]),
            FieldSpec::Rationals => Data::Q(vec![BigRational::zero(); rows * cols]),
        };
        Matrix { rows, cols, field, data }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged matrix literal".into()));
        }
        let mut m = Self::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::Shape("entry from a different field".into()));
                }
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// Column vector.
    pub fn column_vector(field: FieldSpec, v: &[Scalar]) -> Self {
        Self::from_fn(field, v.len(), 1, |i, _| v[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let idx = i * self.cols + j;
        match (&self.data, self.field) {
            (Data::Fp(v), FieldSpec::Prime(p)) => Scalar::Fp { value: v[idx], p },
            (Data::Q(v), _) => Scalar::Q(v[idx].clone()),
            _ => unreachable!(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        let idx = i * self.cols + j;
        match (&mut self.data, value) {
            (Data::Fp(v), Scalar::Fp { value, p }) if FieldSpec::Prime(p) == self.field => v[idx] = value,
            (Data::Q(v), Scalar::Q(q)) => v[idx] = q,
            _ => panic!("field mismatch in Matrix::set"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Data::Fp(v) => v.iter().all(|x| *x == 0),
            Data::Q(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    fn check_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "field mismatch between matrices");
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let (m, n, p) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data, self.field) {
            (Data::Fp(a), Data::Fp(b), FieldSpec::Prime(q)) => Data::Fp(mul_impl(&ModP(q), a, b, m, n, p)),
            (Data::Q(a), Data::Q(b), _) => Data::Q(mul_impl(&Rat, a, b, m, n, p)),
            _ => unreachable!(),
        };
        Matrix { rows: m, cols: p, field: self.field, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert!(self.rows == other.rows && self.cols == other.cols, "matrix sum shape mismatch");
        let data = match (&self.data, &other.data, self.field) {
            (Data::Fp(a), Data::Fp(b), FieldSpec::Prime(p)) => {
                Data::Fp(a.iter().zip(b).map(|(x, y)| (x + y) % p).collect())
            }
            (Data::Q(a), Data::Q(b), _) => Data::Q(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            _ => unreachable!(),
        };
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = match (&self.data, s) {
            (Data::Fp(a), Scalar::Fp { value, p }) => Data::Fp(a.iter().map(|x| x * value % p).collect()),
            (Data::Q(a), Scalar::Q(q)) => Data::Q(a.iter().map(|x| x * q).collect()),
            _ => panic!("field mismatch in Matrix::scale"),
        };
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> (Matrix, Vec<usize>, usize) {
        let mut out = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let pivots = with_arith!(out.field, &mut out.data, |k, v| rref_impl(&k, v, rows, cols));
        let rank = pivots.len();
        (out, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// Basis of `{x : self * x = 0}` as the columns of the returned matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots, _) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zero(self.field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, self.field.one());
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if !v.is_zero() {
                    k.set(pc, j, -&v);
                }
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "solve: {} rows on the left, {} on the right",
                self.rows, b.rows
            )));
        }
        self.check_field(b);
        let aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots, _) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zero(self.field, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                let v = r.get(row, self.cols + j);
                if !v.is_zero() {
                    x.set(pc, j, v);
                }
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.rank() == self.rows => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Horizontal concatenation; `rows` fixes the height when the list is empty.
    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack height mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    /// Vertical concatenation; `cols` fixes the width when the list is empty.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack width mismatch");
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        self.check_field(m);
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "block out of range");
        match (&mut self.data, &m.data) {
            (Data::Fp(dst), Data::Fp(src)) => {
                for i in 0..m.rows {
                    let d0 = (r0 + i) * self.cols + c0;
                    dst[d0..d0 + m.cols].copy_from_slice(&src[i * m.cols..(i + 1) * m.cols]);
                }
            }
            (Data::Q(dst), Data::Q(src)) => {
                for i in 0..m.rows {
                    for j in 0..m.cols {
                        dst[(r0 + i) * self.cols + c0 + j] = src[i * m.cols + j].clone();
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Matrix with the given columns, all of height `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Linearly independent columns spanning the column space (chosen among the
    /// original columns).
    pub fn column_space(&self) -> Matrix {
        let (_, pivots, _) = self.rref();
        self.select_columns(&pivots)
    }

    /// Rows spanning `{y : y * self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel_basis().transpose()
    }

    /// Standard basis vectors completing the column space of `self` to the
    /// whole space, as columns.
    pub fn complement_columns(&self) -> Matrix {
        let n = self.rows;
        let id = Matrix::identity(self.field, n);
        let aug = Matrix::hstack(self.field, n, &[self, &id]);
        let (_, pivots, _) = aug.rref();
        let extra: Vec<usize> = pivots.iter().filter(|&&c| c >= self.cols).map(|c| c - self.cols).collect();
        id.select_columns(&extra)
    }

    /// Whether every column of `v` lies in the column space of `self`.
    pub fn spans(&self, v: &Matrix) -> bool {
        matches!(self.solve(v), Ok(Some(_)))
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(self.get(i, j));
            }
        }
        out
    }

    pub fn from_entries(field: FieldSpec, rows: usize, cols: usize, entries: &[Scalar]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix::from_fn(field, rows, cols, |i, j| entries[i * cols + j].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = FieldSpec::Prime(101);
        let id = Matrix::identity(f, 2);
        let (r, piv, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rank, 2);
        let z = Matrix::zero(f, 3, 2);
        let (r, piv, rank) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_over_f5() {
        let f = FieldSpec::Prime(5);
        let m = Matrix::from_i64(f, &[&[2, 4], &[1, 2]]);
        let (_, piv, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let id = Matrix::identity(f, 2);
        let b = Matrix::from_i64(f, &[&[3, 1], &[4, 1]]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);
        let z = Matrix::zero(f, 2, 2);
        assert!(z.solve(&Matrix::from_i64(f, &[&[1], &[0]])).unwrap().is_none());
        let a = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let x = a.solve(&Matrix::from_i64(f, &[&[3], &[1]])).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(f, &[&[2], &[1]]));
        assert!(a.solve(&Matrix::zero(f, 3, 1)).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = q();
        assert_eq!(Matrix::identity(f, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zero(f, 3, 3).kernel_basis().cols(), 3);
        let k = Matrix::from_i64(f, &[&[1, 2]]).kernel_basis();
        assert_eq!(k, Matrix::from_i64(f, &[&[-2], &[1]]));
    }

    #[test]
    fn inverse_and_complement() {
        let f = FieldSpec::Prime(7);
        let a = Matrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(f, 2));
        let s = Matrix::from_i64(f, &[&[1], &[1], &[0]]);
        let c = s.complement_columns();
        assert_eq!(c.cols(), 2);
        let all = Matrix::hstack(f, 3, &[&s, &c]);
        assert_eq!(all.rank(), 3);
    }

    #[test]
    fn display_literal() {
        let f = q();
        let m = Matrix::from_i64(f, &[&[1, -2], &[0, 3]]);
        assert_eq!(m.to_string(), "[[1,-2],[0,3]]");
    }
}
