//! Column-sparse complex matrices. Circuit unitaries on a dozen qubits
//! have only a handful of nonzeros per column, so a dense layout would be
//! wasteful.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square matrix stored as sorted `(row, value)` lists per column.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    cols: Vec<Vec<(usize, Complex<T>)>>,
}

/// Sort by row, merge duplicates and drop entries below the amplitude floor.
pub(crate) fn normalize_column<T: Real>(
    mut entries: Vec<(usize, Complex<T>)>,
) -> Vec<(usize, Complex<T>)> {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, Complex<T>)> = Vec::with_capacity(entries.len());
    for (row, value) in entries {
        match out.last_mut() {
            Some(last) if last.0 == row => last.1 = last.1 + value,
            _ => out.push((row, value)),
        }
    }
    out.retain(|e| e.1.norm() > T::amplitude_floor());
    out
}

impl<T: Real> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Matrix::from_columns(dim, |j| vec![(j, Complex::new(T::one(), T::zero()))])
    }

    /// Build column `j` from `column(j)`; entries may repeat rows.
    pub fn from_columns<F>(dim: usize, column: F) -> Self
    where
        F: Fn(usize) -> Vec<(usize, Complex<T>)>,
    {
        let cols = (0..dim)
            .map(|j| {
                let entries = column(j);
                debug_assert!(entries.iter().all(|e| e.0 < dim));
                normalize_column(entries)
            })
            .collect();
        Matrix { dim, cols }
    }

    pub(crate) fn from_raw_columns(dim: usize, cols: Vec<Vec<(usize, Complex<T>)>>) -> Self {
        debug_assert_eq!(cols.len(), dim);
        Matrix { dim, cols }
    }

    pub fn from_dense(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch("matrix rows must be square".into()));
        }
        Ok(Matrix::from_columns(dim, |j| {
            (0..dim).map(|i| (i, rows[i][j])).collect()
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Qubits spanned, when the dimension is a power of two.
    pub fn num_qubits(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn column(&self, j: usize) -> &[(usize, Complex<T>)] {
        &self.cols[j]
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        let column = &self.cols[col];
        match column.binary_search_by_key(&row, |e| e.0) {
            Ok(k) => column[k].1,
            Err(_) => Complex::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex<T>>> {
        let mut rows = vec![vec![Complex::zero(); self.dim]; self.dim];
        for (j, column) in self.cols.iter().enumerate() {
            for &(i, v) in column {
                rows[i][j] = v;
            }
        }
        rows
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Matrix::from_columns(self.dim, |j| {
            other.cols[j]
                .iter()
                .flat_map(|&(k, b)| self.cols[k].iter().map(move |&(i, a)| (i, a * b)))
                .collect()
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Matrix::from_columns(self.dim, |j| {
            self.cols[j].iter().chain(&other.cols[j]).copied().collect()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Matrix::from_columns(self.dim, |j| {
            self.cols[j].iter().map(|&(i, v)| (i, v * factor)).collect()
        })
    }

    pub fn adjoint(&self) -> Self {
        let mut cols = vec![Vec::new(); self.dim];
        for (j, column) in self.cols.iter().enumerate() {
            for &(i, v) in column {
                cols[i].push((j, v.conj()));
            }
        }
        // rows were visited in increasing column order, so already sorted
        Matrix {
            dim: self.dim,
            cols,
        }
    }

    /// `I_{2^extra} ⊗ self`: the extra qubits sit above the existing ones.
    pub fn embed_above(&self, extra_qubits: usize) -> Self {
        let blocks = 1usize << extra_qubits;
        let dim = self.dim * blocks;
        let cols = (0..dim)
            .map(|j| {
                let (block, inner) = (j / self.dim, j % self.dim);
                self.cols[inner]
                    .iter()
                    .map(|&(i, v)| (block * self.dim + i, v))
                    .collect()
            })
            .collect();
        Matrix { dim, cols }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_dim(other)?;
        let mut worst = T::zero();
        for (a, b) in self.cols.iter().zip(&other.cols) {
            let (mut x, mut y) = (a.iter().peekable(), b.iter().peekable());
            loop {
                let d = match (x.peek(), y.peek()) {
                    (None, None) => break,
                    (Some(&&(i, u)), Some(&&(k, v))) if i == k => {
                        x.next();
                        y.next();
                        u - v
                    }
                    (Some(&&(i, u)), Some(&&(k, _))) if i < k => {
                        x.next();
                        u
                    }
                    (Some(&&(_, u)), None) => {
                        x.next();
                        u
                    }
                    (_, Some(&&(_, v))) => {
                        y.next();
                        -v
                    }
                };
                worst = worst.max(d.norm());
            }
        }
        Ok(worst)
    }

    /// `max |U†U - I|`.
    pub fn unitarity_deviation(&self) -> T {
        let gram = self.adjoint().mul(self).expect("same dimension");
        gram.max_abs_diff(&Matrix::identity(self.dim))
            .expect("same dimension")
    }

    /// `max |A - A†|`.
    pub fn hermiticity_deviation(&self) -> T {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }
}
