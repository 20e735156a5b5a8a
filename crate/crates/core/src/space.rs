//! Dense vector and matrix primitives and the product-space geometry.
//!
//! A point of the saddle problem lives in the product space X × Y with
//! inner product ⟨(x,y),(u,v)⟩ = ⟨x,u⟩ + ⟨y,v⟩ and the induced norm
//! ‖(x,y)‖² = ‖x‖² + ‖y‖².

use std::ops::Index;

use crate::error::{Error, Result};

/// Dense real vector. Construction rejects NaN/Inf entries so divergent
/// runs fail fast instead of propagating garbage.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    entries: Vec<f64>,
}

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite("vector entries".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.entries.iter()
    }

    fn check_dims(&self, other: &Vector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.check_dims(other)?;
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e * e).sum::<f64>().sqrt()
    }

    /// self + alpha * other
    pub fn add_scaled(&self, alpha: f64, other: &Vector) -> Result<Vector> {
        self.check_dims(other)?;
        Vector::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + alpha * b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.add_scaled(-1.0, other)
    }

    pub fn scale(&self, alpha: f64) -> Result<Vector> {
        Vector::new(self.entries.iter().map(|a| alpha * a).collect())
    }

    pub fn dist(&self, other: &Vector) -> Result<f64> {
        self.check_dims(other)?;
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    /// Concatenate two vectors into one block vector.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Vector { entries }
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.entries[i]
    }
}

/// A pair (x, y) in the product space X × Y. Block dimensions are fixed
/// at construction; values are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalDualPoint {
    x: Vector,
    y: Vector,
}

impl PrimalDualPoint {
    pub fn new(x: Vector, y: Vector) -> Self {
        Self { x, y }
    }

    pub fn zeros(n_x: usize, n_y: usize) -> Self {
        Self {
            x: Vector::zeros(n_x),
            y: Vector::zeros(n_y),
        }
    }

    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn y(&self) -> &Vector {
        &self.y
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.x.len(), self.y.len())
    }
}

/// Product-space inner product: ⟨a.x, b.x⟩ + ⟨a.y, b.y⟩.
pub fn inner(a: &PrimalDualPoint, b: &PrimalDualPoint) -> Result<f64> {
    Ok(a.x.dot(&b.x)? + a.y.dot(&b.y)?)
}

/// Induced norm: sqrt(⟨a, a⟩).
pub fn norm(a: &PrimalDualPoint) -> f64 {
    let sx: f64 = a.x.iter().map(|e| e * e).sum();
    let sy: f64 = a.y.iter().map(|e| e * e).sum();
    (sx + sy).sqrt()
}

/// Blockwise alpha * a + b.
pub fn axpy(alpha: f64, a: &PrimalDualPoint, b: &PrimalDualPoint) -> Result<PrimalDualPoint> {
    Ok(PrimalDualPoint::new(
        b.x.add_scaled(alpha, &a.x)?,
        b.y.add_scaled(alpha, &a.y)?,
    ))
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite("matrix entries".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// A · v
    pub fn matvec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        Vector::new(out)
    }

    /// Aᵀ · v
    pub fn t_matvec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (j, a) in row.iter().enumerate() {
                out[j] += a * v[i];
            }
        }
        Vector::new(out)
    }
}
