// Copyright 2026 The qsl-reach Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for the small (dim ≤ 4) operators used
//! throughout the crate.
//!
//! Matrices are immutable values: every operation returns a fresh matrix.
//! The fallible free functions check dimensions and are the public contract;
//! the arithmetic operator impls on references panic on mismatch and are
//! meant for internal code whose dimensions are already validated.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64 as Complex;
use thiserror::Error;

/// Tolerance used when validating unit norm of a [`PureState`].
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("expected {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },
    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
}

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

pub const I: Complex = Complex { re: 0.0, im: 1.0 };

fn check_dims(left: usize, right: usize) -> Result<(), LinalgError> {
    if left == right {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { left, right })
    }
}

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<Complex>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::ZeroDimension);
        }
        if data.len() != dim * dim {
            return Err(LinalgError::WrongLength {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|z| !z.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from nested rows; convenient for constants.
    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            check_dims(dim, row.len())?;
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| real(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be at least 1");
        Self {
            dim,
            data: vec![Complex::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { real(1.0) } else { real(0.0) })
    }

    pub fn diagonal(entries: &[Complex]) -> Self {
        Self::from_fn(entries.len(), |i, j| {
            if i == j {
                entries[i]
            } else {
                real(0.0)
            }
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        assert!(dim > 0, "dimension must be at least 1");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.data[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    /// Largest absolute entrywise difference; `None` on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> Option<f64> {
        (self.dim == other.dim).then(|| {
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
    }

    /// ‖m − m†‖_F.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Returns true when every eigenvalue of this Hermitian matrix is at
    /// least `-tol`.
    ///
    /// Runs a diagonally pivoted Cholesky factorization of `m + tol·I`: a
    /// Hermitian matrix is positive definite iff every pivot stays positive.
    /// The shift keeps rank-deficient inputs such as pure states well away
    /// from roundoff.
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let n = self.dim;
        let mut a: Vec<Complex> = self.data.clone();
        for i in 0..n {
            // Hermitian input is assumed; use the real part of the diagonal.
            a[i * n + i] = real(a[i * n + i].re + tol);
        }
        let mut remaining: Vec<usize> = (0..n).collect();
        while !remaining.is_empty() {
            let (pos, &k) = remaining
                .iter()
                .enumerate()
                .max_by(|x, y| a[x.1 * n + x.1].re.total_cmp(&a[y.1 * n + y.1].re))
                .expect("non-empty");
            let pivot = a[k * n + k].re;
            if !(pivot > 0.0) {
                return false;
            }
            remaining.swap_remove(pos);
            for &i in &remaining {
                let lik = a[i * n + k] / pivot;
                for &j in &remaining {
                    let update = lik * a[k * n + j];
                    a[i * n + j] -= update;
                }
            }
        }
        true
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn elementwise(a: &ComplexMatrix, b: &ComplexMatrix, f: impl Fn(Complex, Complex) -> Complex) -> ComplexMatrix {
    assert_eq!(a.dim, b.dim, "matrix dimension mismatch");
    ComplexMatrix {
        dim: a.dim,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| f(x, y)).collect(),
    }
}

fn product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(a.dim, b.dim, "matrix dimension mismatch");
    let n = a.dim;
    let mut data = vec![Complex::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == Complex::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                data[i * n + j] += aik * b.data[k * n + j];
            }
        }
    }
    ComplexMatrix { dim: n, data }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        elementwise(self, rhs, |x, y| x + y)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        elementwise(self, rhs, |x, y| x - y)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        product(self, rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// Conjugate transpose.
pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim, |i, j| m.get(j, i).conj())
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_dims(a.dim, b.dim)?;
    Ok(product(a, b))
}

/// `ab − ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_dims(a.dim, b.dim)?;
    Ok(&product(a, b) - &product(b, a))
}

pub fn add(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    check_dims(a.dim, b.dim)?;
    Ok(a + b)
}

pub fn frobenius_norm(m: &ComplexMatrix) -> f64 {
    m.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(m: &ComplexMatrix) -> Complex {
    (0..m.dim).map(|i| m.get(i, i)).sum()
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    ComplexMatrix::from_fn(na * nb, |i, j| a.get(i / nb, j / nb) * b.get(i % nb, j % nb))
}

/// Unit-norm complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex>,
}

impl PureState {
    /// Accepts amplitudes that are already normalized to within [`NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex>) -> Result<Self, LinalgError> {
        if amplitudes.is_empty() {
            return Err(LinalgError::ZeroDimension);
        }
        if let Some(index) = amplitudes.iter().position(|z| !z.is_finite()) {
            return Err(LinalgError::NonFinite { index });
        }
        let norm = vector_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(LinalgError::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex>) -> Result<Self, LinalgError> {
        let norm = vector_norm(&amplitudes);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(LinalgError::NotNormalized { norm });
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![real(0.0); dim];
        amplitudes[index] = real(1.0);
        Self { amplitudes }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &[Complex]) -> Result<Complex, LinalgError> {
        check_dims(self.dim(), other.len())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

pub fn vector_norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Projector `|ψ⟩⟨ψ|`.
pub fn outer(psi: &PureState) -> ComplexMatrix {
    let a = &psi.amplitudes;
    ComplexMatrix::from_fn(a.len(), |i, j| a[i] * a[j].conj())
}

/// `m|ψ⟩` as a plain vector (no normalization implied).
pub fn apply(m: &ComplexMatrix, psi: &PureState) -> Result<Vec<Complex>, LinalgError> {
    apply_vec(m, psi.amplitudes())
}

pub fn apply_vec(m: &ComplexMatrix, v: &[Complex]) -> Result<Vec<Complex>, LinalgError> {
    check_dims(m.dim, v.len())?;
    let n = m.dim;
    Ok((0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) * v[j]).sum())
        .collect())
}

/// `⟨ψ|m|ψ⟩`.
pub fn expectation(psi: &PureState, m: &ComplexMatrix) -> Result<Complex, LinalgError> {
    let mv = apply(m, psi)?;
    psi.inner(&mv)
}
