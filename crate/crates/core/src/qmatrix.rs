//! Dense quaternionic matrices and their complex embedding.
//!
//! Matrices act on a right quaternionic module: column vectors take scalars
//! on the right. Writing `M = M1 + M2 j` with complex `M1`, `M2`, the
//! embedding is the `2n × 2n` complex matrix
//!
//! ```text
//! χ(M) = [[ M1,       M2      ],
//!         [ -conj(M2), conj(M1) ]]
//! ```
//!
//! which is an injective algebra homomorphism with `χ(M†) = χ(M)^H`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expm;
use crate::quaternion::Quaternion;

/// Row-major square quaternionic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Quaternion]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from row vectors, rejecting ragged or non-square input and
    /// non-finite entries.
    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        if entries.iter().any(|q| !q.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { n, entries })
    }

    /// Builds `M1 + M2 j` from its complex parts.
    pub fn from_complex_parts(m1: &DMatrix<Complex64>, m2: &DMatrix<Complex64>) -> Self {
        let n = m1.nrows();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Quaternion::from_complex_pair(m1[(i, j)], m2[(i, j)]);
            }
        }
        m
    }

    /// Builds a matrix with zero `j`, `k` parts.
    pub fn from_complex(m1: &DMatrix<Complex64>) -> Self {
        Self::from_complex_parts(m1, &DMatrix::zeros(m1.nrows(), m1.ncols()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Quaternion>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    /// Complex parts `(M1, M2)` with `M = M1 + M2 j`.
    pub fn complex_parts(&self) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
        let n = self.n;
        let mut m1 = DMatrix::zeros(n, n);
        let mut m2 = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let (z1, z2) = self[(i, j)].to_complex_pair();
                m1[(i, j)] = z1;
                m2[(i, j)] = z2;
            }
        }
        (m1, m2)
    }

    /// Quaternionic matrix product, summing `A_ik B_kj` in that order.
    pub fn mat_mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n).map(|k| self[(i, k)] * rhs[(k, j)]).sum();
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> QMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Sum of the real parts of the diagonal.
    pub fn re_trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)].q0).sum()
    }

    pub fn trace(&self) -> Quaternion {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> QMatrix {
        self.map(|q| q * s)
    }

    /// Left scalar multiple `q M`.
    pub fn scale_left(&self, q: Quaternion) -> QMatrix {
        self.map(|e| q * e)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> QMatrix {
        QMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&q| f(q)).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|q| q.is_finite())
    }

    /// True when every entry has vanishing `j`, `k` parts.
    pub fn is_complex_within(&self, eps: f64) -> bool {
        self.entries.iter().all(|q| q.is_complex_within(eps))
    }

    pub fn is_diagonal_within(&self, eps: f64) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| i == j || self[(i, j)].norm() <= eps))
    }

    pub fn diagonal(&self) -> Vec<Quaternion> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    /// Diagonal and off-diagonal parts.
    pub fn split_diagonal(&self) -> (QMatrix, QMatrix) {
        let d = Self::from_diagonal(&self.diagonal());
        let off = self - &d;
        (d, off)
    }

    pub fn approx_eq(&self, other: &QMatrix, eps: f64) -> bool {
        self.n == other.n && (self - other).frobenius_norm() <= eps
    }

    pub fn embed(&self) -> ComplexEmbedding {
        let n = self.n;
        let mut x = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let (z1, z2) = self[(i, j)].to_complex_pair();
                x[(i, j)] = z1;
                x[(i, j + n)] = z2;
                x[(i + n, j)] = -z2.conj();
                x[(i + n, j + n)] = z1.conj();
            }
        }
        ComplexEmbedding(x)
    }

    /// Matrix inverse, computed in the embedding.
    pub fn inverse(&self) -> Result<QMatrix> {
        let inv = self
            .embed()
            .0
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("singular matrix".into()))?;
        ComplexEmbedding(inv).unembed_unchecked()
    }

    /// `exp(M t)` by scaling and squaring on the embedding.
    pub fn mat_exp(&self, t: f64) -> Result<QMatrix> {
        let x = self.embed().0 * Complex64::new(t, 0.0);
        ComplexEmbedding(expm::expm(&x)?).unembed_unchecked()
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(QVector(
            (0..self.n)
                .map(|i| (0..self.n).map(|k| self[(i, k)] * v.0[k]).sum())
                .collect(),
        ))
    }

    fn check_dim(&self, rhs: &QMatrix) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(())
    }
}

/// Free-function form of [`QMatrix::mat_mul`].
pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    a.mat_mul(b)
}

pub fn dagger(m: &QMatrix) -> QMatrix {
    m.dagger()
}

pub fn re_trace(m: &QMatrix) -> f64 {
    m.re_trace()
}

pub fn mat_exp(m: &QMatrix, t: f64) -> Result<QMatrix> {
    m.mat_exp(t)
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.entries[i * self.n + j]
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&QMatrix> for &QMatrix {
            type Output = QMatrix;
            fn $method(self, rhs: &QMatrix) -> QMatrix {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                QMatrix {
                    n: self.n,
                    entries: self
                        .entries
                        .iter()
                        .zip(&rhs.entries)
                        .map(|(&a, &b)| a $op b)
                        .collect(),
                }
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

/// Panics on dimension mismatch; use [`QMatrix::mat_mul`] for a checked product.
impl Mul<&QMatrix> for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.mat_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|q| format!("({q})")).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The `2n × 2n` complex image of a quaternionic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexEmbedding(pub DMatrix<Complex64>);

impl ComplexEmbedding {
    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    /// Frobenius norm of the departure from the block structure, relative
    /// to the norm of the matrix.
    pub fn symplectic_residual(&self) -> f64 {
        let x = &self.0;
        let n2 = x.nrows();
        if !n2.is_multiple_of(2) || x.ncols() != n2 {
            return f64::INFINITY;
        }
        let n = n2 / 2;
        let mut r = 0.0;
        for i in 0..n {
            for j in 0..n {
                r += (x[(i + n, j + n)] - x[(i, j)].conj()).norm_sqr();
                r += (x[(i + n, j)] + x[(i, j + n)].conj()).norm_sqr();
            }
        }
        let scale = x.norm().max(f64::MIN_POSITIVE);
        r.sqrt() / scale
    }

    /// Recovers the quaternionic matrix, rejecting inputs whose block
    /// structure is violated beyond `tol` (relative).
    pub fn unembed(&self, tol: f64) -> Result<QMatrix> {
        let residual = self.symplectic_residual();
        if !(residual <= tol) {
            return Err(Error::NotSymplectic { residual });
        }
        self.unembed_unchecked()
    }

    /// Reads `M1` and `M2` off the upper blocks; the lower blocks are
    /// assumed consistent.
    pub(crate) fn unembed_unchecked(&self) -> Result<QMatrix> {
        let x = &self.0;
        if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Overflow);
        }
        let n = x.nrows() / 2;
        let m1 = x.view((0, 0), (n, n)).into_owned();
        let m2 = x.view((0, n), (n, n)).into_owned();
        Ok(QMatrix::from_complex_parts(&m1, &m2))
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }
}

/// Column vector in the right quaternionic module.
#[derive(Clone, Debug, PartialEq)]
pub struct QVector(pub Vec<Quaternion>);

impl QVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `v q`, scaling every component on the right.
    pub fn mul_right(&self, q: Quaternion) -> QVector {
        QVector(self.0.iter().map(|&c| c * q).collect())
    }

    /// Standard inner product `⟨self|other⟩ = Σ conj(self_i) other_i`.
    pub fn inner(&self, other: &QVector) -> Quaternion {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Projector `|v⟩⟨v|`.
    pub fn outer(&self) -> QMatrix {
        let n = self.len();
        let mut m = QMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.0[i] * self.0[j].conj();
            }
        }
        m
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }
}

/// Wire form of a matrix: `{"n": 2, "entries": [[[q0,q1,q2,q3], ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<Quaternion>>,
}

impl TryFrom<MatrixJson> for QMatrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<QMatrix> {
        if j.entries.len() != j.n {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                found: j.entries.len(),
            });
        }
        QMatrix::from_rows(j.entries)
    }
}

impl From<&QMatrix> for MatrixJson {
    fn from(m: &QMatrix) -> Self {
        MatrixJson {
            n: m.dim(),
            entries: m.rows(),
        }
    }
}

impl QMatrix {
    pub fn from_json(s: &str) -> Result<QMatrix> {
        let j: MatrixJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        j.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix serializes")
    }
}
