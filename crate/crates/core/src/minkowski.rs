//! Minkowski space, signature forms and the spinor action of `SL(2,C)`.
//!
//! Vectors are ordered `(t, x, y, z)` with metric `diag(1, -1, -1, -1)`. A
//! vector corresponds to the Hermitian matrix `[[t+z, x-iy], [x+iy, t-z]]`,
//! whose determinant is `t² - x² - y² - z²`.

use alloc::vec::Vec;
use core::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::lie::GroupElement;
use crate::Error;

/// Largest anti-Hermitian part accepted by [`hermitian_to_vec`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// A point `(t, x, y, z)` of Minkowski space.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MinkowskiVector(pub [f64; 4]);

impl MinkowskiVector {
    pub const ZERO: Self = Self([0.0; 4]);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self([t, x, y, z])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn x(&self) -> f64 {
        self.0[1]
    }

    pub fn y(&self) -> f64 {
        self.0[2]
    }

    pub fn z(&self) -> f64 {
        self.0[3]
    }

    /// `t² - x² - y² - z²`.
    pub fn interval(&self) -> f64 {
        let [t, x, y, z] = self.0;
        t * t - x * x - y * y - z * z
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..4).map(|i| (self.0[i] - other.0[i]).abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }
}

impl Index<usize> for MinkowskiVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for MinkowskiVector {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self(core::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for MinkowskiVector {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self(core::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for MinkowskiVector {
    type Output = Self;

    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

/// `I_{p,q}`: `p` entries `+1` followed by `q` entries `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureForm {
    pub p: usize,
    pub q: usize,
}

impl SignatureForm {
    pub const MINKOWSKI: Self = Self { p: 1, q: 3 };

    pub const fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Row-major `(p+q)²` diagonal matrix.
    pub fn matrix(&self) -> Vec<f64> {
        let n = self.dim();
        let mut m = alloc::vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = if i < self.p { 1.0 } else { -1.0 };
        }
        m
    }

    /// `Σ_{i<p} xᵢyᵢ - Σ_{i≥p} xᵢyᵢ`.
    pub fn apply(&self, x: &[f64], y: &[f64]) -> Result<f64, Error> {
        theta_form(self.p, self.q, x, y)
    }
}

/// The symmetric bilinear form of signature `(p, q)`.
pub fn theta_form(p: usize, q: usize, x: &[f64], y: &[f64]) -> Result<f64, Error> {
    let n = p + q;
    if x.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: x.len() });
    }
    if y.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: y.len() });
    }
    let plus: f64 = x[..p].iter().zip(&y[..p]).map(|(a, b)| a * b).sum();
    let minus: f64 = x[p..].iter().zip(&y[p..]).map(|(a, b)| a * b).sum();
    Ok(plus - minus)
}

/// Where a real 4×4 matrix sits among the Lorentz groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LorentzClass {
    NotO31,
    /// Preserves the metric, determinant `-1`.
    O31,
    /// Determinant `+1`, reverses time.
    SO31,
    /// The identity component.
    SO31Plus,
}

/// A real 4×4 matrix acting on `(t, x, y, z)`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(pub [[f64; 4]; 4]);

impl LorentzMatrix {
    pub const IDENTITY: Self = Self([[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]);

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            m[i][i] = d[i];
        }
        Self(m)
    }

    pub fn transpose(&self) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| self.0[j][i])))
    }

    pub fn apply(&self, v: &MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector(core::array::from_fn(|i| (0..4).map(|j| self.0[i][j] * v.0[j]).sum()))
    }

    /// Determinant by expansion in complementary 2×2 minors of the first two
    /// rows.
    pub fn det(&self) -> f64 {
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        minor(0, 1, 0, 1) * minor(2, 3, 2, 3) - minor(0, 1, 0, 2) * minor(2, 3, 1, 3)
            + minor(0, 1, 0, 3) * minor(2, 3, 1, 2)
            + minor(0, 1, 1, 2) * minor(2, 3, 0, 3)
            - minor(0, 1, 1, 3) * minor(2, 3, 0, 2)
            + minor(0, 1, 2, 3) * minor(2, 3, 0, 1)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        worst
    }

    /// `‖ΛᵀIΛ - I‖_max` for `I = diag(1, -1, -1, -1)`.
    pub fn metric_defect(&self) -> f64 {
        let eta = Self::diag([1.0, -1.0, -1.0, -1.0]);
        (self.transpose() * eta * *self).max_abs_diff(&eta)
    }

    /// Metric preservation, then `det = +1`, then `Λ₀₀ ≥ 1`, each at
    /// tolerance `tol`.
    pub fn classify(&self, tol: f64) -> LorentzClass {
        if self.metric_defect() > tol {
            return LorentzClass::NotO31;
        }
        if (self.det() - 1.0).abs() > tol {
            return LorentzClass::O31;
        }
        if self.0[0][0] < 1.0 - tol {
            return LorentzClass::SO31;
        }
        LorentzClass::SO31Plus
    }
}

impl Mul for LorentzMatrix {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum())))
    }
}

pub fn is_lorentz(m: &LorentzMatrix, tol: f64) -> LorentzClass {
    m.classify(tol)
}

/// A 2×2 complex matrix, row-major.
pub type Matrix2 = [Complex64; 4];

fn mul2(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

pub fn vec_to_hermitian(v: &MinkowskiVector) -> Matrix2 {
    let [t, x, y, z] = v.0;
    [Complex64::new(t + z, 0.0), Complex64::new(x, -y), Complex64::new(x, y), Complex64::new(t - z, 0.0)]
}

pub fn det2(m: &Matrix2) -> Complex64 {
    m[0] * m[3] - m[1] * m[2]
}

/// Inverse of [`vec_to_hermitian`] on matrices within
/// [`HERMITIAN_TOLERANCE`] of Hermitian; the anti-Hermitian part is dropped.
pub fn hermitian_to_vec(m: &Matrix2) -> Result<MinkowskiVector, Error> {
    let deviation = [
        (m[0] - m[0].conj()).norm(),
        (m[1] - m[2].conj()).norm(),
        (m[3] - m[3].conj()).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if deviation.is_nan() || deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let off = 0.5 * (m[2] + m[1].conj());
    Ok(MinkowskiVector::new(0.5 * (m[0].re + m[3].re), off.re, off.im, 0.5 * (m[0].re - m[3].re)))
}

/// `v ↦ g M(v) g†`.
pub fn spinor_action(g: &GroupElement, v: &MinkowskiVector) -> MinkowskiVector {
    let ge = g.entries();
    let gd = g.adjoint().entries();
    let m = mul2(&mul2(&ge, &vec_to_hermitian(v)), &gd);
    let off = 0.5 * (m[2] + m[1].conj());
    MinkowskiVector::new(0.5 * (m[0].re + m[3].re), off.re, off.im, 0.5 * (m[0].re - m[3].re))
}

/// The matrix of [`spinor_action`]`(g, ·)`; columns are the images of the
/// basis vectors.
pub fn covering_map(g: &GroupElement) -> LorentzMatrix {
    let mut m = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut e = [0.0; 4];
        e[j] = 1.0;
        let col = spinor_action(g, &MinkowskiVector(e));
        for i in 0..4 {
            m[i][j] = col.0[i];
        }
    }
    LorentzMatrix(m)
}
