//! Midpoint-rule Fourier transforms on `R`, `R²` and `R⁴`.
//!
//! Forward kernels are `e^{-i⟨ω, x⟩}` with no prefactor; every inverse or
//! Plancherel statement carries `(2π)^{-dim}` explicitly.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::quadrature::pairwise_sum;
use crate::Error;

/// Largest per-axis node count accepted by [`LineGrid::new`].
pub const MAX_LINE_NODES: usize = 512;
/// Largest per-axis node count for dense four-dimensional samples.
pub const MAX_DENSE_R4_NODES: usize = 16;

/// Midpoint grid on `[-L, L]`: `m` cells of width `h = 2L/m`, nodes at the
/// cell centres `-L + (i + ½)h`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineGrid {
    half_width: f64,
    count: usize,
}

impl LineGrid {
    pub fn new(half_width: f64, count: usize) -> Result<Self, Error> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid("half-width must be positive and finite"));
        }
        if count < 8 || count % 2 != 0 {
            return Err(Error::InvalidGrid("node count must be even and at least 8"));
        }
        if count > MAX_LINE_NODES {
            return Err(Error::SizeExceeded { requested: count, cap: MAX_LINE_NODES });
        }
        Ok(Self { half_width, count })
    }

    /// Grid with spacing at most `h` covering `[-L, L]`, rounded up to an even
    /// count of at least 8.
    pub fn with_spacing(half_width: f64, h: f64) -> Result<Self, Error> {
        let m = (2.0 * half_width / h).ceil() as usize;
        Self::new(half_width, (m + m % 2).max(8))
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.count as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.node(i)).collect()
    }

    pub fn sample(&self, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        (0..self.count).map(|i| f(self.node(i))).collect()
    }

    fn check_len(&self, found: usize) -> Result<(), Error> {
        if found != self.count {
            return Err(Error::GridMismatch { expected: self.count, found });
        }
        Ok(())
    }
}

/// Upper bound on the `L²` mass a sampled function has outside its truncated
/// domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayCertificate {
    pub eps_tail: f64,
}

impl DecayCertificate {
    pub const EXACT: Self = Self { eps_tail: 0.0 };

    /// Tail of `∫ |e^{-x²/2σ²}|² dx` outside `[-L, L]`, bounded by
    /// `(σ²/L) e^{-L²/σ²}`.
    pub fn gaussian(sigma: f64, half_width: f64) -> Self {
        let r = half_width / sigma;
        Self { eps_tail: sigma * sigma / half_width * (-r * r).exp() }
    }

    /// Certificate of a product of functions with unit-scale masses: tails
    /// add to first order.
    pub fn combine(self, other: Self) -> Self {
        Self { eps_tail: self.eps_tail + other.eps_tail }
    }
}

/// A point in the joint frequency space: `λ` dual to `t`, `ξ` dual to the
/// `N` coordinate, `η` dual to the translation part of the Poincaré group.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FrequencyPoint {
    pub lambda: f64,
    pub xi: [f64; 2],
    pub eta: [f64; 4],
}

/// `h Σ f(tᵢ) e^{-iλtᵢ}` at one frequency.
pub fn ft_line(grid: &LineGrid, samples: &[Complex64], lambda: f64) -> Result<Complex64, Error> {
    grid.check_len(samples.len())?;
    let h = grid.spacing();
    Ok(pairwise_sum(0, samples.len(), &|i| {
        samples[i] * Complex64::from_polar(1.0, -lambda * grid.node(i))
    }) * h)
}

/// [`ft_line`] at every node of a frequency grid.
pub fn ft_line_grid(
    grid: &LineGrid,
    samples: &[Complex64],
    freq: &LineGrid,
) -> Result<Vec<Complex64>, Error> {
    grid.check_len(samples.len())?;
    (0..freq.count()).map(|i| ft_line(grid, samples, freq.node(i))).collect()
}

/// `h₁h₂ Σ f(xᵢ, yⱼ) e^{-i(ξ₁xᵢ + ξ₂yⱼ)}` for samples stored row-major in
/// `(x, y)`.
pub fn ft_plane(
    gx: &LineGrid,
    gy: &LineGrid,
    samples: &[Complex64],
    xi: [f64; 2],
) -> Result<Complex64, Error> {
    let (mx, my) = (gx.count(), gy.count());
    if samples.len() != mx * my {
        return Err(Error::GridMismatch { expected: mx * my, found: samples.len() });
    }
    let inner: Vec<Complex64> = (0..mx)
        .map(|i| ft_line(gy, &samples[i * my..(i + 1) * my], xi[1]))
        .collect::<Result<_, _>>()?;
    ft_line(gx, &inner, xi[0])
}

/// [`ft_plane`] over a product frequency grid, returned row-major in
/// `(ξ₁, ξ₂)`. The `y` sums are shared across `ξ₁`.
pub fn ft_plane_grid(
    gx: &LineGrid,
    gy: &LineGrid,
    samples: &[Complex64],
    fx: &LineGrid,
    fy: &LineGrid,
) -> Result<Vec<Complex64>, Error> {
    let (mx, my) = (gx.count(), gy.count());
    if samples.len() != mx * my {
        return Err(Error::GridMismatch { expected: mx * my, found: samples.len() });
    }
    let mut partial = alloc::vec![Complex64::new(0.0, 0.0); fy.count() * mx];
    for b in 0..fy.count() {
        for i in 0..mx {
            partial[b * mx + i] = ft_line(gy, &samples[i * my..(i + 1) * my], fy.node(b))?;
        }
    }
    let mut out = Vec::with_capacity(fx.count() * fy.count());
    for a in 0..fx.count() {
        for b in 0..fy.count() {
            out.push(ft_line(gx, &partial[b * mx..(b + 1) * mx], fx.node(a))?);
        }
    }
    Ok(out)
}

/// Samples of a function on `R⁴`.
#[derive(Clone, Debug, PartialEq)]
pub enum R4Samples {
    /// `f(v) = Π fᵢ(vᵢ)` with each factor sampled on its own grid.
    Separable { grids: [LineGrid; 4], factors: [Vec<Complex64>; 4] },
    /// Full tensor of samples, row-major in `(v₁, v₂, v₃, v₄)`.
    Dense { grids: [LineGrid; 4], values: Vec<Complex64> },
}

impl R4Samples {
    pub fn separable(grids: [LineGrid; 4], factors: [Vec<Complex64>; 4]) -> Result<Self, Error> {
        for (g, f) in grids.iter().zip(factors.iter()) {
            g.check_len(f.len())?;
        }
        Ok(Self::Separable { grids, factors })
    }

    pub fn dense(grids: [LineGrid; 4], values: Vec<Complex64>) -> Result<Self, Error> {
        for g in &grids {
            if g.count() > MAX_DENSE_R4_NODES {
                return Err(Error::SizeExceeded { requested: g.count(), cap: MAX_DENSE_R4_NODES });
            }
        }
        let n: usize = grids.iter().map(LineGrid::count).product();
        if values.len() != n {
            return Err(Error::GridMismatch { expected: n, found: values.len() });
        }
        Ok(Self::Dense { grids, values })
    }

    /// Dense samples of `f` on the product grid.
    pub fn sample_dense(grids: [LineGrid; 4], f: impl Fn([f64; 4]) -> Complex64) -> Result<Self, Error> {
        for g in &grids {
            if g.count() > MAX_DENSE_R4_NODES {
                return Err(Error::SizeExceeded { requested: g.count(), cap: MAX_DENSE_R4_NODES });
            }
        }
        let m = grids.map(|g| g.count());
        let mut values = Vec::with_capacity(m.iter().product());
        for i0 in 0..m[0] {
            for i1 in 0..m[1] {
                for i2 in 0..m[2] {
                    for i3 in 0..m[3] {
                        values.push(f([grids[0].node(i0), grids[1].node(i1), grids[2].node(i2), grids[3].node(i3)]));
                    }
                }
            }
        }
        Ok(Self::Dense { grids, values })
    }

    pub fn grids(&self) -> &[LineGrid; 4] {
        match self {
            Self::Separable { grids, .. } | Self::Dense { grids, .. } => grids,
        }
    }

    /// `∫ |f|² dv` by the same midpoint rule.
    pub fn norm_sqr(&self) -> f64 {
        match self {
            Self::Separable { grids, factors } => grids
                .iter()
                .zip(factors.iter())
                .map(|(g, f)| g.spacing() * f.iter().map(|z| z.norm_sqr()).sum::<f64>())
                .product(),
            Self::Dense { grids, values } => {
                let cell: f64 = grids.iter().map(LineGrid::spacing).product();
                cell * crate::quadrature::pairwise_sum_real(0, values.len(), &|i| values[i].norm_sqr())
            }
        }
    }
}

/// `∫ f(v) e^{-i⟨η, v⟩} dv` by the midpoint rule, with the Euclidean pairing
/// `⟨η, v⟩ = Σ ηᵢvᵢ`.
pub fn ft_r4(samples: &R4Samples, eta: [f64; 4]) -> Result<Complex64, Error> {
    match samples {
        R4Samples::Separable { grids, factors } => {
            let mut acc = Complex64::new(1.0, 0.0);
            for i in 0..4 {
                acc *= ft_line(&grids[i], &factors[i], eta[i])?;
            }
            Ok(acc)
        }
        R4Samples::Dense { grids, values } => {
            let m = grids.map(|g| g.count());
            // contract one axis at a time, last axis first
            let mut data = values.clone();
            let mut len = values.len();
            for axis in (0..4).rev() {
                let stride = m[axis];
                len /= stride;
                let reduced: Vec<Complex64> = (0..len)
                    .map(|r| ft_line(&grids[axis], &data[r * stride..(r + 1) * stride], eta[axis]))
                    .collect::<Result<_, _>>()?;
                data = reduced;
            }
            Ok(data[0])
        }
    }
}
