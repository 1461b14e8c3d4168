//! The combined transform on `G = SL(2,C)`, convolutions on `G` and
//! `G × K`, and the Plancherel / inversion harness.
//!
//! Sampled functions live on a product grid in the coordinates
//! `g = n(z)·a(t)·k` with `z = x + iy`. The transform of `f` is
//!
//! `TFf(λ, ξ, j) = ∫∫∫ f(n(z) a(t) k) e^{-iλt} e^{-i⟨ξ, z⟩} D^j(k⁻¹) dk dt d²z`
//!
//! taken against the product measure of the coordinates. With this
//! normalization `∫|f|² dk dt d²z = (2π)⁻³ Σ_j d_j ∭ ‖TFf‖²_HS`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::abelian::{DecayCertificate, FrequencyPoint, LineGrid};
use crate::lie::{GroupElement, HaarConvention, IwasawaFactors, KElement, NakCoords, Ordering};
use crate::matrix::CMatrix;
use crate::quadrature::{pairwise_sum, pairwise_sum_real};
use crate::su2::{wigner_d, IrrepIndex, KQuadrature, KSpectrum};
use crate::{plancherel_constant, Error};

/// A complex function on `SL(2,C)` that can be evaluated anywhere.
pub type GroupFn = Arc<dyn Fn(&GroupElement) -> Complex64 + Send + Sync>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which measure an integral over the coordinate grid uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    /// `dk dt d²z`, the measure the transform is unitary for.
    Product,
    /// Haar measure `e^{-4t} dk dt d²z` in these coordinates.
    Haar,
}

/// Product grid over `(k, x, y, t)` in one Iwasawa chart, with `n = x + iy`.
/// Sampled functions and transforms use the NAK chart `g = n·a(t)·k`;
/// other charts are useful as integration grids.
///
/// Flat indices run over `k` slowest and `t` fastest.
#[derive(Clone, Debug)]
pub struct CoordGrid {
    ordering: Ordering,
    k: KQuadrature,
    x: LineGrid,
    y: LineGrid,
    t: LineGrid,
}

impl CoordGrid {
    pub fn new(ordering: Ordering, k: KQuadrature, x: LineGrid, y: LineGrid, t: LineGrid) -> Self {
        Self { ordering, k, x, y, t }
    }

    /// Grid in the NAK chart.
    pub fn nak(k: KQuadrature, x: LineGrid, y: LineGrid, t: LineGrid) -> Self {
        Self::new(Ordering::Nak, k, x, y, t)
    }

    /// The same nodes read in another chart.
    pub fn with_ordering(&self, ordering: Ordering) -> Self {
        Self { ordering, ..self.clone() }
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn k(&self) -> &KQuadrature {
        &self.k
    }

    pub fn x(&self) -> &LineGrid {
        &self.x
    }

    pub fn y(&self) -> &LineGrid {
        &self.y
    }

    pub fn t(&self) -> &LineGrid {
        &self.t
    }

    /// Number of `(x, y, t)` nodes.
    pub fn spatial_len(&self) -> usize {
        self.x.count() * self.y.count() * self.t.count()
    }

    pub fn len(&self) -> usize {
        self.k.len() * self.spatial_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, ik: usize, ix: usize, iy: usize, it: usize) -> usize {
        ((ik * self.x.count() + ix) * self.y.count() + iy) * self.t.count() + it
    }

    /// `(ik, ix, iy, it)` of a flat index.
    pub fn unflatten(&self, idx: usize) -> (usize, usize, usize, usize) {
        let mt = self.t.count();
        let my = self.y.count();
        let mx = self.x.count();
        let it = idx % mt;
        let rest = idx / mt;
        let iy = rest % my;
        let rest = rest / my;
        (rest / mx, rest % mx, iy, it)
    }

    pub fn coords(&self, idx: usize) -> IwasawaFactors {
        let (ik, ix, iy, it) = self.unflatten(idx);
        IwasawaFactors {
            k: self.k.nodes()[ik],
            t: self.t.node(it),
            n: Complex64::new(self.x.node(ix), self.y.node(iy)),
        }
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        self.ordering.compose(&self.coords(idx))
    }

    /// `h_x h_y h_t`.
    pub fn cell(&self) -> f64 {
        self.x.spacing() * self.y.spacing() * self.t.spacing()
    }

    pub fn weight(&self, idx: usize, measure: Measure) -> f64 {
        let (ik, _, _, it) = self.unflatten(idx);
        let w = self.k.weights()[ik] * self.cell();
        match measure {
            Measure::Product => w,
            Measure::Haar => w * HaarConvention::new(self.ordering).density(self.t.node(it)),
        }
    }

    fn require_nak(&self) -> Result<(), Error> {
        if self.ordering != Ordering::Nak {
            return Err(Error::InvalidGrid("operation needs a grid in the NAK chart"));
        }
        Ok(())
    }
}

/// Samples of a function on the grid, optionally with a closed form for
/// off-grid evaluation.
#[derive(Clone)]
pub struct SampledGroupFunction {
    grid: Arc<CoordGrid>,
    values: Vec<Complex64>,
    closed_form: Option<GroupFn>,
    decay: DecayCertificate,
}

impl fmt::Debug for SampledGroupFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledGroupFunction")
            .field("nodes", &self.values.len())
            .field("closed_form", &self.closed_form.is_some())
            .field("decay", &self.decay)
            .finish()
    }
}

impl SampledGroupFunction {
    pub fn from_fn(grid: Arc<CoordGrid>, f: GroupFn, decay: DecayCertificate) -> Self {
        let values = (0..grid.len()).map(|i| f(&grid.element(i))).collect();
        Self { grid, values, closed_form: Some(f), decay }
    }

    /// Grid-only samples; operations that need off-grid values will fail
    /// with [`Error::RequiresClosedForm`].
    pub fn from_samples(grid: Arc<CoordGrid>, values: Vec<Complex64>, decay: DecayCertificate) -> Result<Self, Error> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch { expected: grid.len(), found: values.len() });
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidGrid("samples must be finite"));
        }
        Ok(Self { grid, values, closed_form: None, decay })
    }

    pub fn grid(&self) -> &Arc<CoordGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn decay(&self) -> DecayCertificate {
        self.decay
    }

    pub fn closed_form(&self) -> Result<&GroupFn, Error> {
        self.closed_form.as_ref().ok_or(Error::RequiresClosedForm)
    }

    pub fn eval(&self, g: &GroupElement) -> Result<Complex64, Error> {
        Ok(self.closed_form()?(g))
    }

    /// Same function resampled on another grid.
    pub fn resample(&self, grid: Arc<CoordGrid>) -> Result<Self, Error> {
        Ok(Self::from_fn(grid, self.closed_form()?.clone(), self.decay))
    }

    pub fn integral(&self, measure: Measure) -> Complex64 {
        pairwise_sum(0, self.values.len(), &|i| self.values[i] * self.grid.weight(i, measure))
    }

    pub fn norm_sqr(&self, measure: Measure) -> f64 {
        pairwise_sum_real(0, self.values.len(), &|i| self.values[i].norm_sqr() * self.grid.weight(i, measure))
    }
}

/// `f̌(g) = conj f(g⁻¹)`.
pub fn fcheck(f: &SampledGroupFunction) -> Result<SampledGroupFunction, Error> {
    let inner = f.closed_form()?.clone();
    let check: GroupFn = Arc::new(move |g: &GroupElement| inner(&g.inverse()).conj());
    Ok(SampledGroupFunction::from_fn(f.grid.clone(), check, f.decay))
}

/// The analogue of [`fcheck`] when the coordinates `(z, t, k)` are treated
/// as the product group `R² × R × K`: `(z, t, k) ↦ conj f(-z, -t, k⁻¹)`.
pub fn coordinate_fcheck(f: &SampledGroupFunction) -> Result<SampledGroupFunction, Error> {
    let inner = f.closed_form()?.clone();
    let check: GroupFn = Arc::new(move |g: &GroupElement| {
        let c = NakCoords::decompose(g);
        inner(&NakCoords { z: -c.z, t: -c.t, k: c.k.inverse() }.compose()).conj()
    });
    Ok(SampledGroupFunction::from_fn(f.grid.clone(), check, f.decay))
}

/// `g ↦ f(left·g·right)`.
pub fn translate(f: &SampledGroupFunction, left: GroupElement, right: GroupElement) -> Result<SampledGroupFunction, Error> {
    let inner = f.closed_form()?.clone();
    let moved: GroupFn = Arc::new(move |g: &GroupElement| inner(&(left * *g * right)));
    Ok(SampledGroupFunction::from_fn(f.grid.clone(), moved, f.decay))
}

/// `(φ ∗ f)(X) = ∫ f(Y⁻¹X) φ(Y) dY` at one point, with `Y` running over the
/// grid of `phi` under Haar measure.
pub fn convolve_g_at(f: &SampledGroupFunction, phi: &SampledGroupFunction, x: &GroupElement) -> Result<Complex64, Error> {
    let fc = f.closed_form()?;
    let grid = &phi.grid;
    Ok(pairwise_sum(0, grid.len(), &|i| {
        let y = grid.element(i);
        fc(&(y.inverse() * *x)) * phi.values[i] * grid.weight(i, Measure::Haar)
    }))
}

/// [`convolve_g_at`] sampled on `out`. The result keeps a closed form that
/// re-runs the quadrature.
pub fn convolve_g(
    f: &SampledGroupFunction,
    phi: &SampledGroupFunction,
    out: Arc<CoordGrid>,
) -> Result<SampledGroupFunction, Error> {
    f.closed_form()?;
    let (f2, phi2) = (f.clone(), phi.clone());
    let closed: GroupFn = Arc::new(move |x: &GroupElement| convolve_g_at(&f2, &phi2, x).unwrap_or(ZERO));
    Ok(SampledGroupFunction::from_fn(out, closed, f.decay.combine(phi.decay)))
}

/// How a convolution over `G` is carried out in the coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConvolutionReading {
    /// True group convolution: group products and Haar measure.
    Group,
    /// `(z, t, k)` treated as the product group `R² × R × K` with product
    /// measure.
    Coordinate,
}

/// A function on `G × K` sampled at `(n(z)a(t), k₁)`, with `k₁` on the
/// grid's `K` quadrature. The flat layout is that of [`CoordGrid`].
#[derive(Clone)]
pub struct LiftedFunction {
    grid: Arc<CoordGrid>,
    values: Vec<Complex64>,
    closed_form: Option<Arc<dyn Fn(&GroupElement, &KElement) -> Complex64 + Send + Sync>>,
}

impl fmt::Debug for LiftedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiftedFunction").field("nodes", &self.values.len()).finish()
    }
}

impl LiftedFunction {
    pub fn from_samples(grid: Arc<CoordGrid>, values: Vec<Complex64>) -> Result<Self, Error> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch { expected: grid.len(), found: values.len() });
        }
        Ok(Self { grid, values, closed_form: None })
    }

    pub fn grid(&self) -> &Arc<CoordGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, g: &GroupElement, k1: &KElement) -> Result<Complex64, Error> {
        Ok(self.closed_form.as_ref().ok_or(Error::RequiresClosedForm)?(g, k1))
    }
}

/// `Υ(f)(g, k₁) = f(g·k₁)`.
pub fn lift_upsilon(f: &SampledGroupFunction) -> Result<LiftedFunction, Error> {
    let inner = f.closed_form()?.clone();
    let grid = f.grid.clone();
    grid.require_nak()?;
    let values = (0..grid.len())
        .map(|i| {
            let c = grid.coords(i);
            let na = NakCoords { z: c.n, t: c.t, k: KElement::IDENTITY }.compose();
            inner(&(na * c.k.to_group()))
        })
        .collect();
    let closed = Arc::new(move |g: &GroupElement, k1: &KElement| inner(&(*g * k1.to_group())));
    Ok(LiftedFunction { grid, values, closed_form: Some(closed) })
}

/// `Υ(f) ∗ ψ (n(z)a(t), k₁) = ∫_G Υ(f)(g·g₂⁻¹, k₁) ψ(g₂) dg₂`, with `g₂` on
/// the grid of `psi` (any chart for the group reading, the NAK chart for the
/// coordinate reading).
pub fn lifted_convolution_at(
    f: &SampledGroupFunction,
    psi: &SampledGroupFunction,
    reading: ConvolutionReading,
    z: Complex64,
    t: f64,
    k1: &KElement,
) -> Result<Complex64, Error> {
    let fc = f.closed_form()?;
    let grid = &psi.grid;
    Ok(match reading {
        ConvolutionReading::Group => {
            let g = NakCoords { z, t, k: KElement::IDENTITY }.compose();
            let k1g = k1.to_group();
            pairwise_sum(0, grid.len(), &|i| {
                let g2 = grid.element(i);
                fc(&(g * g2.inverse() * k1g)) * psi.values[i] * grid.weight(i, Measure::Haar)
            })
        }
        ConvolutionReading::Coordinate => {
            grid.require_nak()?;
            pairwise_sum(0, grid.len(), &|i| {
            let c2 = grid.coords(i);
            let arg = NakCoords { z: z - c2.n, t: t - c2.t, k: c2.k.inverse() * *k1 };
            fc(&arg.compose()) * psi.values[i] * grid.weight(i, Measure::Product)
            })
        }
    })
}

/// [`lifted_convolution_at`] at every node of `out`.
pub fn lifted_convolution(
    f: &SampledGroupFunction,
    psi: &SampledGroupFunction,
    reading: ConvolutionReading,
    out: Arc<CoordGrid>,
) -> Result<LiftedFunction, Error> {
    f.closed_form()?;
    out.require_nak()?;
    let values = (0..out.len())
        .map(|i| {
            let c = out.coords(i);
            lifted_convolution_at(f, psi, reading, c.n, c.t, &c.k)
        })
        .collect::<Result<Vec<_>, _>>()?;
    LiftedFunction::from_samples(out, values)
}

/// Product grid over `(λ, ξ₁, ξ₂)`; flat indices run `λ` slowest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyGrid {
    pub lambda: LineGrid,
    pub xi1: LineGrid,
    pub xi2: LineGrid,
}

impl FrequencyGrid {
    pub fn len(&self) -> usize {
        self.lambda.count() * self.xi1.count() * self.xi2.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell(&self) -> f64 {
        self.lambda.spacing() * self.xi1.spacing() * self.xi2.spacing()
    }

    pub fn point(&self, idx: usize) -> FrequencyPoint {
        let n2 = self.xi2.count();
        let n1 = self.xi1.count();
        FrequencyPoint {
            lambda: self.lambda.node(idx / (n1 * n2)),
            xi: [self.xi1.node((idx / n2) % n1), self.xi2.node(idx % n2)],
            eta: [0.0; 4],
        }
    }
}

/// Transform values: one `(2j+1)²` matrix per irrep and frequency node.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTable {
    freq: FrequencyGrid,
    blocks: Vec<Vec<CMatrix>>,
}

impl SpectralTable {
    pub fn zeros(freq: FrequencyGrid, jmax_twice: u32) -> Self {
        let blocks = (0..=jmax_twice as usize).map(|tj| alloc::vec![CMatrix::zeros(tj + 1); freq.len()]).collect();
        Self { freq, blocks }
    }

    pub fn freq(&self) -> &FrequencyGrid {
        &self.freq
    }

    pub fn jmax_twice(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    pub fn get(&self, two_j: u32, freq_idx: usize) -> &CMatrix {
        &self.blocks[two_j as usize][freq_idx]
    }

    pub fn get_mut(&mut self, two_j: u32, freq_idx: usize) -> &mut CMatrix {
        &mut self.blocks[two_j as usize][freq_idx]
    }

    /// `Σ_j d_j ∭ ‖TF(λ, ξ, j)‖²_HS` by the midpoint rule, without the
    /// `(2π)⁻³`.
    pub fn weighted_norm_sqr(&self) -> f64 {
        let cell = self.freq.cell();
        self.blocks
            .iter()
            .enumerate()
            .map(|(tj, mats)| {
                (tj + 1) as f64 * cell * pairwise_sum_real(0, mats.len(), &|i| mats[i].hs_norm_sqr())
            })
            .sum()
    }

    /// `Σ_j d_j ∭ tr TF(λ, ξ, j)`, without the `(2π)⁻³`.
    pub fn weighted_trace_integral(&self) -> Complex64 {
        let cell = self.freq.cell();
        self.blocks
            .iter()
            .enumerate()
            .map(|(tj, mats)| pairwise_sum(0, mats.len(), &|i| mats[i].trace()) * ((tj + 1) as f64 * cell))
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().flatten().map(CMatrix::max_abs).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.blocks
            .iter()
            .flatten()
            .zip(other.blocks.iter().flatten())
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Entrywise map of matrices at matching positions.
    pub fn zip_map(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Self {
        let blocks = self
            .blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| f(x, y)).collect())
            .collect();
        Self { freq: self.freq, blocks }
    }
}

/// Exponential tables `h·e^{-iωᵢxⱼ}` for a space grid and a frequency grid.
pub(crate) fn kernel_table(space: &LineGrid, freq: &LineGrid) -> Vec<Complex64> {
    let h = space.spacing();
    let mut out = Vec::with_capacity(space.count() * freq.count());
    for a in 0..freq.count() {
        let w = freq.node(a);
        for i in 0..space.count() {
            out.push(Complex64::from_polar(h, -w * space.node(i)));
        }
    }
    out
}

/// Transform of samples laid out as a [`CoordGrid`] where the `K` slot is
/// integrated against `D^j(k⁻¹)`.
pub(crate) fn transform_samples(
    grid: &CoordGrid,
    values: &[Complex64],
    freq: &FrequencyGrid,
    jmax_twice: u32,
) -> Result<SpectralTable, Error> {
    IrrepIndex::new(jmax_twice)?;
    grid.require_nak()?;
    if jmax_twice > grid.k().band() {
        return Err(Error::BandlimitExceeded { two_j: jmax_twice, cap: grid.k().band() });
    }
    if values.len() != grid.len() {
        return Err(Error::GridMismatch { expected: grid.len(), found: values.len() });
    }
    let (mx, my, mt) = (grid.x.count(), grid.y.count(), grid.t.count());
    let spatial = grid.spatial_len();
    let (nl, n1, n2) = (freq.lambda.count(), freq.xi1.count(), freq.xi2.count());
    let et = kernel_table(&grid.t, &freq.lambda);
    let ex = kernel_table(&grid.x, &freq.xi1);
    let ey = kernel_table(&grid.y, &freq.xi2);
    let kw = grid.k().weights();
    let mut table = SpectralTable::zeros(*freq, jmax_twice);
    for tj in 0..=jmax_twice {
        let dim = tj as usize + 1;
        let d_adj: Vec<CMatrix> =
            grid.k().nodes().iter().map(|k| wigner_d(IrrepIndex::new(tj).unwrap(), k).adjoint()).collect();
        for a in 0..dim {
            for b in 0..dim {
                // K integral for every spatial node
                let mut s = alloc::vec![ZERO; spatial];
                for (ik, d) in d_adj.iter().enumerate() {
                    let coef = d[(a, b)] * kw[ik];
                    let base = ik * spatial;
                    for (p, sp) in s.iter_mut().enumerate() {
                        *sp += values[base + p] * coef;
                    }
                }
                // t → λ: layout (x, y, λ)
                let mut s1 = alloc::vec![ZERO; mx * my * nl];
                for xy in 0..mx * my {
                    let row = &s[xy * mt..(xy + 1) * mt];
                    for l in 0..nl {
                        let ker = &et[l * mt..(l + 1) * mt];
                        s1[xy * nl + l] = row.iter().zip(ker).map(|(u, v)| u * v).sum();
                    }
                }
                // y → ξ₂: layout (x, λ, ξ₂)
                let mut s2 = alloc::vec![ZERO; mx * nl * n2];
                for ix in 0..mx {
                    for l in 0..nl {
                        for c in 0..n2 {
                            let ker = &ey[c * my..(c + 1) * my];
                            let mut acc = ZERO;
                            for (iy, kv) in ker.iter().enumerate() {
                                acc += s1[(ix * my + iy) * nl + l] * kv;
                            }
                            s2[(ix * nl + l) * n2 + c] = acc;
                        }
                    }
                }
                // x → ξ₁: layout (λ, ξ₁, ξ₂)
                for l in 0..nl {
                    for r in 0..n1 {
                        let ker = &ex[r * mx..(r + 1) * mx];
                        for c in 0..n2 {
                            let mut acc = ZERO;
                            for (ix, kv) in ker.iter().enumerate() {
                                acc += s2[(ix * nl + l) * n2 + c] * kv;
                            }
                            table.blocks[tj as usize][(l * n1 + r) * n2 + c][(a, b)] = acc;
                        }
                    }
                }
            }
        }
    }
    Ok(table)
}

/// The transform `TFf(λ, ξ, j)` on a frequency grid for `two_j ≤ jmax_twice`.
pub fn sl2c_fourier(f: &SampledGroupFunction, freq: &FrequencyGrid, jmax_twice: u32) -> Result<SpectralTable, Error> {
    transform_samples(&f.grid, &f.values, freq, jmax_twice)
}

/// The transform of a function on `G × K`, integrating its `K₁` slot against
/// `D^j(k₁⁻¹)` and its `NA` part against the abelian kernels.
pub fn lifted_fourier(h: &LiftedFunction, freq: &FrequencyGrid, jmax_twice: u32) -> Result<SpectralTable, Error> {
    transform_samples(&h.grid, &h.values, freq, jmax_twice)
}

/// `(2π)⁻³ Σ_j d_j ∭ tr TF(λ, ξ, j)`, the inversion formula at the identity.
pub fn inversion_from_table(table: &SpectralTable) -> Complex64 {
    table.weighted_trace_integral() * plancherel_constant(3)
}

pub fn inversion_at_identity(f: &SampledGroupFunction, freq: &FrequencyGrid, jmax_twice: u32) -> Result<Complex64, Error> {
    Ok(inversion_from_table(&sl2c_fourier(f, freq, jmax_twice)?))
}

/// `|l - r| / max(l, r)`, or 0 when both vanish.
pub fn relative_residual(l: f64, r: f64) -> f64 {
    let scale = l.abs().max(r.abs());
    if scale == 0.0 {
        0.0
    } else {
        (l - r).abs() / scale
    }
}

/// Both sides of the Plancherel identity on `G` and the derived residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlancherelReport {
    /// `∫|f|² dk dt d²z`.
    pub direct_product: f64,
    /// `∫|f|² dg` with Haar measure.
    pub direct_haar: f64,
    /// `Σ_j d_j ∭ ‖TFf‖²` without any constant.
    pub spectral_raw: f64,
    /// `(2π)⁻³` times `spectral_raw`.
    pub spectral: f64,
    /// Product-measure reading.
    pub residual_product: f64,
    /// Haar reading.
    pub residual_haar: f64,
    /// Product-measure reading with the `(2π)⁻³` dropped.
    pub residual_unnormalized: f64,
}

impl PlancherelReport {
    pub fn new(direct_product: f64, direct_haar: f64, spectral_raw: f64, dim: u32) -> Self {
        let spectral = spectral_raw * plancherel_constant(dim);
        Self {
            direct_product,
            direct_haar,
            spectral_raw,
            spectral,
            residual_product: relative_residual(direct_product, spectral),
            residual_haar: relative_residual(direct_haar, spectral),
            residual_unnormalized: relative_residual(direct_product, spectral_raw),
        }
    }

    /// `spectral_raw / direct_product`, which should be `(2π)^dim`.
    pub fn unnormalized_ratio(&self) -> f64 {
        self.spectral_raw / self.direct_product
    }
}

pub fn plancherel_g(f: &SampledGroupFunction, freq: &FrequencyGrid, jmax_twice: u32) -> Result<PlancherelReport, Error> {
    let table = sl2c_fourier(f, freq, jmax_twice)?;
    Ok(PlancherelReport::new(f.norm_sqr(Measure::Product), f.norm_sqr(Measure::Haar), table.weighted_norm_sqr(), 3))
}

/// Largest entrywise gap between `TF(H)` and `TFf · TFψ†`-style products,
/// scaled by `max(1, peak of the expected table)`.
pub fn scaled_table_residual(actual: &SpectralTable, expected: &SpectralTable) -> f64 {
    actual.max_abs_diff(expected) / expected.max_abs().max(1.0)
}

/// `TFf · (TFf)†` at every node.
pub fn gram_table(tf: &SpectralTable) -> SpectralTable {
    tf.zip_map(tf, |a, _| a * &a.adjoint())
}

/// `∫ f dμ` in product coordinates for a given Haar convention. The `n`
/// slot is `x + iy`.
pub fn haar_integral(
    conv: HaarConvention,
    k: &KQuadrature,
    x: &LineGrid,
    y: &LineGrid,
    t: &LineGrid,
    f: impl Fn(&GroupElement) -> Complex64,
) -> Complex64 {
    let cell = x.spacing() * y.spacing() * t.spacing();
    let (mx, my, mt) = (x.count(), y.count(), t.count());
    let per_k = mx * my * mt;
    pairwise_sum(0, k.len() * per_k, &|i| {
        let (ik, rest) = (i / per_k, i % per_k);
        let (ix, iy, it) = (rest / (my * mt), (rest / mt) % my, rest % mt);
        let tt = t.node(it);
        let factors = IwasawaFactors { k: k.nodes()[ik], t: tt, n: Complex64::new(x.node(ix), y.node(iy)) };
        f(&conv.ordering.compose(&factors)) * (k.weights()[ik] * cell * conv.density(tt))
    })
}

/// `f(n(z)a(t)k) = e^{-|z|²/2σ²} e^{-t²/2τ²} Σ_j tr(C_j D^j(k))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianWignerFamily {
    pub sigma: f64,
    pub tau: f64,
    pub coefficients: KSpectrum,
}

impl GaussianWignerFamily {
    /// Random coefficients for `two_j ≤ jmax_twice`, rescaled so `f(e) = 1`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, sigma: f64, tau: f64, jmax_twice: u32) -> Self {
        let mut c = KSpectrum::zeros(jmax_twice);
        loop {
            for tj in 0..=jmax_twice {
                for v in c.block_mut(tj).as_mut_slice() {
                    *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let at_e: Complex64 = c.blocks().iter().map(CMatrix::trace).sum();
            if at_e.norm() > 0.25 {
                let inv = Complex64::new(1.0, 0.0) / at_e;
                return Self { sigma, tau, coefficients: c.scaled(inv) };
            }
        }
    }

    /// `e^{-|z|²/2σ²} e^{-t²/2τ²}`, constant on `K`.
    pub fn gaussian(sigma: f64, tau: f64) -> Self {
        let mut c = KSpectrum::zeros(0);
        c.block_mut(0)[(0, 0)] = Complex64::new(1.0, 0.0);
        Self { sigma, tau, coefficients: c }
    }

    pub fn eval_coords(&self, c: &NakCoords) -> Complex64 {
        let radial = (-c.z.norm_sqr() / (2.0 * self.sigma * self.sigma) - c.t * c.t / (2.0 * self.tau * self.tau)).exp();
        let mut k_part = ZERO;
        for (tj, block) in self.coefficients.blocks().iter().enumerate() {
            let d = wigner_d(IrrepIndex::new(tj as u32).unwrap(), &c.k);
            k_part += (block * &d).trace();
        }
        k_part * radial
    }

    pub fn closed_form(&self) -> GroupFn {
        let me = self.clone();
        Arc::new(move |g: &GroupElement| me.eval_coords(&NakCoords::decompose(g)))
    }

    /// `∫|f|² dk dt d²z = πσ² · τ√π · Σ_j ‖C_j‖²_HS / d_j`.
    pub fn norm_sqr_product(&self) -> f64 {
        let k: f64 = self
            .coefficients
            .blocks()
            .iter()
            .enumerate()
            .map(|(tj, b)| b.hs_norm_sqr() / (tj + 1) as f64)
            .sum();
        let pi = core::f64::consts::PI;
        pi * self.sigma * self.sigma * self.tau * pi.sqrt() * k
    }

    /// `∫|f|² dg` under the NAK Haar density `e^{-ρt}`; the extra factor over
    /// [`Self::norm_sqr_product`] is `e^{ρ²τ²/4}`.
    pub fn norm_sqr_haar(&self) -> f64 {
        let rho = crate::lie::MODULUS_EXPONENT;
        self.norm_sqr_product() * (rho * rho * self.tau * self.tau / 4.0).exp()
    }

    pub fn decay(&self, grid: &CoordGrid) -> DecayCertificate {
        let half = grid.x.half_width().min(grid.y.half_width());
        DecayCertificate::gaussian(self.sigma, half)
            .combine(DecayCertificate::gaussian(self.sigma, half))
            .combine(DecayCertificate::gaussian(self.tau, grid.t.half_width()))
    }

    pub fn sample(&self, grid: Arc<CoordGrid>) -> SampledGroupFunction {
        let decay = self.decay(&grid);
        SampledGroupFunction::from_fn(grid, self.closed_form(), decay)
    }
}
