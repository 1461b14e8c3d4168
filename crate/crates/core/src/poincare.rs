//! The Poincaré group `P = R⁴ ⋊ SL(2,C)` with law
//! `(v, g)(v', g') = (v + ρ(g)v', gg')`, the auxiliary group
//! `Q = R⁴ × G × G`, lifts of functions on `P`, the two convolutions and the
//! spacetime Fourier transform.
//!
//! Elements of `Q` are written `(v, h, g)`. The translation slot is twisted
//! by the third slot `g`, while [`tilde_lift`] reads the second slot `h`:
//! `f̃(v, h, g) = f(ρ(h)v, hg)`. With this keying the invariance
//! `f̃(q⁻¹v, h, q⁻¹g) = f̃(v, hq⁻¹, g)` holds for every `f`, and the
//! convolution over `(v, g)` on the left agrees with the untwisted one.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_complex::Complex64;
use rand::Rng;

use crate::abelian::{DecayCertificate, LineGrid, R4Samples, MAX_DENSE_R4_NODES};
use crate::lie::{GroupElement, KElement, NakCoords};
use crate::matrix::CMatrix;
use crate::minkowski::{spinor_action, MinkowskiVector};
use crate::quadrature::pairwise_sum_real;
use crate::slc::{
    kernel_table, transform_samples, CoordGrid, FrequencyGrid, GaussianWignerFamily, GroupFn, Measure,
    PlancherelReport, SampledGroupFunction, SpectralTable,
};
use crate::Error;

/// Cap on samples of a non-separable function on `P`.
pub const MAX_DENSE_P_NODES: usize = 1 << 22;

/// Cap on the number of `η` nodes in a spectral table.
pub const MAX_ETA_NODES: usize = 1 << 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub type PFn = Arc<dyn Fn(&MinkowskiVector, &GroupElement) -> Complex64 + Send + Sync>;

pub type QFn = Arc<dyn Fn(&QElement) -> Complex64 + Send + Sync>;

/// A function on `P × K`, arguments `(v, g, k₁)`.
pub type LiftedPFn = Arc<dyn Fn(&MinkowskiVector, &GroupElement, &KElement) -> Complex64 + Send + Sync>;

fn random_vector<R: Rng + ?Sized>(rng: &mut R, max_v: f64) -> MinkowskiVector {
    MinkowskiVector(core::array::from_fn(|_| rng.gen_range(-max_v..=max_v)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoincareElement {
    pub v: MinkowskiVector,
    pub g: GroupElement,
}

impl PoincareElement {
    pub const IDENTITY: Self = Self { v: MinkowskiVector::ZERO, g: GroupElement::IDENTITY };

    pub const fn new(v: MinkowskiVector, g: GroupElement) -> Self {
        Self { v, g }
    }

    /// `(ρ(g⁻¹)(-v), g⁻¹)`.
    pub fn inverse(&self) -> Self {
        let gi = self.g.inverse();
        Self { v: spinor_action(&gi, &-self.v), g: gi }
    }

    /// The affine action `w ↦ v + ρ(g)w` on spacetime.
    pub fn act(&self, w: &MinkowskiVector) -> MinkowskiVector {
        self.v + spinor_action(&self.g, w)
    }

    /// Translation part uniform in `[-max_v, max_v]⁴`, group part from
    /// [`GroupElement::random`].
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_v: f64, max_t: f64, max_n: f64) -> Self {
        let v = random_vector(rng, max_v);
        Self { v, g: GroupElement::random(rng, max_t, max_n) }
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        self.v.max_abs_diff(&other.v).max(self.g.max_entry_distance(&other.g))
    }
}

impl Mul for PoincareElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self { v: self.v + spinor_action(&self.g, &rhs.v), g: self.g * rhs.g }
    }
}

pub fn poincare_mul(a: &PoincareElement, b: &PoincareElement) -> PoincareElement {
    *a * *b
}

/// An element `(v, h, g)` of `Q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QElement {
    pub v: MinkowskiVector,
    pub h: GroupElement,
    pub g: GroupElement,
}

impl QElement {
    pub const IDENTITY: Self = Self { v: MinkowskiVector::ZERO, h: GroupElement::IDENTITY, g: GroupElement::IDENTITY };

    pub const fn new(v: MinkowskiVector, h: GroupElement, g: GroupElement) -> Self {
        Self { v, h, g }
    }

    /// `P` as the subgroup `(v, I, g)`.
    pub fn embed(p: &PoincareElement) -> Self {
        Self { v: p.v, h: GroupElement::IDENTITY, g: p.g }
    }

    /// `(v, h, g) ↦ (v, g)`, a homomorphism onto `P`.
    pub fn project(&self) -> PoincareElement {
        PoincareElement { v: self.v, g: self.g }
    }

    pub fn inverse(&self) -> Self {
        let gi = self.g.inverse();
        Self { v: spinor_action(&gi, &-self.v), h: self.h.inverse(), g: gi }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_v: f64, max_t: f64, max_n: f64) -> Self {
        let v = random_vector(rng, max_v);
        let h = GroupElement::random(rng, max_t, max_n);
        Self { v, h, g: GroupElement::random(rng, max_t, max_n) }
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        self.v
            .max_abs_diff(&other.v)
            .max(self.h.max_entry_distance(&other.h))
            .max(self.g.max_entry_distance(&other.g))
    }
}

impl Mul for QElement {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self { v: self.v + spinor_action(&self.g, &rhs.v), h: self.h * rhs.h, g: self.g * rhs.g }
    }
}

pub fn q_mul(a: &QElement, b: &QElement) -> QElement {
    *a * *b
}

/// `f̃(v, h, g) = f(ρ(h)v, hg)`.
pub fn tilde_lift(f: PFn) -> QFn {
    Arc::new(move |q: &QElement| f(&spinor_action(&q.h, &q.v), &(q.h * q.g)))
}

/// `|f̃(q⁻¹v, h, q⁻¹g) - f̃(v, hq⁻¹, g)|` at one point.
pub fn invariance_defect(ft: &QFn, q: &GroupElement, x: &QElement) -> f64 {
    let qi = q.inverse();
    let lhs = ft(&QElement { v: spinor_action(&qi, &x.v), h: x.h, g: qi * x.g });
    let rhs = ft(&QElement { v: x.v, h: x.h * qi, g: x.g });
    (lhs - rhs).norm()
}

/// `h(F)(v, g) = F(ρ(g)v, g)`.
pub fn h_map(f: PFn) -> PFn {
    Arc::new(move |v: &MinkowskiVector, g: &GroupElement| f(&spinor_action(g, v), g))
}

/// `ΥF(v, (g, k₁)) = F(v, gk₁)`.
pub fn upsilon_lift_p(f: PFn) -> LiftedPFn {
    Arc::new(move |v: &MinkowskiVector, g: &GroupElement, k1: &KElement| f(v, &(*g * k1.to_group())))
}

/// `F̌(p) = conj F(p⁻¹)`.
pub fn pcheck(f: PFn) -> PFn {
    Arc::new(move |v: &MinkowskiVector, g: &GroupElement| {
        let inv = PoincareElement::new(*v, *g).inverse();
        f(&inv.v, &inv.g).conj()
    })
}

/// The left translate `x ↦ F(p⁻¹x)`.
pub fn translate_p(f: PFn, p: PoincareElement) -> PFn {
    let pi = p.inverse();
    Arc::new(move |v: &MinkowskiVector, g: &GroupElement| {
        let x = pi * PoincareElement::new(*v, *g);
        f(&x.v, &x.g)
    })
}

/// Sample storage for a function on `P`.
#[derive(Clone, Debug, PartialEq)]
pub enum PValues {
    /// `f(v, g) = φ(v) χ(g)`; `g` follows the group grid.
    Product { v: R4Samples, g: Vec<Complex64> },
    /// Row-major in `(v₁, v₂, v₃, v₄, g)`.
    Dense(Vec<Complex64>),
}

/// A function on `P` sampled on `LineGrid⁴ × CoordGrid`.
#[derive(Clone)]
pub struct SampledPFunction {
    v_grids: [LineGrid; 4],
    g_grid: Arc<CoordGrid>,
    values: PValues,
    closed_form: Option<PFn>,
    decay: DecayCertificate,
}

impl fmt::Debug for SampledPFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledPFunction")
            .field("v_grids", &self.v_grids)
            .field("g_len", &self.g_grid.len())
            .field("values", &self.values)
            .field("closed_form", &self.closed_form.is_some())
            .field("decay", &self.decay)
            .finish()
    }
}

fn v_len(grids: &[LineGrid; 4]) -> usize {
    grids.iter().map(LineGrid::count).product()
}

fn v_node(grids: &[LineGrid; 4], iv: usize) -> MinkowskiVector {
    let mut rest = iv;
    let mut out = [0.0; 4];
    for axis in (0..4).rev() {
        let m = grids[axis].count();
        out[axis] = grids[axis].node(rest % m);
        rest /= m;
    }
    MinkowskiVector(out)
}

fn v_cell(grids: &[LineGrid; 4]) -> f64 {
    grids.iter().map(LineGrid::spacing).product()
}

/// Every sample of an `R⁴` function, row-major.
fn r4_values(v: &R4Samples) -> Vec<Complex64> {
    match v {
        R4Samples::Dense { values, .. } => values.clone(),
        R4Samples::Separable { grids, factors } => (0..v_len(grids))
            .map(|iv| {
                let mut rest = iv;
                let mut acc = Complex64::new(1.0, 0.0);
                for axis in (0..4).rev() {
                    let m = grids[axis].count();
                    acc *= factors[axis][rest % m];
                    rest /= m;
                }
                acc
            })
            .collect(),
    }
}

impl SampledPFunction {
    /// `φ(v) χ(g)`. A closed form is attached with [`Self::with_closed_form`].
    pub fn product(v: R4Samples, v_decay: DecayCertificate, g: &SampledGroupFunction) -> Self {
        Self {
            v_grids: *v.grids(),
            g_grid: g.grid().clone(),
            values: PValues::Product { v, g: g.values().to_vec() },
            closed_form: None,
            decay: v_decay.combine(g.decay()),
        }
    }

    pub fn from_dense(
        v_grids: [LineGrid; 4],
        g_grid: Arc<CoordGrid>,
        values: Vec<Complex64>,
        decay: DecayCertificate,
    ) -> Result<Self, Error> {
        let expected = v_len(&v_grids) * g_grid.len();
        if values.len() != expected {
            return Err(Error::GridMismatch { expected, found: values.len() });
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidGrid("samples must be finite"));
        }
        Ok(Self { v_grids, g_grid, values: PValues::Dense(values), closed_form: None, decay })
    }

    /// Samples `f` on the full product grid, subject to the dense caps.
    pub fn sample_dense(
        v_grids: [LineGrid; 4],
        g_grid: Arc<CoordGrid>,
        f: PFn,
        decay: DecayCertificate,
    ) -> Result<Self, Error> {
        check_dense(&v_grids, g_grid.len())?;
        let elements: Vec<GroupElement> = (0..g_grid.len()).map(|i| g_grid.element(i)).collect();
        let mut values = Vec::with_capacity(v_len(&v_grids) * elements.len());
        for iv in 0..v_len(&v_grids) {
            let v = v_node(&v_grids, iv);
            values.extend(elements.iter().map(|g| f(&v, g)));
        }
        let mut out = Self::from_dense(v_grids, g_grid, values, decay)?;
        out.closed_form = Some(f);
        Ok(out)
    }

    pub fn with_closed_form(mut self, f: PFn) -> Self {
        self.closed_form = Some(f);
        self
    }

    pub fn v_grids(&self) -> &[LineGrid; 4] {
        &self.v_grids
    }

    pub fn g_grid(&self) -> &Arc<CoordGrid> {
        &self.g_grid
    }

    pub fn values(&self) -> &PValues {
        &self.values
    }

    pub fn decay(&self) -> DecayCertificate {
        self.decay
    }

    pub fn closed_form(&self) -> Result<&PFn, Error> {
        self.closed_form.as_ref().ok_or(Error::RequiresClosedForm)
    }

    /// Number of sample points, `|v-grid| · |g-grid|`.
    pub fn len(&self) -> usize {
        v_len(&self.v_grids) * self.g_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The same samples in dense storage.
    pub fn to_dense(&self) -> Result<Self, Error> {
        check_dense(&self.v_grids, self.g_grid.len())?;
        let values = match &self.values {
            PValues::Dense(values) => values.clone(),
            PValues::Product { v, g } => r4_values(v).iter().flat_map(|a| g.iter().map(move |b| a * b)).collect(),
        };
        Ok(Self { values: PValues::Dense(values), ..self.clone() })
    }

    /// `∫|f|² dv dμ(g)`, Lebesgue in `v`.
    pub fn norm_sqr(&self, measure: Measure) -> f64 {
        let grid = &self.g_grid;
        match &self.values {
            PValues::Product { v, g } => {
                v.norm_sqr() * pairwise_sum_real(0, g.len(), &|i| g[i].norm_sqr() * grid.weight(i, measure))
            }
            PValues::Dense(values) => {
                let n = grid.len();
                v_cell(&self.v_grids)
                    * pairwise_sum_real(0, values.len(), &|i| values[i].norm_sqr() * grid.weight(i % n, measure))
            }
        }
    }
}

fn check_dense(v_grids: &[LineGrid; 4], g_len: usize) -> Result<(), Error> {
    if let Some(g) = v_grids.iter().find(|g| g.count() > MAX_DENSE_R4_NODES) {
        return Err(Error::SizeExceeded { requested: g.count(), cap: MAX_DENSE_R4_NODES });
    }
    let total = v_len(v_grids) * g_len;
    if total > MAX_DENSE_P_NODES {
        return Err(Error::SizeExceeded { requested: total, cap: MAX_DENSE_P_NODES });
    }
    Ok(())
}

/// The non-zero quadrature terms `ψ(v', g') dv' dg'` of a sampled function,
/// with `g'⁻¹` precomputed.
pub struct PQuadrature {
    terms: Terms,
}

enum Terms {
    Product { v: Vec<(MinkowskiVector, Complex64)>, g: Vec<(GroupElement, GroupElement, Complex64)> },
    Dense(Vec<(MinkowskiVector, GroupElement, GroupElement, Complex64)>),
}

impl PQuadrature {
    /// Haar weights on the group slot, Lebesgue on the translation slot.
    pub fn new(psi: &SampledPFunction) -> Self {
        let grid = &psi.g_grid;
        let cell = v_cell(&psi.v_grids);
        let group = |ig: usize| {
            let g = grid.element(ig);
            (g, g.inverse())
        };
        let terms = match &psi.values {
            PValues::Product { v, g } => {
                let v = r4_values(v)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, z)| *z != ZERO)
                    .map(|(iv, z)| (v_node(&psi.v_grids, iv), z * cell))
                    .collect();
                let g = g
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| **z != ZERO)
                    .map(|(ig, z)| {
                        let (e, ei) = group(ig);
                        (e, ei, z * grid.weight(ig, Measure::Haar))
                    })
                    .collect();
                Terms::Product { v, g }
            }
            PValues::Dense(values) => {
                let n = grid.len();
                let elements: Vec<(GroupElement, GroupElement)> = (0..n).map(group).collect();
                let terms = values
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| **z != ZERO)
                    .map(|(i, z)| {
                        let (iv, ig) = (i / n, i % n);
                        let (e, ei) = elements[ig];
                        (v_node(&psi.v_grids, iv), e, ei, z * (cell * grid.weight(ig, Measure::Haar)))
                    })
                    .collect();
                Terms::Dense(terms)
            }
        };
        Self { terms }
    }

    /// Number of non-zero terms.
    pub fn len(&self) -> usize {
        match &self.terms {
            Terms::Product { v, g } => v.len() * g.len(),
            Terms::Dense(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `Σ F(v', g', g'⁻¹) ψ(v', g') w` in a fixed order.
    pub fn sum(&self, f: impl Fn(&MinkowskiVector, &GroupElement, &GroupElement) -> Complex64) -> Complex64 {
        match &self.terms {
            Terms::Product { v, g } => {
                let mut acc = ZERO;
                for (vp, wv) in v {
                    let mut inner = ZERO;
                    for (gp, gi, wg) in g {
                        inner += f(vp, gp, gi) * wg;
                    }
                    acc += inner * wv;
                }
                acc
            }
            Terms::Dense(t) => t.iter().map(|(vp, gp, gi, w)| f(vp, gp, gi) * w).sum(),
        }
    }
}

/// `ψ ∗ f̃(x) = ∫ f̃((v', g')⁻¹ x) ψ(v', g') dv' dg'`, with `P` acting on `Q`
/// through [`QElement::embed`].
pub fn convolve_p_at(quad: &PQuadrature, ft: &QFn, x: &QElement) -> Complex64 {
    quad.sum(|vp, _, gi| {
        let inv = QElement { v: spinor_action(gi, &-*vp), h: GroupElement::IDENTITY, g: *gi };
        ft(&(inv * *x))
    })
}

/// `ψ ∗_c f̃(v, h, g) = ∫ f̃(v - v', hg'⁻¹, g) ψ(v', g') dv' dg'`.
pub fn convolve_c_at(quad: &PQuadrature, ft: &QFn, x: &QElement) -> Complex64 {
    quad.sum(|vp, _, gi| ft(&QElement { v: x.v - *vp, h: x.h * *gi, g: x.g }))
}

/// [`convolve_p_at`] with `f̃` the lift of `f`'s closed form.
pub fn convolve_p(psi: &SampledPFunction, f: &SampledPFunction, points: &[QElement]) -> Result<Vec<Complex64>, Error> {
    let ft = tilde_lift(f.closed_form()?.clone());
    let quad = PQuadrature::new(psi);
    Ok(points.iter().map(|x| convolve_p_at(&quad, &ft, x)).collect())
}

pub fn convolve_c(psi: &SampledPFunction, f: &SampledPFunction, points: &[QElement]) -> Result<Vec<Complex64>, Error> {
    let ft = tilde_lift(f.closed_form()?.clone());
    let quad = PQuadrature::new(psi);
    Ok(points.iter().map(|x| convolve_c_at(&quad, &ft, x)).collect())
}

/// `ψ ∗_c Φ(v, (g, k₁)) = ∫ Φ(v - v', (gg'⁻¹, k₁)) ψ(v', g') dv' dg'`.
pub fn convolve_c_lifted_at(
    quad: &PQuadrature,
    phi: &LiftedPFn,
    v: &MinkowskiVector,
    g: &GroupElement,
    k1: &KElement,
) -> Complex64 {
    quad.sum(|vp, _, gi| phi(&(*v - *vp), &(*g * *gi), k1))
}

/// `F ∗ Υh(F̌)` at `(0, (I, I))`, computed by convolution quadrature over
/// `F`'s grid.
pub fn corollary_norm(f: &SampledPFunction) -> Result<Complex64, Error> {
    let phi = upsilon_lift_p(h_map(pcheck(f.closed_form()?.clone())));
    let quad = PQuadrature::new(f);
    Ok(convolve_c_lifted_at(&quad, &phi, &MinkowskiVector::ZERO, &GroupElement::IDENTITY, &KElement::IDENTITY))
}

/// `F_{R⁴}TF f(η, j, ξ, λ)` on an `η` grid times a [`FrequencyGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct PSpectralTable {
    eta: [LineGrid; 4],
    layers: Layers,
}

#[derive(Clone, Debug, PartialEq)]
enum Layers {
    /// `φ̂(η) · TFχ`.
    Product { eta_values: Vec<Complex64>, table: SpectralTable },
    /// One table per `η` node.
    Dense(Vec<SpectralTable>),
}

impl PSpectralTable {
    pub fn eta_grids(&self) -> &[LineGrid; 4] {
        &self.eta
    }

    pub fn eta_len(&self) -> usize {
        v_len(&self.eta)
    }

    pub fn eta_point(&self, e: usize) -> [f64; 4] {
        v_node(&self.eta, e).0
    }

    pub fn freq(&self) -> &FrequencyGrid {
        match &self.layers {
            Layers::Product { table, .. } => table.freq(),
            Layers::Dense(tables) => tables[0].freq(),
        }
    }

    pub fn jmax_twice(&self) -> u32 {
        match &self.layers {
            Layers::Product { table, .. } => table.jmax_twice(),
            Layers::Dense(tables) => tables[0].jmax_twice(),
        }
    }

    pub fn get(&self, eta_idx: usize, two_j: u32, freq_idx: usize) -> CMatrix {
        match &self.layers {
            Layers::Product { eta_values, table } => table.get(two_j, freq_idx).scale(eta_values[eta_idx]),
            Layers::Dense(tables) => tables[eta_idx].get(two_j, freq_idx).clone(),
        }
    }

    /// `Σ_j d_j ∫∫ ‖·‖²_HS dη dλ dξ`, without `(2π)⁻⁷`.
    pub fn weighted_norm_sqr(&self) -> f64 {
        let cell = v_cell(&self.eta);
        match &self.layers {
            Layers::Product { eta_values, table } => {
                cell * pairwise_sum_real(0, eta_values.len(), &|i| eta_values[i].norm_sqr()) * table.weighted_norm_sqr()
            }
            Layers::Dense(tables) => cell * pairwise_sum_real(0, tables.len(), &|i| tables[i].weighted_norm_sqr()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match &self.layers {
            Layers::Product { eta_values, table } => {
                eta_values.iter().map(|z| z.norm()).fold(0.0, f64::max) * table.max_abs()
            }
            Layers::Dense(tables) => tables.iter().map(SpectralTable::max_abs).fold(0.0, f64::max),
        }
    }

    /// Entrywise comparison over every node; tables must share grids.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let nf = self.freq().len();
        let mut worst: f64 = 0.0;
        for e in 0..self.eta_len() {
            for tj in 0..=self.jmax_twice() {
                for i in 0..nf {
                    worst = worst.max(self.get(e, tj, i).max_abs_diff(&other.get(e, tj, i)));
                }
            }
        }
        worst
    }
}

/// Applies a 1-D kernel along one axis of a row-major tensor.
fn contract_axis(data: &[Complex64], shape: &mut [usize; 5], axis: usize, ker: &[Complex64], n_out: usize) -> Vec<Complex64> {
    let n_in = shape[axis];
    let outer: usize = shape[..axis].iter().product();
    let inner: usize = shape[axis + 1..].iter().product();
    let mut out = alloc::vec![ZERO; outer * n_out * inner];
    for o in 0..outer {
        for e in 0..n_out {
            let k = &ker[e * n_in..(e + 1) * n_in];
            let dst = &mut out[(o * n_out + e) * inner..(o * n_out + e + 1) * inner];
            for (i, kv) in k.iter().enumerate() {
                let src = &data[(o * n_in + i) * inner..(o * n_in + i + 1) * inner];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += s * kv;
                }
            }
        }
    }
    shape[axis] = n_out;
    out
}

fn r4_transform(
    v_grids: &[LineGrid; 4],
    eta: &[LineGrid; 4],
    data: &[Complex64],
    trailing: usize,
) -> Vec<Complex64> {
    let mut shape = [v_grids[0].count(), v_grids[1].count(), v_grids[2].count(), v_grids[3].count(), trailing];
    let mut cur = data.to_vec();
    for axis in (0..4).rev() {
        let ker = kernel_table(&v_grids[axis], &eta[axis]);
        cur = contract_axis(&cur, &mut shape, axis, &ker, eta[axis].count());
    }
    cur
}

/// The spacetime transform: `∫ f(v, nak) e^{-i⟨η, v⟩} D^j(k⁻¹) e^{-iλt}
/// e^{-i⟨ξ, n⟩}` with Lebesgue measure in every coordinate.
pub fn poincare_fourier(
    f: &SampledPFunction,
    eta: &[LineGrid; 4],
    freq: &FrequencyGrid,
    jmax_twice: u32,
) -> Result<PSpectralTable, Error> {
    let eta_len = v_len(eta);
    if eta_len > MAX_ETA_NODES {
        return Err(Error::SizeExceeded { requested: eta_len, cap: MAX_ETA_NODES });
    }
    let layers = match &f.values {
        PValues::Product { v, g } => {
            let eta_values = match v {
                R4Samples::Separable { grids, factors } => {
                    let axes: Vec<Vec<Complex64>> = (0..4)
                        .map(|a| r4_axis(&grids[a], &factors[a], &eta[a]))
                        .collect::<Result<_, _>>()?;
                    (0..eta_len)
                        .map(|e| {
                            let mut rest = e;
                            let mut acc = Complex64::new(1.0, 0.0);
                            for axis in (0..4).rev() {
                                let m = eta[axis].count();
                                acc *= axes[axis][rest % m];
                                rest /= m;
                            }
                            acc
                        })
                        .collect()
                }
                R4Samples::Dense { grids, values } => r4_transform(grids, eta, values, 1),
            };
            Layers::Product { eta_values, table: transform_samples(&f.g_grid, g, freq, jmax_twice)? }
        }
        PValues::Dense(values) => {
            if eta_len > MAX_DENSE_R4_NODES.pow(4) {
                return Err(Error::SizeExceeded { requested: eta_len, cap: MAX_DENSE_R4_NODES.pow(4) });
            }
            let n = f.g_grid.len();
            let mixed = r4_transform(&f.v_grids, eta, values, n);
            let tables = (0..eta_len)
                .map(|e| transform_samples(&f.g_grid, &mixed[e * n..(e + 1) * n], freq, jmax_twice))
                .collect::<Result<_, _>>()?;
            Layers::Dense(tables)
        }
    };
    Ok(PSpectralTable { eta: *eta, layers })
}

fn r4_axis(grid: &LineGrid, samples: &[Complex64], freq: &LineGrid) -> Result<Vec<Complex64>, Error> {
    crate::abelian::ft_line_grid(grid, samples, freq)
}

/// Both sides of the spacetime Plancherel identity, with `(2π)⁻⁷`.
pub fn poincare_plancherel(
    f: &SampledPFunction,
    eta: &[LineGrid; 4],
    freq: &FrequencyGrid,
    jmax_twice: u32,
) -> Result<PlancherelReport, Error> {
    let table = poincare_fourier(f, eta, freq, jmax_twice)?;
    Ok(PlancherelReport::new(f.norm_sqr(Measure::Product), f.norm_sqr(Measure::Haar), table.weighted_norm_sqr(), 7))
}

/// Relative residual of the product-measure reading.
pub fn poincare_plancherel_residual(
    f: &SampledPFunction,
    eta: &[LineGrid; 4],
    freq: &FrequencyGrid,
    jmax_twice: u32,
) -> Result<f64, Error> {
    Ok(poincare_plancherel(f, eta, freq, jmax_twice)?.residual_product)
}

/// `f(v, g) = e^{-|v|²/2s²} · χ(g)` with `χ` from [`GaussianWignerFamily`];
/// `|v|` is Euclidean.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparablePFamily {
    pub v_sigma: f64,
    pub g: GaussianWignerFamily,
}

impl SeparablePFamily {
    pub fn closed_form(&self) -> PFn {
        let s = self.v_sigma;
        let chi = self.g.closed_form();
        Arc::new(move |v: &MinkowskiVector, g: &GroupElement| {
            let r2: f64 = v.0.iter().map(|c| c * c).sum();
            chi(g) * (-r2 / (2.0 * s * s)).exp()
        })
    }

    fn v_norm_sqr(&self) -> f64 {
        let a = core::f64::consts::PI * self.v_sigma * self.v_sigma;
        a * a
    }

    pub fn norm_sqr_product(&self) -> f64 {
        self.v_norm_sqr() * self.g.norm_sqr_product()
    }

    pub fn norm_sqr_haar(&self) -> f64 {
        self.v_norm_sqr() * self.g.norm_sqr_haar()
    }

    pub fn sample(&self, v_grids: [LineGrid; 4], g_grid: Arc<CoordGrid>) -> Result<SampledPFunction, Error> {
        let s = self.v_sigma;
        let factors = v_grids.map(|grid| grid.sample(|x| Complex64::new((-x * x / (2.0 * s * s)).exp(), 0.0)));
        let decay = v_grids
            .iter()
            .fold(DecayCertificate::EXACT, |acc, grid| acc.combine(DecayCertificate::gaussian(s, grid.half_width())));
        let v = R4Samples::separable(v_grids, factors)?;
        Ok(SampledPFunction::product(v, decay, &self.g.sample(g_grid)).with_closed_form(self.closed_form()))
    }
}

/// `b(u) = e^{1 - 1/(1 - u²)}` on `|u| < 1`, zero outside.
pub fn bump(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    }
}

/// A compactly supported test function on `P`: a product of bumps in the
/// four translation coordinates and in the `(x, y, t)` coordinates of
/// `g = n(x + iy) a(t) k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompactBump {
    pub radius_v: f64,
    pub radius_g: f64,
}

impl CompactBump {
    fn g_part(radius: f64) -> GroupFn {
        Arc::new(move |g: &GroupElement| {
            let c = NakCoords::decompose(g);
            Complex64::new(bump(c.z.re / radius) * bump(c.z.im / radius) * bump(c.t / radius), 0.0)
        })
    }

    pub fn closed_form(&self) -> PFn {
        let (rv, chi) = (self.radius_v, Self::g_part(self.radius_g));
        Arc::new(move |v: &MinkowskiVector, g: &GroupElement| {
            chi(g) * v.0.iter().map(|c| bump(c / rv)).product::<f64>()
        })
    }

    /// Samples on the given grids; the certificate is exact when the grids
    /// cover the support.
    pub fn sample(&self, v_grids: [LineGrid; 4], g_grid: Arc<CoordGrid>) -> Result<SampledPFunction, Error> {
        let rv = self.radius_v;
        let covered = v_grids.iter().all(|g| g.half_width() >= rv)
            && [g_grid.x(), g_grid.y(), g_grid.t()].iter().all(|g| g.half_width() >= self.radius_g);
        let decay = if covered { DecayCertificate::EXACT } else { DecayCertificate { eps_tail: 1.0 } };
        let factors = v_grids.map(|grid| grid.sample(|x| Complex64::new(bump(x / rv), 0.0)));
        let v = R4Samples::separable(v_grids, factors)?;
        let g = SampledGroupFunction::from_fn(g_grid, Self::g_part(self.radius_g), DecayCertificate::EXACT);
        Ok(SampledPFunction::product(v, decay, &g).with_closed_form(self.closed_form()))
    }
}
