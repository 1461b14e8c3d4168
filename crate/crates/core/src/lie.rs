//! `SL(2,C)` algebra: elements, the compact factor `K = SU(2)`, Iwasawa
//! factors `g = k·a(t)·n` and the Haar-measure conventions in product
//! coordinates.
//!
//! Conventions used throughout the crate:
//!
//! - `a(t) = diag(eᵗ, e⁻ᵗ)`, so the `A` coordinate is `t = log a` with
//!   Lebesgue measure `dt`.
//! - `n(z) = [[1, z], [0, 1]]` with Lebesgue measure `d²z` on `C ≅ R²`.
//! - `k = [[α, β], [-β̄, ᾱ]]` with `|α|² + |β|² = 1`, Haar measure of mass 1.
//! - The canonical factorization is `g = k·a·n` (KAN); other orderings are
//!   obtained by moving `a` past `n` (`a(t)·n(z) = n(e^{2t} z)·a(t)`).

use core::f64::consts::PI;
use core::ops::{Mul, Neg};

use num_complex::Complex64;
use rand::Rng;

use crate::Error;

/// Tolerance for accepting (and renormalizing) a determinant or unit norm.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-9;

/// Real Jacobian exponent of `n ↦ a n a⁻¹` on `N ≅ R²`: each real coordinate
/// of `n` is scaled by `e^{2t}`, so the Jacobian is `e^{4t}`.
pub const MODULUS_EXPONENT: f64 = 4.0;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix of unit determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl GroupElement {
    pub const IDENTITY: Self = Self { a: ONE, b: ZERO, c: ZERO, d: ONE };

    /// Builds `[[a, b], [c, d]]`. A determinant within
    /// [`CONSTRUCTION_TOLERANCE`] of 1 is renormalized by dividing every entry
    /// by its principal square root.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, Error> {
        let det = a * d - b * c;
        let deviation = (det - ONE).norm();
        if deviation.is_nan() || deviation > CONSTRUCTION_TOLERANCE {
            return Err(Error::Determinant { deviation });
        }
        if det == ONE {
            return Ok(Self { a, b, c, d });
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub(crate) const fn from_entries_unchecked(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    ) -> Self {
        Self { a, b, c, d }
    }

    /// `diag(eᵗ, e⁻ᵗ)`.
    pub fn a_factor(t: f64) -> Self {
        Self::from_entries_unchecked(Complex64::new(t.exp(), 0.0), ZERO, ZERO, Complex64::new((-t).exp(), 0.0))
    }

    /// `[[1, n], [0, 1]]`.
    pub fn n_factor(n: Complex64) -> Self {
        Self::from_entries_unchecked(ONE, n, ZERO, ONE)
    }

    /// Entries in row-major order `[a, b, c, d]`.
    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Adjugate `(d, -b, -c, a)`, the inverse when the determinant is 1.
    pub fn inverse(&self) -> Self {
        Self::from_entries_unchecked(self.d, -self.b, -self.c, self.a)
    }

    /// Conjugate transpose `g†`, again an element of `SL(2,C)`.
    pub fn adjoint(&self) -> Self {
        Self::from_entries_unchecked(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_entry_distance(&self, other: &Self) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Squared Frobenius norm `tr(g g†)`.
    pub fn frobenius_sqr(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum()
    }

    /// A random element built from random Iwasawa factors: Haar-random `k`,
    /// `t` uniform in `[-max_t, max_t]`, `n` uniform in the square of
    /// half-width `max_n`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_t: f64, max_n: f64) -> Self {
        IwasawaFactors::random(rng, max_t, max_n).compose()
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        let out = GroupElement::from_entries_unchecked(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        );
        debug_assert!(
            (out.det() - ONE).norm() <= CONSTRUCTION_TOLERANCE,
            "determinant drift in product: {}",
            (out.det() - ONE).norm()
        );
        out
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        GroupElement::from_entries_unchecked(-self.a, -self.b, -self.c, -self.d)
    }
}

/// An element of `K = SU(2)`, stored by its Cayley–Klein parameters.
///
/// The matrix is `[[α, β], [-β̄, ᾱ]]`. Euler angles follow the z-y-z
/// convention `k = R_z(φ) R_y(θ) R_z(ψ)`, which gives
/// `α = e^{-i(φ+ψ)/2} cos(θ/2)` and `β = -e^{-i(φ-ψ)/2} sin(θ/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KElement {
    alpha: Complex64,
    beta: Complex64,
}

impl KElement {
    pub const IDENTITY: Self = Self { alpha: ONE, beta: ZERO };

    /// Accepts `(α, β)` within [`CONSTRUCTION_TOLERANCE`] of the unit sphere
    /// and projects onto it.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self, Error> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        let deviation = (norm_sqr - 1.0).abs();
        if deviation.is_nan() || deviation > CONSTRUCTION_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self::normalized(alpha, beta))
    }

    fn normalized(alpha: Complex64, beta: Complex64) -> Self {
        let r = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        Self { alpha: alpha / r, beta: beta / r }
    }

    pub fn from_euler(phi: f64, theta: f64, psi: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        let alpha = Complex64::from_polar(c, -0.5 * (phi + psi));
        let beta = -Complex64::from_polar(s, -0.5 * (phi - psi));
        Self { alpha, beta }
    }

    /// Euler angles `(φ, θ, ψ)` with `θ ∈ [0, π]`. At the coordinate
    /// singularities `θ ∈ {0, π}` the angle `ψ` is set to 0.
    pub fn to_euler(&self) -> (f64, f64, f64) {
        let c = self.alpha.norm();
        let s = self.beta.norm();
        let theta = 2.0 * s.atan2(c);
        if s == 0.0 {
            return (-2.0 * self.alpha.arg(), theta, 0.0);
        }
        if c == 0.0 {
            return (-2.0 * (-self.beta).arg(), theta, 0.0);
        }
        let sum = -2.0 * self.alpha.arg();
        let diff = -2.0 * (-self.beta).arg();
        (0.5 * (sum + diff), theta, 0.5 * (sum - diff))
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn to_group(&self) -> GroupElement {
        GroupElement::from_entries_unchecked(self.alpha, self.beta, -self.beta.conj(), self.alpha.conj())
    }

    pub fn inverse(&self) -> Self {
        Self { alpha: self.alpha.conj(), beta: -self.beta }
    }

    /// Deviation of `|α|² + |β|²` from 1.
    pub fn unit_deviation(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr() - 1.0).abs()
    }

    /// Haar-random element: `φ ∈ [0, 2π)`, `ψ ∈ [0, 4π)`, `cos θ` uniform.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let phi = rng.gen::<f64>() * 2.0 * PI;
        let psi = rng.gen::<f64>() * 4.0 * PI;
        let cos_theta = 2.0 * rng.gen::<f64>() - 1.0;
        Self::from_euler(phi, cos_theta.acos(), psi)
    }
}

impl Mul for KElement {
    type Output = KElement;

    fn mul(self, rhs: KElement) -> KElement {
        // first row of [[α, β], [-β̄, ᾱ]] · [[α', β'], [-β̄', ᾱ']]
        let alpha = self.alpha * rhs.alpha - self.beta * rhs.beta.conj();
        let beta = self.alpha * rhs.beta + self.beta * rhs.alpha.conj();
        KElement::normalized(alpha, beta)
    }
}

/// Product-coordinate factors `(k, t, n)`. Their meaning depends on the
/// [`Ordering`]; for the canonical KAN ordering `g = k·a(t)·n(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IwasawaFactors {
    pub k: KElement,
    pub t: f64,
    pub n: Complex64,
}

impl IwasawaFactors {
    pub const IDENTITY: Self = Self { k: KElement::IDENTITY, t: 0.0, n: ZERO };

    /// `g = k·a(t)·n`, computed from the columns of `g` (QR with the
    /// triangular factor's diagonal forced positive real).
    pub fn decompose(g: &GroupElement) -> Self {
        let [g11, g12, g21, g22] = g.entries();
        let r_sqr = g11.norm_sqr() + g21.norm_sqr();
        let r = r_sqr.sqrt();
        let alpha = g11 / r;
        let beta = -g21.conj() / r;
        let n = (g11.conj() * g12 + g21.conj() * g22) / r_sqr;
        Self { k: KElement::normalized(alpha, beta), t: r.ln(), n }
    }

    /// `k·a(t)·n`.
    pub fn compose(&self) -> GroupElement {
        let (alpha, beta) = (self.k.alpha, self.k.beta);
        let et = self.t.exp();
        let emt = (-self.t).exp();
        GroupElement::from_entries_unchecked(
            alpha * et,
            alpha * et * self.n + beta * emt,
            -beta.conj() * et,
            -beta.conj() * et * self.n + alpha.conj() * emt,
        )
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_t: f64, max_n: f64) -> Self {
        let k = KElement::random(rng);
        let t = (2.0 * rng.gen::<f64>() - 1.0) * max_t;
        let n = Complex64::new(
            (2.0 * rng.gen::<f64>() - 1.0) * max_n,
            (2.0 * rng.gen::<f64>() - 1.0) * max_n,
        );
        Self { k, t, n }
    }
}

/// Coordinates of `g = n(z)·a(t)·k`, the ordering in which sampled functions
/// on `SL(2,C)` are stored.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NakCoords {
    pub z: Complex64,
    pub t: f64,
    pub k: KElement,
}

impl NakCoords {
    /// Reads the factors off the rows of `g`: the second row is
    /// `e⁻ᵗ(-β̄, ᾱ)` and the first row is `eᵗ(α, β) + z·(second row)`.
    pub fn decompose(g: &GroupElement) -> Self {
        let [g11, g12, g21, g22] = g.entries();
        let row2_sqr = g21.norm_sqr() + g22.norm_sqr();
        let emt = row2_sqr.sqrt();
        let z = (g11 * g21.conj() + g12 * g22.conj()) / row2_sqr;
        let et = 1.0 / emt;
        let alpha = (g11 - z * g21) / et;
        let beta = (g12 - z * g22) / et;
        Self { z, t: -emt.ln(), k: KElement::normalized(alpha, beta) }
    }

    pub fn compose(&self) -> GroupElement {
        let (alpha, beta) = (self.k.alpha, self.k.beta);
        let et = self.t.exp();
        let emt = (-self.t).exp();
        GroupElement::from_entries_unchecked(
            alpha * et - self.z * emt * beta.conj(),
            beta * et + self.z * emt * alpha.conj(),
            -beta.conj() * emt,
            alpha.conj() * emt,
        )
    }
}

/// Order of the three Iwasawa factors in a product-coordinate chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ordering {
    /// `g = k·a·n`
    Kan,
    /// `g = n·a·k`
    Nak,
    /// `g = k·n·a`
    Kna,
    /// `g = a·n·k`
    Ank,
}

impl Ordering {
    pub const ALL: [Ordering; 4] = [Ordering::Kan, Ordering::Nak, Ordering::Kna, Ordering::Ank];

    /// Factors of `g` in this ordering.
    pub fn decompose(self, g: &GroupElement) -> IwasawaFactors {
        match self {
            Ordering::Kan => IwasawaFactors::decompose(g),
            Ordering::Kna => {
                // k n(z) a(t) = k a(t) n(e^{-2t} z)
                let f = IwasawaFactors::decompose(g);
                IwasawaFactors { n: f.n * (2.0 * f.t).exp(), ..f }
            }
            Ordering::Nak => {
                let c = NakCoords::decompose(g);
                IwasawaFactors { k: c.k, t: c.t, n: c.z }
            }
            Ordering::Ank => {
                // a(t) n(z) k = n(e^{2t} z) a(t) k
                let c = NakCoords::decompose(g);
                IwasawaFactors { k: c.k, t: c.t, n: c.z * (-2.0 * c.t).exp() }
            }
        }
    }

    /// Multiplies the factors back together in this ordering.
    pub fn compose(self, f: &IwasawaFactors) -> GroupElement {
        let k = f.k.to_group();
        let a = GroupElement::a_factor(f.t);
        let n = GroupElement::n_factor(f.n);
        match self {
            Ordering::Kan => f.compose(),
            Ordering::Nak => NakCoords { z: f.n, t: f.t, k: f.k }.compose(),
            Ordering::Kna => k * n * a,
            Ordering::Ank => a * n * k,
        }
    }
}

/// How a Haar integral over `SL(2,C)` is written in product coordinates:
/// `∫ f(g) dg = ∫∫∫ f(factors) · density(t) dk dt d²n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HaarConvention {
    pub ordering: Ordering,
    /// Jacobian exponent of `n ↦ a n a⁻¹`; the correct value is
    /// [`MODULUS_EXPONENT`]. Other values exist only to demonstrate that they
    /// break invariance.
    pub modulus_exponent: f64,
}

impl HaarConvention {
    pub const fn new(ordering: Ordering) -> Self {
        Self { ordering, modulus_exponent: MODULUS_EXPONENT }
    }

    pub const fn with_exponent(ordering: Ordering, modulus_exponent: f64) -> Self {
        Self { ordering, modulus_exponent }
    }

    /// Jacobian weight at `A`-coordinate `t`: `e^{+ρt}` for KAN, `e^{-ρt}`
    /// for NAK, and 1 for KNA and ANK (where `n` already sits on the far side
    /// of `a`), with `ρ` the modulus exponent.
    pub fn density(&self, t: f64) -> f64 {
        match self.ordering {
            Ordering::Kan => (self.modulus_exponent * t).exp(),
            Ordering::Nak => (-self.modulus_exponent * t).exp(),
            Ordering::Kna | Ordering::Ank => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Random element from random entries `a, b, c` with `d = (1 + bc)/a`,
    /// independent of the Iwasawa code path.
    fn random_by_entries(rng: &mut ChaCha8Rng) -> GroupElement {
        let mut draw = || c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (mut a, b, cc) = (draw(), draw(), draw());
        if a.norm() < 0.2 {
            a += c(0.5, 0.0);
        }
        GroupElement::new(a, b, cc, (ONE + b * cc) / a).unwrap()
    }

    #[test]
    fn construction_examples() {
        assert_eq!(GroupElement::new(ONE, ZERO, ZERO, ONE).unwrap(), GroupElement::IDENTITY);
        let g = GroupElement::new(c(2.0, 0.0), ZERO, ZERO, c(0.5, 0.0)).unwrap();
        assert_eq!(g.det(), ONE);
        let err = GroupElement::new(ONE, ONE, ONE, c(2.0, 1e-3)).unwrap_err();
        match err {
            Error::Determinant { deviation } => assert!((deviation - 1e-3).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn near_unit_determinant_is_renormalized() {
        let g = GroupElement::new(c(1.0 + 4e-10, 0.0), ZERO, ZERO, ONE).unwrap();
        assert!((g.det() - ONE).norm() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(GroupElement::IDENTITY.inverse(), GroupElement::IDENTITY);
        let g = GroupElement::new(c(2.0, 0.0), ZERO, ZERO, c(0.5, 0.0)).unwrap();
        assert_eq!(g.inverse().entries(), [c(0.5, 0.0), ZERO, ZERO, c(2.0, 0.0)]);
    }

    #[test]
    fn group_axioms_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let (g1, g2, g3) = (random_by_entries(&mut rng), random_by_entries(&mut rng), random_by_entries(&mut rng));
            assert!((g1 * GroupElement::IDENTITY).max_entry_distance(&g1) == 0.0);
            assert!((g1 * g1.inverse()).max_entry_distance(&GroupElement::IDENTITY) <= 1e-13 * g1.frobenius_sqr());
            let lhs = (g1 * g2) * g3;
            let rhs = g1 * (g2 * g3);
            let scale = g1.frobenius_sqr().sqrt() * g2.frobenius_sqr().sqrt() * g3.frobenius_sqr().sqrt();
            assert!(lhs.max_entry_distance(&rhs) <= 1e-15 * scale.max(1.0));
        }
    }

    #[test]
    fn euler_round_trip_away_from_singularities() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let phi = rng.gen_range(-1.5..1.5);
            let theta = rng.gen_range(0.05..(PI - 0.05));
            let psi = rng.gen_range(-1.5..1.5);
            let k = KElement::from_euler(phi, theta, psi);
            assert!(k.unit_deviation() <= 1e-12);
            let (p2, t2, s2) = k.to_euler();
            assert!((p2 - phi).abs() < 1e-10 && (t2 - theta).abs() < 1e-10 && (s2 - psi).abs() < 1e-10);
        }
    }

    #[test]
    fn euler_extraction_reproduces_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..200 {
            let k = KElement::random(&mut rng);
            let (p, t, s) = k.to_euler();
            let back = KElement::from_euler(p, t, s);
            assert!((back.alpha - k.alpha).norm() < 1e-12 && (back.beta - k.beta).norm() < 1e-12);
        }
        for k in [KElement::IDENTITY, KElement::from_euler(0.3, PI, 0.0), KElement::from_euler(0.7, 0.0, 0.0)] {
            let (p, t, s) = k.to_euler();
            assert_eq!(s, 0.0);
            let back = KElement::from_euler(p, t, s);
            assert!((back.alpha - k.alpha).norm() < 1e-12 && (back.beta - k.beta).norm() < 1e-12);
        }
    }

    #[test]
    fn k_multiplication_matches_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let (k1, k2) = (KElement::random(&mut rng), KElement::random(&mut rng));
            let direct = k1.to_group() * k2.to_group();
            assert!((k1 * k2).to_group().max_entry_distance(&direct) < 1e-14);
            assert!((k1 * k1.inverse()).to_group().max_entry_distance(&GroupElement::IDENTITY) < 1e-15);
        }
    }

    #[test]
    fn iwasawa_examples() {
        let f = IwasawaFactors::decompose(&GroupElement::IDENTITY);
        assert_eq!(f, IwasawaFactors::IDENTITY);
        let g = GroupElement::new(c(2.0, 0.0), ZERO, ZERO, c(0.5, 0.0)).unwrap();
        let f = IwasawaFactors::decompose(&g);
        assert_eq!(f.k, KElement::IDENTITY);
        assert!((f.t - 2.0f64.ln()).abs() < 1e-15);
        assert_eq!(f.n, ZERO);
        assert_eq!(IwasawaFactors::IDENTITY.compose(), GroupElement::IDENTITY);
        let diag = IwasawaFactors { t: 2.0f64.ln(), ..IwasawaFactors::IDENTITY }.compose();
        assert!(diag.max_entry_distance(&g) < 1e-15);
    }

    #[test]
    fn iwasawa_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let g = random_by_entries(&mut rng);
            let f = IwasawaFactors::decompose(&g);
            assert!(f.k.unit_deviation() <= 1e-12);
            assert!(f.compose().max_entry_distance(&g) <= 1e-12);
        }
        for _ in 0..1000 {
            let f = IwasawaFactors::random(&mut rng, 2.0, 2.0);
            let back = IwasawaFactors::decompose(&f.compose());
            assert!((back.t - f.t).abs() <= 1e-10);
            assert!((back.n - f.n).norm() <= 1e-10);
            assert!(back.k.to_group().max_entry_distance(&f.k.to_group()) <= 1e-10);
        }
    }

    #[test]
    fn every_ordering_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let g = random_by_entries(&mut rng);
            for ord in Ordering::ALL {
                let f = ord.decompose(&g);
                assert!(ord.compose(&f).max_entry_distance(&g) <= 1e-12, "{ord:?}");
            }
        }
    }

    #[test]
    fn nak_matches_inverse_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let g = random_by_entries(&mut rng);
            let direct = NakCoords::decompose(&g);
            let kan = IwasawaFactors::decompose(&g.inverse());
            assert!((direct.t + kan.t).abs() < 1e-12);
            assert!((direct.z + kan.n).norm() < 1e-11 * (1.0 + kan.n.norm()));
            assert!(direct.k.to_group().max_entry_distance(&kan.k.inverse().to_group()) < 1e-12);
        }
    }

    #[test]
    fn haar_density_examples() {
        let kan = HaarConvention::new(Ordering::Kan);
        let nak = HaarConvention::new(Ordering::Nak);
        assert_eq!(kan.density(0.0), 1.0);
        for t in [-1.3, -0.2, 0.4, 1.1] {
            assert!((kan.density(t) - (4.0 * t).exp()).abs() < 1e-14 * kan.density(t));
            assert!((nak.density(t) - (-4.0 * t).exp()).abs() < 1e-14 * nak.density(t));
        }
    }

    /// Finite-difference Jacobian of `n ↦ a(t) n a(t)⁻¹` on `R²`.
    #[test]
    fn modulus_matches_numeric_jacobian() {
        let conj = |t: f64, x: f64, y: f64| {
            let a = GroupElement::a_factor(t);
            let m = a * GroupElement::n_factor(c(x, y)) * a.inverse();
            let n = m.entries()[1];
            (n.re, n.im)
        };
        for t in [-0.7, 0.0, 0.35, 1.2] {
            let (x0, y0, h) = (0.3, -0.4, 1e-5);
            let (fxp, fyp) = (conj(t, x0 + h, y0), conj(t, x0, y0 + h));
            let (fxm, fym) = (conj(t, x0 - h, y0), conj(t, x0, y0 - h));
            let j11 = (fxp.0 - fxm.0) / (2.0 * h);
            let j21 = (fxp.1 - fxm.1) / (2.0 * h);
            let j12 = (fyp.0 - fym.0) / (2.0 * h);
            let j22 = (fyp.1 - fym.1) / (2.0 * h);
            let det = j11 * j22 - j12 * j21;
            let kan = HaarConvention::new(Ordering::Kan).density(t);
            assert!((det - kan).abs() < 1e-8 * kan, "t={t}: {det} vs {kan}");
        }
    }
}
