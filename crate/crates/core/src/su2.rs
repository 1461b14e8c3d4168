//! Harmonic analysis on `K = SU(2)`.
//!
//! Irreducible representations are labelled by `two_j = 2j`. Matrix rows and
//! columns are indexed by `a = j - m`, so `a = 0` is the highest weight and
//! `D^{1/2}(k)` is the defining 2×2 matrix of `k`. Haar measure has mass 1.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::lie::KElement;
use crate::matrix::CMatrix;
use crate::quadrature::{gauss_legendre, pairwise_sum, pairwise_sum_real};
use crate::Error;

/// Largest supported `2j`.
pub const MAX_TWO_J: u32 = 40;

const FACTORIALS: [f64; MAX_TWO_J as usize + 1] = {
    let mut table = [1.0; MAX_TWO_J as usize + 1];
    let mut i = 1;
    while i <= MAX_TWO_J as usize {
        table[i] = table[i - 1] * i as f64;
        i += 1;
    }
    table
};

/// Label of an irreducible representation, `j = two_j / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepIndex {
    two_j: u32,
}

impl IrrepIndex {
    pub fn new(two_j: u32) -> Result<Self, Error> {
        if two_j > MAX_TWO_J {
            return Err(Error::BandlimitExceeded { two_j, cap: MAX_TWO_J });
        }
        Ok(Self { two_j })
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        0.5 * self.two_j as f64
    }

    /// `d_j = 2j + 1`.
    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// Eigenvalue `-j(j+1)` of the Casimir on this irrep.
    pub fn casimir(self) -> f64 {
        let j = self.j();
        -j * (j + 1.0)
    }
}

fn check_two_j(two_j: u32) -> Result<(), Error> {
    IrrepIndex::new(two_j).map(|_| ())
}

/// Wigner little-d entry for `c = cos(θ/2)`, `s = sin(θ/2)`.
fn little_d(two_j: usize, a: usize, b: usize, c: f64, s: f64) -> f64 {
    let f = &FACTORIALS;
    let norm = (f[two_j - a] * f[a] * f[two_j - b] * f[b]).sqrt();
    let lo = a.saturating_sub(b);
    let hi = (two_j - b).min(a);
    let mut sum = 0.0;
    for k in lo..=hi {
        let sign = if (b + k - a) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = f[two_j - b - k] * f[k] * f[b + k - a] * f[a - k];
        let c_pow = (two_j + a - b - 2 * k) as i32;
        let s_pow = (b + 2 * k - a) as i32;
        sum += sign * c.powi(c_pow) * s.powi(s_pow) / denom;
    }
    norm * sum
}

fn unit_phase(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

fn phase_pow(u: Complex64, p: i64) -> Complex64 {
    if p >= 0 {
        u.powi(p as i32)
    } else {
        u.conj().powi((-p) as i32)
    }
}

/// The spin-`j` matrix `D^j(k)`.
///
/// In Euler angles this is `e^{-imφ} d^j_{mm'}(θ) e^{-im'ψ}`; it is evaluated
/// from the Cayley–Klein parameters so that it is exact at `θ ∈ {0, π}`.
pub fn wigner_d(j: IrrepIndex, k: &KElement) -> CMatrix {
    let two_j = j.two_j as usize;
    let (alpha, beta) = (k.alpha(), k.beta());
    let (c, s) = (alpha.norm(), beta.norm());
    let (ua, ub) = (unit_phase(alpha), unit_phase(-beta));
    CMatrix::from_fn(two_j + 1, |a, b| {
        let sum_m = two_j as i64 - a as i64 - b as i64;
        let diff_m = b as i64 - a as i64;
        phase_pow(ua, sum_m) * phase_pow(ub, diff_m) * little_d(two_j, a, b, c, s)
    })
}

/// `D^j(k)` for every `two_j ≤ jmax_twice`.
pub fn wigner_all(jmax_twice: u32, k: &KElement) -> Result<Vec<CMatrix>, Error> {
    check_two_j(jmax_twice)?;
    Ok((0..=jmax_twice).map(|tj| wigner_d(IrrepIndex { two_j: tj }, k)).collect())
}

/// Product quadrature on `K` in Euler angles: uniform `φ ∈ [0, 2π)`, uniform
/// `ψ ∈ [0, 4π)`, Gauss–Legendre in `cos θ`.
///
/// With `band = 2·jmax` it integrates every product `D^{j}_{ab} · conj D^{j'}_{cd}`
/// with `j, j' ≤ jmax` exactly, and hence every single `D^J` with
/// `2J ≤ 2·band`.
#[derive(Clone, Debug)]
pub struct KQuadrature {
    band: u32,
    nodes: Vec<KElement>,
    weights: Vec<f64>,
}

impl KQuadrature {
    pub fn new(jmax: IrrepIndex) -> Self {
        let band = jmax.two_j;
        if band == 0 {
            return Self { band, nodes: alloc::vec![KElement::IDENTITY], weights: alloc::vec![1.0] };
        }
        let n_phi = 2 * band as usize + 1;
        let n_psi = 2 * band as usize + 1;
        let n_theta = (band as usize + 2) / 2;
        let (x, w) = gauss_legendre(n_theta);
        let scale = 1.0 / (2.0 * (n_phi * n_psi) as f64);
        let mut nodes = Vec::with_capacity(n_phi * n_psi * n_theta);
        let mut weights = Vec::with_capacity(nodes.capacity());
        for (xi, wi) in x.iter().zip(w.iter()) {
            let theta = xi.acos();
            for p in 0..n_phi {
                let phi = 2.0 * core::f64::consts::PI * p as f64 / n_phi as f64;
                for q in 0..n_psi {
                    let psi = 4.0 * core::f64::consts::PI * q as f64 / n_psi as f64;
                    nodes.push(KElement::from_euler(phi, theta, psi));
                    weights.push(wi * scale);
                }
            }
        }
        Self { band, nodes, weights }
    }

    /// The `2·jmax` this quadrature was built for.
    pub fn band(&self) -> u32 {
        self.band
    }

    pub fn nodes(&self) -> &[KElement] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Samples a function at the nodes.
    pub fn sample(&self, f: impl Fn(&KElement) -> Complex64) -> Vec<Complex64> {
        self.nodes.iter().map(f).collect()
    }

    /// `∫ f dk` for samples at the nodes.
    pub fn integrate(&self, samples: &[Complex64]) -> Result<Complex64, Error> {
        self.check_len(samples.len())?;
        Ok(pairwise_sum(0, samples.len(), &|i| samples[i] * self.weights[i]))
    }

    fn check_len(&self, found: usize) -> Result<(), Error> {
        if found != self.nodes.len() {
            return Err(Error::GridMismatch { expected: self.nodes.len(), found });
        }
        Ok(())
    }
}

/// Peter–Weyl coefficients `Tf(j)` for `two_j = 0..=jmax_twice`.
#[derive(Clone, Debug, PartialEq)]
pub struct KSpectrum {
    blocks: Vec<CMatrix>,
}

impl KSpectrum {
    pub fn zeros(jmax_twice: u32) -> Self {
        Self { blocks: (0..=jmax_twice as usize).map(|tj| CMatrix::zeros(tj + 1)).collect() }
    }

    /// Blocks must be listed in order `two_j = 0, 1, …` with matching sizes.
    pub fn from_blocks(blocks: Vec<CMatrix>) -> Result<Self, Error> {
        if blocks.is_empty() {
            return Err(Error::InvalidGrid("spectrum needs at least one block"));
        }
        check_two_j(blocks.len() as u32 - 1)?;
        for (tj, b) in blocks.iter().enumerate() {
            if b.dim() != tj + 1 {
                return Err(Error::DimensionMismatch { left: tj + 1, right: b.dim() });
            }
        }
        Ok(Self { blocks })
    }

    pub fn jmax_twice(&self) -> u32 {
        self.blocks.len() as u32 - 1
    }

    pub fn block(&self, two_j: u32) -> &CMatrix {
        &self.blocks[two_j as usize]
    }

    pub fn block_mut(&mut self, two_j: u32) -> &mut CMatrix {
        &mut self.blocks[two_j as usize]
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// `Σ_j d_j ‖Tf(j)‖²_HS`.
    pub fn weighted_norm_sqr(&self) -> f64 {
        self.blocks.iter().enumerate().map(|(tj, b)| (tj + 1) as f64 * b.hs_norm_sqr()).sum()
    }

    /// Applies `block j ↦ m(j) · block j`.
    pub fn map_blocks(&self, m: impl Fn(IrrepIndex) -> f64) -> Self {
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(tj, b)| b.scale_real(m(IrrepIndex { two_j: tj as u32 })))
            .collect();
        Self { blocks }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self { blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    /// Largest entrywise difference; spectra of different length compare
    /// missing blocks against zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.blocks.len().max(other.blocks.len());
        (0..n)
            .map(|i| match (self.blocks.get(i), other.blocks.get(i)) {
                (Some(x), Some(y)) => x.max_abs_diff(y),
                (Some(x), None) | (None, Some(x)) => x.max_abs(),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }
}

/// `Tf(j) = ∫ f(k) D^j(k⁻¹) dk` by quadrature.
///
/// The quadrature must have been built for at least `jmax_twice`.
pub fn peter_weyl_forward(
    quad: &KQuadrature,
    samples: &[Complex64],
    jmax_twice: u32,
) -> Result<KSpectrum, Error> {
    quad.check_len(samples.len())?;
    check_two_j(jmax_twice)?;
    if jmax_twice > quad.band {
        return Err(Error::BandlimitExceeded { two_j: jmax_twice, cap: quad.band });
    }
    let mut spectrum = KSpectrum::zeros(jmax_twice);
    for (tj, block) in spectrum.blocks.iter_mut().enumerate() {
        let j = IrrepIndex { two_j: tj as u32 };
        let d: Vec<CMatrix> = quad.nodes.iter().map(|k| wigner_d(j, k)).collect();
        for a in 0..=tj {
            for b in 0..=tj {
                // D(k⁻¹) = D(k)†
                block[(a, b)] = pairwise_sum(0, samples.len(), &|i| {
                    samples[i] * d[i][(b, a)].conj() * quad.weights[i]
                });
            }
        }
    }
    Ok(spectrum)
}

/// `f(k) = Σ_j d_j tr[Tf(j) D^j(k)]`.
pub fn peter_weyl_inverse(spectrum: &KSpectrum, k: &KElement) -> Complex64 {
    spectrum
        .blocks
        .iter()
        .enumerate()
        .map(|(tj, block)| {
            let d = wigner_d(IrrepIndex { two_j: tj as u32 }, k);
            (block * &d).trace() * (tj + 1) as f64
        })
        .sum()
}

/// `f(e) = Σ_j d_j tr Tf(j)`.
pub fn inverse_at_identity(spectrum: &KSpectrum) -> Complex64 {
    spectrum.blocks.iter().enumerate().map(|(tj, b)| b.trace() * (tj + 1) as f64).sum()
}

/// The two sides of the Plancherel identity on `K` for sampled data:
/// `(∫|f|² dk, Σ_j d_j ‖Tf(j)‖²_HS)`.
pub fn plancherel_k_sides(
    quad: &KQuadrature,
    samples: &[Complex64],
    jmax_twice: u32,
) -> Result<(f64, f64), Error> {
    let spectrum = peter_weyl_forward(quad, samples, jmax_twice)?;
    let direct = pairwise_sum_real(0, samples.len(), &|i| samples[i].norm_sqr() * quad.weights[i]);
    Ok((direct, spectrum.weighted_norm_sqr()))
}

/// `|∫|f|² − Σ d_j ‖Tf(j)‖²| / ∫|f|²`, or the absolute difference when
/// `f = 0`.
pub fn plancherel_k_residual(
    quad: &KQuadrature,
    samples: &[Complex64],
    jmax_twice: u32,
) -> Result<f64, Error> {
    let (direct, spectral) = plancherel_k_sides(quad, samples, jmax_twice)?;
    let diff = (direct - spectral).abs();
    Ok(if direct > 0.0 { diff / direct } else { diff })
}

/// The bi-invariant Laplacian, acting on block `j` as `-j(j+1)`.
pub fn casimir_apply(spectrum: &KSpectrum) -> KSpectrum {
    spectrum.map_blocks(IrrepIndex::casimir)
}

/// `(1 - Δ)^l`, acting on block `j` as `(1 + j(j+1))^l`.
pub fn bessel_power(spectrum: &KSpectrum, l: u32) -> KSpectrum {
    spectrum.map_blocks(|j| (1.0 - j.casimir()).powi(l as i32))
}

/// `σ_l(f) = ‖(1 - Δ)^l f‖₂`, evaluated spectrally.
pub fn sobolev_seminorm(spectrum: &KSpectrum, l: u32) -> f64 {
    bessel_power(spectrum, l).weighted_norm_sqr().sqrt()
}

/// `(φ ∗ f)(x) = ∫ f(y⁻¹x) φ(y) dy` by quadrature over `y`.
pub fn convolve_k(
    quad: &KQuadrature,
    phi: impl Fn(&KElement) -> Complex64,
    f: impl Fn(&KElement) -> Complex64,
    x: &KElement,
) -> Complex64 {
    pairwise_sum(0, quad.len(), &|i| {
        let y = quad.nodes[i];
        f(&(y.inverse() * *x)) * phi(&y) * quad.weights[i]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::GroupElement;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn idx(two_j: u32) -> IrrepIndex {
        IrrepIndex::new(two_j).unwrap()
    }

    fn random_bandlimited(rng: &mut ChaCha8Rng, jmax_twice: u32) -> KSpectrum {
        let mut s = KSpectrum::zeros(jmax_twice);
        for tj in 0..=jmax_twice {
            let b = s.block_mut(tj);
            for v in b.as_mut_slice() {
                *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        s
    }

    #[test]
    fn bandlimit_cap() {
        assert!(IrrepIndex::new(40).is_ok());
        assert_eq!(IrrepIndex::new(41), Err(Error::BandlimitExceeded { two_j: 41, cap: 40 }));
    }

    #[test]
    fn trivial_and_defining_representations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let k = KElement::random(&mut rng);
            let d0 = wigner_d(idx(0), &k);
            assert!((d0[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            let d = wigner_d(idx(1), &k);
            let [a, b, c, dd] = k.to_group().entries();
            let direct = CMatrix::from_row_major(alloc::vec![a, b, c, dd]).unwrap();
            assert!(d.max_abs_diff(&direct) <= 1e-12);
        }
        let id = wigner_d(idx(1), &KElement::IDENTITY);
        assert!(id.max_abs_diff(&CMatrix::identity(2)) == 0.0);
    }

    #[test]
    fn euler_form_of_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for tj in 0..=6u32 {
            let (phi, theta, psi) = (rng.gen_range(0.0..6.0), rng.gen_range(0.1..3.0), rng.gen_range(0.0..6.0));
            let k = KElement::from_euler(phi, theta, psi);
            let d = wigner_d(idx(tj), &k);
            let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
            for a in 0..=tj as usize {
                for b in 0..=tj as usize {
                    let m = 0.5 * tj as f64 - a as f64;
                    let mp = 0.5 * tj as f64 - b as f64;
                    let expected = Complex64::from_polar(1.0, -m * phi - mp * psi)
                        * little_d(tj as usize, a, b, c, s);
                    assert!((d[(a, b)] - expected).norm() < 1e-12, "tj={tj} a={a} b={b}");
                }
            }
        }
    }

    /// The spin-1 representation is the symmetric square of the defining one:
    /// acting on `(x², √2 xy, y²)`.
    #[test]
    fn spin_one_matches_symmetric_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r2 = core::f64::consts::SQRT_2;
        for _ in 0..50 {
            let k = KElement::random(&mut rng);
            let [p, q, r, s] = k.to_group().entries();
            let sym = CMatrix::from_row_major(alloc::vec![
                p * p,
                r2 * p * q,
                q * q,
                r2 * p * r,
                p * s + q * r,
                r2 * q * s,
                r * r,
                r2 * r * s,
                s * s,
            ])
            .unwrap();
            assert!(wigner_d(idx(2), &k).max_abs_diff(&sym) < 1e-12);
        }
    }

    #[test]
    fn unitary_and_homomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let (k1, k2) = (KElement::random(&mut rng), KElement::random(&mut rng));
            for tj in 0..=12 {
                let j = idx(tj);
                let d1 = wigner_d(j, &k1);
                let unit = &d1 * &d1.adjoint();
                assert!(unit.max_abs_diff(&CMatrix::identity(j.dim())) <= 1e-12);
                let lhs = wigner_d(j, &(k1 * k2));
                let rhs = &d1 * &wigner_d(j, &k2);
                assert!(lhs.max_abs_diff(&rhs) <= 1e-11, "tj={tj}");
            }
        }
    }

    #[test]
    fn character_formula() {
        for tj in 0..=8u32 {
            for &theta in &[0.3, 1.1, 2.5] {
                // conjugate to a rotation by θ about z: trace = sin((2j+1)θ/2)/sin(θ/2)
                let k = KElement::from_euler(theta, 0.0, 0.0);
                let tr = wigner_d(idx(tj), &k).trace();
                let expected = ((tj + 1) as f64 * theta / 2.0).sin() / (theta / 2.0).sin();
                assert!((tr.re - expected).abs() < 1e-12 && tr.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_euler_angles_are_exact() {
        for tj in 0..=6 {
            let d = wigner_d(idx(tj), &KElement::from_euler(0.0, core::f64::consts::PI, 0.0));
            assert!((&d * &d.adjoint()).max_abs_diff(&CMatrix::identity(tj as usize + 1)) < 1e-12);
        }
        let minus = KElement::new(Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        let d = wigner_d(idx(3), &minus);
        assert!(d.max_abs_diff(&CMatrix::identity(4).scale_real(-1.0)) < 1e-15);
        assert_eq!(minus.to_group(), -GroupElement::IDENTITY);
    }

    #[test]
    fn quadrature_examples() {
        let q0 = KQuadrature::new(idx(0));
        assert_eq!(q0.len(), 1);
        assert_eq!(q0.weights(), &[1.0]);
        let q = KQuadrature::new(idx(2));
        assert!((q.weights().iter().sum::<f64>() - 1.0).abs() <= 1e-13);
        let d1: Vec<CMatrix> = q.nodes().iter().map(|k| wigner_d(idx(2), k)).collect();
        for a in 0..3 {
            for b in 0..3 {
                let mean = q.integrate(&d1.iter().map(|d| d[(a, b)]).collect::<Vec<_>>()).unwrap();
                assert!(mean.norm() <= 1e-12);
                let sq = q.integrate(&d1.iter().map(|d| Complex64::new(d[(a, b)].norm_sqr(), 0.0)).collect::<Vec<_>>()).unwrap();
                assert!((sq.re - 1.0 / 3.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn quadrature_moments_vanish_up_to_twice_band() {
        for band in 1..=6u32 {
            let q = KQuadrature::new(idx(band));
            for tj in 1..=2 * band {
                let mut acc = CMatrix::zeros(tj as usize + 1);
                for (k, w) in q.nodes().iter().zip(q.weights()) {
                    acc.add_scaled(Complex64::new(*w, 0.0), &wigner_d(idx(tj), k));
                }
                assert!(acc.max_abs() <= 1e-12, "band={band} tj={tj}: {}", acc.max_abs());
            }
        }
    }

    #[test]
    fn schur_orthogonality() {
        let q = KQuadrature::new(idx(6));
        let ds: Vec<Vec<CMatrix>> = q.nodes().iter().map(|k| wigner_all(6, k).unwrap()).collect();
        let w = q.weights();
        for j1 in 0..=6usize {
            for j2 in 0..=6usize {
                for (a, b, c, d) in [(0, 0, 0, 0), (j1, 0, j2, 0), (0, j1, 0, j2), (j1 / 2, j1, j2 / 2, j2)] {
                    if a > j1 || b > j1 || c > j2 || d > j2 {
                        continue;
                    }
                    let v = pairwise_sum(0, w.len(), &|i| ds[i][j1][(a, b)] * ds[i][j2][(c, d)].conj() * w[i]);
                    let expected = if j1 == j2 && a == c && b == d { 1.0 / (j1 + 1) as f64 } else { 0.0 };
                    assert!((v - Complex64::new(expected, 0.0)).norm() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn forward_examples() {
        let q = KQuadrature::new(idx(4));
        let ones = q.sample(|_| Complex64::new(1.0, 0.0));
        let s = peter_weyl_forward(&q, &ones, 4).unwrap();
        assert!((s.block(0)[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        for tj in 1..=4 {
            assert!(s.block(tj).max_abs() < 1e-13);
        }
        let f = q.sample(|k| wigner_d(idx(1), k)[(0, 1)]);
        let s = peter_weyl_forward(&q, &f, 4).unwrap();
        let mut expected = KSpectrum::zeros(4);
        expected.block_mut(1)[(1, 0)] = Complex64::new(0.5, 0.0);
        assert!(s.max_abs_diff(&expected) < 1e-13);
        assert_eq!(
            peter_weyl_forward(&q, &f[1..], 4),
            Err(Error::GridMismatch { expected: q.len(), found: q.len() - 1 })
        );
        assert!(matches!(peter_weyl_forward(&q, &f, 5), Err(Error::BandlimitExceeded { .. })));
    }

    #[test]
    fn round_trips_and_plancherel() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = KQuadrature::new(idx(4));
        for _ in 0..20 {
            let s = random_bandlimited(&mut rng, 4);
            let samples = q.sample(|k| peter_weyl_inverse(&s, k));
            let back = peter_weyl_forward(&q, &samples, 4).unwrap();
            assert!(back.max_abs_diff(&s) <= 1e-10);
            let k = KElement::random(&mut rng);
            assert!((peter_weyl_inverse(&back, &k) - peter_weyl_inverse(&s, &k)).norm() <= 1e-10);
            assert!(plancherel_k_residual(&q, &samples, 4).unwrap() <= 1e-10);
            let at_e = peter_weyl_inverse(&s, &KElement::IDENTITY);
            assert!((inverse_at_identity(&back) - at_e).norm() <= 1e-10);
        }
        let c = Complex64::new(0.3, -2.0);
        let mut s = KSpectrum::zeros(0);
        s.block_mut(0)[(0, 0)] = c;
        assert_eq!(peter_weyl_inverse(&s, &KElement::random(&mut rng)), c);
    }

    #[test]
    fn plancherel_examples() {
        let q = KQuadrature::new(idx(4));
        let ones = q.sample(|_| Complex64::new(1.0, 0.0));
        assert!(plancherel_k_residual(&q, &ones, 4).unwrap() <= 1e-14);
        for tj in 0..=4u32 {
            let d = (tj + 1) as f64;
            let f = q.sample(|k| wigner_d(idx(tj), k)[(0, tj as usize)] * d.sqrt());
            assert!(plancherel_k_residual(&q, &f, 4).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn casimir_and_sobolev() {
        let mut s = KSpectrum::zeros(2);
        for tj in 0..=2 {
            s.block_mut(tj)[(0, 0)] = Complex64::new(1.0, 0.0);
        }
        let c = casimir_apply(&s);
        assert_eq!(c.block(0)[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(c.block(2)[(0, 0)], Complex64::new(-2.0, 0.0));
        assert_eq!(bessel_power(&s, 2).block(2)[(0, 0)], Complex64::new(9.0, 0.0));

        let q = KQuadrature::new(idx(2));
        let f = q.sample(|k| wigner_d(idx(2), k)[(1, 1)]);
        let spec = peter_weyl_forward(&q, &f, 2).unwrap();
        let norm = sobolev_seminorm(&spec, 0);
        assert!((norm - 1.0 / 3.0f64.sqrt()).abs() < 1e-12);
        assert!((sobolev_seminorm(&spec, 1) - 3.0 / 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn convolution_theorem() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let q = KQuadrature::new(idx(4));
        let sf = random_bandlimited(&mut rng, 2);
        let sp = random_bandlimited(&mut rng, 2);
        let f = |k: &KElement| peter_weyl_inverse(&sf, k);
        let phi = |k: &KElement| peter_weyl_inverse(&sp, k);
        let conv = q.sample(|x| convolve_k(&q, phi, f, x));
        let tc = peter_weyl_forward(&q, &conv, 2).unwrap();
        for tj in 0..=2 {
            let expected = sf.block(tj) * sp.block(tj);
            assert!(tc.block(tj).max_abs_diff(&expected) <= 1e-9);
        }
    }
}
