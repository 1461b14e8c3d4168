//! The verification suite behind `verify-all`.
//!
//! Each section seeds its own generator from the job seed, so the rows do not
//! depend on how sections are scheduled.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use harmonics_core::abelian::LineGrid;
use harmonics_core::lie::{GroupElement, HaarConvention, IwasawaFactors, KElement, Ordering};
use harmonics_core::matrix::CMatrix;
use harmonics_core::minkowski::{covering_map, det2, vec_to_hermitian, LorentzClass, LorentzMatrix, MinkowskiVector};
use harmonics_core::poincare::{
    convolve_c_at, convolve_p_at, corollary_norm, invariance_defect, poincare_plancherel, tilde_lift, translate_p,
    CompactBump, PFn, PQuadrature, PoincareElement, QElement, SeparablePFamily,
};
use harmonics_core::slc::{
    coordinate_fcheck, fcheck, gram_table, haar_integral, inversion_at_identity, lifted_convolution,
    lifted_convolution_at, lifted_fourier, plancherel_g, relative_residual, scaled_table_residual, sl2c_fourier,
    ConvolutionReading, CoordGrid, FrequencyGrid, GaussianWignerFamily, Measure, SampledGroupFunction,
};
use harmonics_core::su2::{
    inverse_at_identity, peter_weyl_forward, peter_weyl_inverse, plancherel_k_residual, wigner_d, IrrepIndex,
    KQuadrature, KSpectrum,
};
use harmonics_core::{plancherel_constant, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::report::{Bound, ResidualReport, Row};

/// A checked identity: its name, a short formula label, and its tolerance.
#[derive(Clone, Copy, Debug)]
pub struct Identity {
    pub name: &'static str,
    pub paper_ref: &'static str,
    pub bound: Bound,
}

const fn at_most(name: &'static str, paper_ref: &'static str, b: f64) -> Identity {
    Identity { name, paper_ref, bound: Bound::AtMost(b) }
}

const fn at_least(name: &'static str, paper_ref: &'static str, b: f64) -> Identity {
    Identity { name, paper_ref, bound: Bound::AtLeast(b) }
}

pub const IDENTITIES: &[Identity] = &[
    at_most("iwasawa.round_trip", "g = k a(t) n(z)", 1e-12),
    at_most("haar.left_invariance", "d(g0 g) = dg with density exp(-4t)", 1e-6),
    at_least("haar.wrong_exponent_guard", "d(g0 g) != dg with density exp(-2t)", 1e-2),
    at_most("k.schur_orthogonality", "int D^j_ab conj D^j'_cd dk = delta / d_j", 1e-12),
    at_most("k.inversion_round_trip", "f(k) = sum_j d_j tr[Tf(j) D^j(k)]", 1e-10),
    at_most("k.plancherel", "int |f|^2 dk = sum_j d_j |Tf(j)|^2", 1e-10),
    at_most("k.inversion_at_identity", "f(e) = sum_j d_j tr Tf(j)", 1e-10),
    at_most("g.factorization_group_reading", "TF(Y(f) * fcheck) = TFf TFf^dagger, Haar convolution", 1e-6),
    at_most("g.factorization_coordinate_reading", "TF(Y(f) * fcheck) = TFf TFf^dagger, coordinate convolution", 1e-6),
    at_most("g.convolution_at_identity_group", "Y(f) * fcheck (e) = int |f|^2 dg", 1e-6),
    at_most("g.convolution_at_identity_coordinate", "Y(f) * fcheck (e) = int |f|^2 dk dt d^2z", 1e-6),
    at_most("g.plancherel", "int |f|^2 = (2pi)^-3 sum_j d_j int |TFf|^2", 1e-6),
    at_most("g.plancherel_constant_ratio", "sum_j d_j int |TFf|^2 / int |f|^2 = (2pi)^3", 1e-6),
    at_least("g.plancherel_constant_guard", "int |f|^2 != sum_j d_j int |TFf|^2", 1e-2),
    at_most("g.inversion_at_identity", "f(e) = (2pi)^-3 sum_j d_j int tr TFf", 1e-6),
    at_most("minkowski.det_dyadic", "det M = t^2 - x^2 - y^2 - z^2", 1e-14),
    at_most("minkowski.covering_homomorphism", "L(gh) = L(g) L(h)", 1e-12),
    at_most("minkowski.covering_image", "L(g) in SO+(3,1)", 0.0),
    at_most("minkowski.covering_kernel", "L(g) = I iff g = +-I", 0.0),
    at_most("minkowski.boost", "L(a(s/2)) = boost(cosh s, sinh s)", 1e-13),
    at_most("poincare.associativity_inverse", "(v,g)(v',g') = (v + g v', g g')", 1e-11),
    at_most("poincare.translation_action", "L(p1 p2) f = L(p1) L(p2) f", 1e-11),
    at_most("poincare.lift_invariance", "ftilde(q.v, h, q g) = ftilde(v, h q, g)", 1e-12),
    at_most("poincare.central_convolution", "psi * ftilde = psi *_c ftilde", 1e-6),
    at_most("poincare.norm_by_convolution", "F *_c Y(h(Fcheck)) (0, I, I) = |F|^2", 1e-5),
    at_most("poincare.plancherel", "int |f|^2 = (2pi)^-7 sum_j d_j int |F TF f|^2", 1e-5),
    at_most("poincare.plancherel_constant_ratio", "sum_j d_j int |F TF f|^2 / int |f|^2 = (2pi)^7", 1e-5),
    at_least("poincare.plancherel_constant_guard", "int |f|^2 != sum_j d_j int |F TF f|^2", 1e-2),
];

pub fn identity(name: &str) -> &'static Identity {
    IDENTITIES.iter().find(|i| i.name == name).unwrap_or_else(|| panic!("unknown identity {name}"))
}

/// Rows of one section as `(identity, residual, ms)`.
type Measured = Vec<(&'static str, f64, u64)>;

fn timed(name: &'static str, out: &mut Measured, f: impl FnOnce() -> Result<f64>) -> Result<()> {
    let start = Instant::now();
    let r = f()?;
    out.push((name, r, start.elapsed().as_millis() as u64));
    Ok(())
}

fn rng(seed: u64, section: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ section.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn line(l: f64, m: usize) -> LineGrid {
    LineGrid::new(l, m).expect("fixed grid")
}

fn nak_grid(band: u32, lz: f64, mz: usize, lt: f64, mt: usize) -> Arc<CoordGrid> {
    let k = KQuadrature::new(IrrepIndex::new(band).expect("fixed band"));
    Arc::new(CoordGrid::nak(k, line(lz, mz), line(lz, mz), line(lt, mt)))
}

fn freq(ll: f64, ml: usize, lx: f64, mx: usize) -> FrequencyGrid {
    FrequencyGrid { lambda: line(ll, ml), xi1: line(lx, mx), xi2: line(lx, mx) }
}

/// A random element from random entries `a, b, c` with `d = (1 + bc)/a`,
/// independent of the Iwasawa code.
pub fn random_by_entries<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    let r = rng.gen_range(0.5..2.0);
    let phase = rng.gen_range(0.0..2.0 * PI);
    let a = Complex64::from_polar(r, phase);
    let mut z = || Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
    let (b, c) = (z(), z());
    GroupElement::new(a, b, c, (1.0 + b * c) / a).expect("det is 1 up to rounding")
}

fn random_vector<R: Rng + ?Sized>(rng: &mut R, max_v: f64) -> MinkowskiVector {
    MinkowskiVector(std::array::from_fn(|_| rng.gen_range(-max_v..=max_v)))
}

fn random_spectrum<R: Rng + ?Sized>(rng: &mut R, jmax_twice: u32) -> KSpectrum {
    let mut s = KSpectrum::zeros(jmax_twice);
    for tj in 0..=jmax_twice {
        for z in s.block_mut(tj).as_mut_slice() {
            *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    s
}

/// A shifted Gaussian in `v` times a random Gaussian–Wigner function of `g`.
pub fn gaussian_pfn<R: Rng + ?Sized>(rng: &mut R) -> PFn {
    let c = random_vector(rng, 0.5);
    let s = rng.gen_range(0.8..1.5);
    let chi = GaussianWignerFamily::random(rng, 1.0, 0.6, 1).closed_form();
    Arc::new(move |v: &MinkowskiVector, g: &GroupElement| {
        let d = *v - c;
        let r2: f64 = d.0.iter().map(|x| x * x).sum();
        chi(g) * (-r2 / (2.0 * s * s)).exp()
    })
}

fn iwasawa(seed: u64) -> Result<Measured> {
    let mut rng = rng(seed, 1);
    let mut out = Vec::new();
    timed("iwasawa.round_trip", &mut out, || {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let g = random_by_entries(&mut rng);
            let f = IwasawaFactors::decompose(&g);
            worst = worst.max(f.compose().max_entry_distance(&g));
        }
        Ok(worst)
    })?;
    Ok(out)
}

fn haar(seed: u64) -> Result<Measured> {
    let mut rng = rng(seed, 2);
    let k = KQuadrature::new(IrrepIndex::new(0)?);
    let (x, t) = (line(12.0, 200), line(2.0, 48));
    // bi-K-invariant, so a one-node K quadrature is exact
    let f = |g: &GroupElement| Complex64::new((-2.0 * (g.frobenius_sqr() - 2.0)).exp(), 0.0);
    let shifts: Vec<GroupElement> = (0..3).map(|_| GroupElement::random(&mut rng, 0.25, 0.25)).collect();
    let worst = |exponent: f64| {
        let conv = HaarConvention::with_exponent(Ordering::Nak, exponent);
        let base = haar_integral(conv, &k, &x, &x, &t, f);
        shifts
            .iter()
            .map(|g0| (haar_integral(conv, &k, &x, &x, &t, |g| f(&(*g0 * *g))) - base).norm() / base.norm())
            .fold(0.0, f64::max)
    };
    let mut out = Vec::new();
    timed("haar.left_invariance", &mut out, || Ok(worst(4.0)))?;
    timed("haar.wrong_exponent_guard", &mut out, || Ok(worst(2.0)))?;
    Ok(out)
}

fn peter_weyl(seed: u64) -> Result<Measured> {
    let mut rng = rng(seed, 3);
    let mut out = Vec::new();
    timed("k.schur_orthogonality", &mut out, || {
        let quad = KQuadrature::new(IrrepIndex::new(6)?);
        let tables: Vec<Vec<CMatrix>> =
            (0..=6).map(|tj| quad.nodes().iter().map(|k| wigner_d(IrrepIndex::new(tj).unwrap(), k)).collect()).collect();
        let mut worst: f64 = 0.0;
        for (j1, d1) in tables.iter().enumerate() {
            for (j2, d2) in tables.iter().enumerate() {
                let (n1, n2) = (j1 + 1, j2 + 1);
                for (a, b, c, d) in index_quads(n1, n2) {
                    let got: Complex64 = (0..quad.len())
                        .map(|i| d1[i][(a, b)] * d2[i][(c, d)].conj() * quad.weights()[i])
                        .sum();
                    let expected = if j1 == j2 && a == c && b == d { 1.0 / n1 as f64 } else { 0.0 };
                    worst = worst.max((got - expected).norm());
                }
            }
        }
        Ok(worst)
    })?;
    let jmax = 4;
    let quad = KQuadrature::new(IrrepIndex::new(jmax)?);
    let spectra: Vec<KSpectrum> = (0..100).map(|_| random_spectrum(&mut rng, jmax)).collect();
    let samples: Vec<Vec<Complex64>> = spectra.iter().map(|s| quad.sample(|k| peter_weyl_inverse(s, k))).collect();
    timed("k.inversion_round_trip", &mut out, || {
        let mut worst: f64 = 0.0;
        for (s, x) in spectra.iter().zip(&samples) {
            worst = worst.max(peter_weyl_forward(&quad, x, jmax)?.max_abs_diff(s));
        }
        Ok(worst)
    })?;
    timed("k.plancherel", &mut out, || {
        let mut worst: f64 = 0.0;
        for x in &samples {
            worst = worst.max(plancherel_k_residual(&quad, x, jmax)?);
        }
        Ok(worst)
    })?;
    timed("k.inversion_at_identity", &mut out, || {
        let mut worst: f64 = 0.0;
        for s in &spectra {
            // f(e) evaluated straight from the synthesis, then recovered from samples
            let value = peter_weyl_inverse(s, &KElement::IDENTITY);
            let x = quad.sample(|k| peter_weyl_inverse(s, k));
            let recovered = inverse_at_identity(&peter_weyl_forward(&quad, &x, jmax)?);
            worst = worst.max((recovered - value).norm() / value.norm().max(1.0));
        }
        Ok(worst)
    })?;
    Ok(out)
}

fn index_quads(n1: usize, n2: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n1).flat_map(move |a| {
        (0..n1).flat_map(move |b| (0..n2).flat_map(move |c| (0..n2).map(move |d| (a, b, c, d))))
    })
}

/// `TF(Υ(f) ∗ f̌)` against `TFf · TFf†` under one reading of the convolution.
pub fn factorization_residual(reading: ConvolutionReading) -> Result<f64> {
    let fam = GaussianWignerFamily::gaussian(1.0, 0.5);
    let out = nak_grid(0, 9.0, 24, 4.5, 24);
    let inner = nak_grid(0, 6.0, 16, 3.0, 16);
    let nyquist = PI / out.x().spacing();
    let fr = freq(1.9 * nyquist, 16, 0.95 * nyquist, 16);
    let f = fam.sample(out.clone());
    let f_inner = fam.sample(inner.clone());
    let psi = match reading {
        ConvolutionReading::Group => fcheck(&f_inner)?.resample(Arc::new(inner.with_ordering(Ordering::Kan)))?,
        ConvolutionReading::Coordinate => coordinate_fcheck(&f_inner)?,
    };
    let conv = lifted_convolution(&f, &psi, reading, out)?;
    let expected = gram_table(&sl2c_fourier(&f, &fr, 0)?);
    let actual = lifted_fourier(&conv, &fr, 0)?;
    Ok(scaled_table_residual(&actual, &expected))
}

fn sl2c(seed: u64) -> Result<Measured> {
    let mut rng = rng(seed, 4);
    let mut out = Vec::new();
    timed("g.factorization_group_reading", &mut out, || factorization_residual(ConvolutionReading::Group))?;
    timed("g.factorization_coordinate_reading", &mut out, || factorization_residual(ConvolutionReading::Coordinate))?;

    let g = nak_grid(1, 6.0, 20, 3.0, 20);
    let f = GaussianWignerFamily::random(&mut rng, 1.0, 0.5, 1).sample(g.clone());
    let zero = Complex64::new(0.0, 0.0);
    timed("g.convolution_at_identity_group", &mut out, || {
        let fc = fcheck(&f)?.resample(Arc::new(g.with_ordering(Ordering::Kan)))?;
        let v = lifted_convolution_at(&f, &fc, ConvolutionReading::Group, zero, 0.0, &KElement::IDENTITY)?;
        Ok(relative_residual(v.re, f.norm_sqr(Measure::Haar)).max(v.im.abs()))
    })?;
    timed("g.convolution_at_identity_coordinate", &mut out, || {
        let cc = coordinate_fcheck(&f)?;
        let v = lifted_convolution_at(&f, &cc, ConvolutionReading::Coordinate, zero, 0.0, &KElement::IDENTITY)?;
        Ok(relative_residual(v.re, f.norm_sqr(Measure::Product)).max(v.im.abs()))
    })?;

    let g = nak_grid(2, 6.5, 24, 3.25, 24);
    let fr = freq(13.0, 26, 6.0, 24);
    let f: SampledGroupFunction = GaussianWignerFamily::random(&mut rng, 1.0, 0.5, 2).sample(g);
    let start = Instant::now();
    let rep = plancherel_g(&f, &fr, 2)?;
    let ms = start.elapsed().as_millis() as u64;
    out.push(("g.plancherel", rep.residual_product, ms));
    out.push(("g.plancherel_constant_ratio", (rep.unnormalized_ratio() * plancherel_constant(3) - 1.0).abs(), 0));
    out.push(("g.plancherel_constant_guard", rep.residual_unnormalized, 0));
    timed("g.inversion_at_identity", &mut out, || {
        // the family is normalized to f(e) = 1
        let inv = inversion_at_identity(&f, &fr, 2)?;
        Ok((inv - Complex64::new(1.0, 0.0)).norm())
    })?;
    Ok(out)
}

fn minkowski(seed: u64) -> Result<Measured> {
    let mut rng = rng(seed, 5);
    let mut out = Vec::new();
    timed("minkowski.det_dyadic", &mut out, || {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let v = MinkowskiVector(std::array::from_fn(|_| rng.gen_range(-128i32..=128) as f64 / 16.0));
            let d = det2(&vec_to_hermitian(&v));
            worst = worst.max((d.re - v.interval()).abs()).max(d.im.abs());
        }
        Ok(worst)
    })?;
    let pairs: Vec<(GroupElement, GroupElement)> =
        (0..1000).map(|_| (GroupElement::random(&mut rng, 0.5, 0.5), GroupElement::random(&mut rng, 0.5, 0.5))).collect();
    timed("minkowski.covering_homomorphism", &mut out, || {
        Ok(pairs
            .iter()
            .map(|(g, h)| covering_map(&(*g * *h)).max_abs_diff(&(covering_map(g) * covering_map(h))))
            .fold(0.0, f64::max))
    })?;
    timed("minkowski.covering_image", &mut out, || {
        let bad = pairs
            .iter()
            .flat_map(|(g, h)| [g, h])
            .filter(|g| covering_map(g).classify(1e-10) != LorentzClass::SO31Plus)
            .count();
        Ok(bad as f64)
    })?;
    timed("minkowski.covering_kernel", &mut out, || {
        let minus = -GroupElement::IDENTITY;
        let mut r = covering_map(&GroupElement::IDENTITY)
            .max_abs_diff(&LorentzMatrix::IDENTITY)
            .max(covering_map(&minus).max_abs_diff(&LorentzMatrix::IDENTITY));
        for (g, _) in pairs.iter().take(100) {
            let off_kernel = g.max_entry_distance(&GroupElement::IDENTITY).min(g.max_entry_distance(&minus)) > 1e-3;
            if off_kernel && covering_map(g).max_abs_diff(&LorentzMatrix::IDENTITY) < 1e-6 {
                r = f64::INFINITY;
            }
        }
        Ok(r)
    })?;
    timed("minkowski.boost", &mut out, || {
        let mut worst: f64 = 0.0;
        for s in [-1.5, -0.3, 0.0, 0.7, 2.0] {
            let (ch, sh) = (f64::cosh(s), f64::sinh(s));
            let expected = LorentzMatrix([[ch, 0.0, 0.0, sh], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [sh, 0.0, 0.0, ch]]);
            worst = worst.max(covering_map(&GroupElement::a_factor(s / 2.0)).max_abs_diff(&expected));
        }
        Ok(worst)
    })?;
    Ok(out)
}

fn poincare(seed: u64) -> Result<Measured> {
    let mut rng = rng(seed, 6);
    let mut out = Vec::new();
    timed("poincare.associativity_inverse", &mut out, || {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let mut p = || PoincareElement::random(&mut rng, 1.0, 0.5, 0.5);
            let (a, b, c) = (p(), p(), p());
            worst = worst
                .max(((a * b) * c).max_distance(&(a * (b * c))))
                .max((a * a.inverse()).max_distance(&PoincareElement::IDENTITY))
                .max((a.inverse() * a).max_distance(&PoincareElement::IDENTITY));
        }
        Ok(worst)
    })?;
    let f = gaussian_pfn(&mut rng);
    timed("poincare.translation_action", &mut out, || {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let p1 = PoincareElement::random(&mut rng, 0.5, 0.3, 0.3);
            let p2 = PoincareElement::random(&mut rng, 0.5, 0.3, 0.3);
            let x = PoincareElement::random(&mut rng, 1.0, 0.5, 0.5);
            let lhs = translate_p(f.clone(), p1 * p2)(&x.v, &x.g);
            let rhs = translate_p(translate_p(f.clone(), p2), p1)(&x.v, &x.g);
            worst = worst.max((lhs - rhs).norm());
        }
        Ok(worst)
    })?;
    timed("poincare.lift_invariance", &mut out, || {
        let ft = tilde_lift(f.clone());
        let mut worst: f64 = 0.0;
        for _ in 0..500 {
            let x = QElement::random(&mut rng, 1.0, 0.5, 0.5);
            let q = GroupElement::random(&mut rng, 0.5, 0.5);
            worst = worst.max(invariance_defect(&ft, &q, &x));
        }
        Ok(worst)
    })?;
    timed("poincare.central_convolution", &mut out, || {
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let bump = CompactBump { radius_v: rng.gen_range(0.5..1.0), radius_g: rng.gen_range(0.3..0.6) };
            let (rv, rg) = (bump.radius_v, bump.radius_g);
            let psi = bump.sample([line(2.0 * rv, 8); 4], nak_grid(0, 2.0 * rg, 8, 2.0 * rg, 8))?;
            let quad = PQuadrature::new(&psi);
            let ft = tilde_lift(gaussian_pfn(&mut rng));
            let points: Vec<QElement> = (0..50).map(|_| QElement::random(&mut rng, 1.0, 0.5, 0.5)).collect();
            let pair = points
                .par_iter()
                .map(|x| {
                    let a = convolve_p_at(&quad, &ft, x);
                    let b = convolve_c_at(&quad, &ft, x);
                    (a - b).norm() / (1.0 + a.norm())
                })
                .reduce(|| 0.0, f64::max);
            worst = worst.max(pair);
        }
        Ok(worst)
    })?;
    timed("poincare.norm_by_convolution", &mut out, || {
        let fam = SeparablePFamily { v_sigma: 1.0, g: GaussianWignerFamily::gaussian(1.0, 0.5) };
        let f = fam.sample([line(3.9, 10); 4], nak_grid(0, 3.9, 10, 2.5, 14))?;
        let conv = corollary_norm(&f)?;
        let direct = f.norm_sqr(Measure::Haar);
        let exact = fam.norm_sqr_haar();
        Ok(relative_residual(conv.re, direct).max(relative_residual(conv.re, exact)).max(conv.im.abs() / direct))
    })?;
    let fam = SeparablePFamily { v_sigma: 1.0, g: GaussianWignerFamily::random(&mut rng, 1.0, 0.5, 1) };
    let f = fam.sample([line(8.0, 32); 4], nak_grid(1, 6.5, 28, 3.25, 28))?;
    let fr = freq(13.0, 26, 6.0, 24);
    let start = Instant::now();
    let rep = poincare_plancherel(&f, &[line(6.0, 24); 4], &fr, 1)?;
    out.push(("poincare.plancherel", rep.residual_product, start.elapsed().as_millis() as u64));
    out.push(("poincare.plancherel_constant_ratio", (rep.unnormalized_ratio() * plancherel_constant(7) - 1.0).abs(), 0));
    out.push(("poincare.plancherel_constant_guard", rep.residual_unnormalized, 0));
    Ok(out)
}

type Section = fn(u64) -> Result<Measured>;

pub const SECTIONS: &[Section] = &[iwasawa, haar, peter_weyl, sl2c, minkowski, poincare];

pub fn rows(measured: Measured, timing: bool) -> Vec<Row> {
    measured
        .into_iter()
        .map(|(name, residual, ms)| {
            let id = identity(name);
            Row::new(name, id.paper_ref, residual, id.bound, if timing { ms } else { 0 })
        })
        .collect()
}

/// Every section, in a fixed order. Sections may run concurrently.
pub fn verify_all(seed: u64, timing: bool) -> Result<ResidualReport> {
    let parts: Vec<Result<Measured>> = SECTIONS.par_iter().map(|s| s(seed)).collect();
    let mut report = ResidualReport::default();
    for part in parts {
        for row in rows(part?, timing) {
            report.push(row);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_names_are_unique() {
        let mut names: Vec<&str> = IDENTITIES.iter().map(|i| i.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), IDENTITIES.len());
    }

    #[test]
    fn fast_sections_pass() {
        for section in [iwasawa as Section, minkowski, peter_weyl] {
            for row in rows(section(7).unwrap(), false) {
                assert!(row.pass, "{row:?}");
            }
        }
    }

    #[test]
    fn entry_sampler_is_unimodular() {
        let mut r = rng(1, 0);
        for _ in 0..100 {
            let g = random_by_entries(&mut r);
            assert!((g.det() - 1.0).norm() < 1e-12);
        }
    }
}
