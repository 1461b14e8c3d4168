use std::f64::consts::PI;

use harmonics_core::abelian::{ft_line, LineGrid};
use harmonics_core::lie::{GroupElement, IwasawaFactors, KElement, NakCoords, Ordering};
use harmonics_core::minkowski::{covering_map, spinor_action, theta_form, LorentzClass, MinkowskiVector};
use harmonics_core::poincare::{invariance_defect, tilde_lift, PFn, PoincareElement, QElement};
use harmonics_core::su2::{
    peter_weyl_forward, peter_weyl_inverse, plancherel_k_residual, sobolev_seminorm, wigner_d, IrrepIndex,
    KQuadrature, KSpectrum,
};
use harmonics_core::Complex64;
use proptest::prelude::*;
use std::sync::Arc;

fn k_element() -> impl Strategy<Value = KElement> {
    (0.0..2.0 * PI, 0.0..PI, 0.0..4.0 * PI).prop_map(|(p, t, s)| KElement::from_euler(p, t, s))
}

fn factors() -> impl Strategy<Value = IwasawaFactors> {
    (k_element(), -1.5..1.5f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(k, t, re, im)| IwasawaFactors { k, t, n: Complex64::new(re, im) })
}

fn element() -> impl Strategy<Value = GroupElement> {
    factors().prop_map(|f| f.compose())
}

fn vector() -> impl Strategy<Value = MinkowskiVector> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(MinkowskiVector)
}

fn spectrum(jmax_twice: u32) -> impl Strategy<Value = KSpectrum> {
    let len: usize = (0..=jmax_twice as usize).map(|tj| (tj + 1) * (tj + 1)).sum();
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), len).prop_map(move |raw| {
        let mut s = KSpectrum::zeros(jmax_twice);
        let mut it = raw.into_iter();
        for tj in 0..=jmax_twice {
            for z in s.block_mut(tj).as_mut_slice() {
                let (re, im) = it.next().unwrap();
                *z = Complex64::new(re, im);
            }
        }
        s
    })
}

fn scale(g: &GroupElement) -> f64 {
    1.0 + g.frobenius_sqr()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms(a in element(), b in element(), c in element()) {
        let s = scale(&a) * scale(&b) * scale(&c);
        prop_assert!(((a * b) * c).max_entry_distance(&(a * (b * c))) <= 1e-13 * s);
        prop_assert!((a * a.inverse()).max_entry_distance(&GroupElement::IDENTITY) <= 1e-13 * scale(&a));
        prop_assert!((a * GroupElement::IDENTITY).max_entry_distance(&a) == 0.0);
        prop_assert!(((a * b).det() - 1.0).norm() <= 1e-12 * s);
    }

    #[test]
    fn iwasawa_round_trip_and_membership(g in element()) {
        let f = IwasawaFactors::decompose(&g);
        prop_assert!(f.compose().max_entry_distance(&g) <= 1e-12 * scale(&g));
        prop_assert!(f.k.unit_deviation() <= 1e-12);
        prop_assert!(f.t.is_finite() && f.n.re.is_finite() && f.n.im.is_finite());
        for ordering in Ordering::ALL {
            let h = ordering.compose(&ordering.decompose(&g));
            prop_assert!(h.max_entry_distance(&g) <= 1e-12 * scale(&g));
        }
        let nak = NakCoords::decompose(&g);
        prop_assert!(nak.compose().max_entry_distance(&g) <= 1e-12 * scale(&g));
    }

    #[test]
    fn factors_round_trip(f in factors()) {
        let back = IwasawaFactors::decompose(&f.compose());
        prop_assert!((back.t - f.t).abs() <= 1e-10);
        prop_assert!((back.n - f.n).norm() <= 1e-10);
        prop_assert!(back.k.to_group().max_entry_distance(&f.k.to_group()) <= 1e-10);
    }

    #[test]
    fn euler_round_trip(phi in 0.0..2.0 * PI, theta in 0.01..PI - 0.01, psi in 0.0..4.0 * PI) {
        let k = KElement::from_euler(phi, theta, psi);
        prop_assert!(k.unit_deviation() <= 1e-12);
        let (p, t, s) = k.to_euler();
        let back = KElement::from_euler(p, t, s);
        prop_assert!(back.to_group().max_entry_distance(&k.to_group()) <= 1e-10);
    }

    #[test]
    fn wigner_unitary_and_multiplicative(two_j in 0u32..=12, a in k_element(), b in k_element()) {
        let j = IrrepIndex::new(two_j).unwrap();
        let d = wigner_d(j, &a);
        let eye = harmonics_core::matrix::CMatrix::identity(j.dim());
        prop_assert!((&d * &d.adjoint()).max_abs_diff(&eye) <= 1e-12);
        let lhs = wigner_d(j, &(a * b));
        let rhs = &d * &wigner_d(j, &b);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-11);
    }

    #[test]
    fn peter_weyl_round_trip_and_plancherel(s in spectrum(4)) {
        let quad = KQuadrature::new(IrrepIndex::new(4).unwrap());
        let samples = quad.sample(|k| peter_weyl_inverse(&s, k));
        let back = peter_weyl_forward(&quad, &samples, 4).unwrap();
        prop_assert!(back.max_abs_diff(&s) <= 1e-10);
        prop_assert!(plancherel_k_residual(&quad, &samples, 4).unwrap() <= 1e-10);
    }

    #[test]
    fn sobolev_monotone(s in spectrum(3), l in 0u32..4) {
        prop_assert!(sobolev_seminorm(&s, l) <= sobolev_seminorm(&s, l + 1));
    }

    #[test]
    fn line_transform_is_linear(c in -2.0..2.0f64, lambda in -5.0..5.0f64, shift in -1.0..1.0f64) {
        let grid = LineGrid::new(10.0, 128).unwrap();
        let f = grid.sample(|t| Complex64::new((-t * t / 2.0).exp(), 0.0));
        let g = grid.sample(|t| Complex64::new((-(t - shift) * (t - shift)).exp(), t.sin() * (-t * t).exp()));
        let sum: Vec<Complex64> = f.iter().zip(&g).map(|(a, b)| a + b * c).collect();
        let lhs = ft_line(&grid, &sum, lambda).unwrap();
        let rhs = ft_line(&grid, &f, lambda).unwrap() + ft_line(&grid, &g, lambda).unwrap() * c;
        prop_assert!((lhs - rhs).norm() <= 1e-12);
        // real input
        let a = ft_line(&grid, &f, lambda).unwrap();
        let b = ft_line(&grid, &f, -lambda).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12);
    }

    #[test]
    fn theta_is_bilinear(x in vector(), y in vector(), z in vector(), c in -2.0..2.0f64) {
        let xy: Vec<f64> = (0..4).map(|i| x[i] + c * y[i]).collect();
        let lhs = theta_form(1, 3, &xy, &z.0).unwrap();
        let rhs = theta_form(1, 3, &x.0, &z.0).unwrap() + c * theta_form(1, 3, &y.0, &z.0).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13);
        prop_assert_eq!(theta_form(1, 3, &x.0, &z.0).unwrap(), theta_form(1, 3, &z.0, &x.0).unwrap());
    }

    #[test]
    fn spinor_action_is_an_isometric_linear_action(g in element(), h in element(), v in vector(), w in vector()) {
        let s = scale(&g) * scale(&h);
        let gv = spinor_action(&g, &v);
        prop_assert!((gv.interval() - v.interval()).abs() <= 1e-12 * s * s * 16.0);
        let sum = spinor_action(&g, &(v + w));
        prop_assert!(sum.max_abs_diff(&(gv + spinor_action(&g, &w))) <= 1e-13 * s * 8.0);
        let lhs = spinor_action(&(g * h), &v);
        let rhs = spinor_action(&g, &spinor_action(&h, &v));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * s * s * 4.0);
        let lambda = covering_map(&g);
        prop_assert_eq!(lambda.classify(1e-10 * s * s), LorentzClass::SO31Plus);
    }

    #[test]
    fn poincare_law(a in (vector(), element()), b in (vector(), element()), c in (vector(), element())) {
        let (a, b, c) = (PoincareElement::new(a.0, a.1), PoincareElement::new(b.0, b.1), PoincareElement::new(c.0, c.1));
        let s = scale(&a.g) * scale(&b.g) * scale(&c.g);
        prop_assert!(((a * b) * c).max_distance(&(a * (b * c))) <= 1e-11 * s);
        prop_assert!((a * a.inverse()).max_distance(&PoincareElement::IDENTITY) <= 1e-12 * scale(&a.g) * 8.0);
    }

    #[test]
    fn q_projection_is_a_homomorphism(a in (vector(), element(), element()), b in (vector(), element(), element())) {
        let (x, y) = (QElement::new(a.0, a.1, a.2), QElement::new(b.0, b.1, b.2));
        let s = scale(&x.g) * scale(&y.g);
        prop_assert!((x * y).project().max_distance(&(x.project() * y.project())) <= 1e-12 * s);
    }

    #[test]
    fn tilde_lifts_are_invariant(x in (vector(), element(), element()), q in element()) {
        let f: PFn = Arc::new(|v: &MinkowskiVector, g: &GroupElement| {
            let r2: f64 = v.0.iter().map(|c| c * c).sum();
            Complex64::new((-r2 / 8.0 - g.frobenius_sqr() / 8.0).exp(), v.t() * 0.1)
        });
        let ft = tilde_lift(f);
        let x = QElement::new(x.0, x.1, x.2);
        prop_assert!(invariance_defect(&ft, &q, &x) <= 1e-12 * scale(&q) * scale(&x.h) * scale(&x.g));
    }
}
