use std::f64::consts::FRAC_PI_2;

use cd_eigen::sample::{self, seeded};
use cd_eigen::*;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_cd01),
        ..ProptestConfig::default()
    }
}

fn elem(n: u32) -> BoxedStrategy<Element> {
    prop::collection::vec(-1.0f64..1.0, 1usize << n)
        .prop_map(|c| Element::from_coeffs(c).unwrap())
        .boxed()
}

fn nonzero(n: u32) -> BoxedStrategy<Element> {
    elem(n).prop_filter("non-zero", |x| x.norm() > 1e-3).boxed()
}

fn perp(n: u32) -> BoxedStrategy<Element> {
    elem(n)
        .prop_map(|x| x.perp_complex_part().unwrap())
        .prop_filter("non-zero", |x| x.norm() > 1e-3)
        .boxed()
}

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex::new(re, im))
}

fn inner(x: &Element, y: &Element) -> f64 {
    x.inner_real(y).unwrap()
}

fn close(x: &Element, y: &Element, tol: f64) -> bool {
    x.max_abs_diff(y) <= tol
}

fn i_n(n: u32) -> Element {
    Element::imaginary_unit(n).unwrap()
}

/// `Σ v vᵀ` over a cluster's basis.
fn projector(cluster: &EigenCluster<f64>) -> Operator {
    let d = cluster.basis[0].dim();
    let rows: Vec<Vec<f64>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| cluster.basis.iter().map(|v| v.coeff(r) * v.coeff(c)).sum())
                .collect()
        })
        .collect();
    Operator::from_rows(&rows).unwrap()
}

fn same_eigenspaces(s: &SpectrumF64, t: &SpectrumF64, tol: f64) -> bool {
    s.clusters().len() == t.clusters().len()
        && s.clusters().iter().zip(t.clusters()).all(|(a, b)| {
            a.multiplicity == b.multiplicity
                && (a.value - b.value).abs() <= tol
                && projector(a).max_abs_diff(&projector(b)) <= tol
        })
}

/// A zero-divisor from one of the constructed families, scaled by a complex unit.
fn zero_divisor(seed: u64) -> Element {
    let mut rng = seeded(seed);
    let phase = Complex::from_angle((seed % 628) as f64 / 100.0);
    let a = match seed % 3 {
        0 => {
            let (a, b) = sample::orthogonal_equal_norm_imaginary_pair::<f64, _>(&mut rng, 3).unwrap();
            Element::join(&a, &b).unwrap()
        }
        1 => top_zero_divisor::<f64>(5).unwrap(),
        _ => {
            let a = sample::perp_complex::<f64, _>(&mut rng, 4).unwrap();
            Element::join(&a, &a.mul_complex_left(Complex::i()).unwrap()).unwrap()
        }
    };
    a.mul_complex_left(phase).unwrap()
}

proptest! {
    #![proptest_config(config(48))]

    // ---- algebra ----

    #[test]
    fn norm_squared_is_real((n, x) in (0u32..=6).prop_flat_map(|n| (Just(n), elem(n)))) {
        let xx = &x * &x.conjugate();
        prop_assert!(close(&xx, &Element::real(n, x.norm_sqr()), 1e-12));
        prop_assert!(xx.imag_part().norm() < 1e-12);
    }

    #[test]
    fn conjugation_is_basis_sign_flip(x in (0u32..=6).prop_flat_map(elem)) {
        let c = x.conjugate();
        prop_assert_eq!(c.coeff(0), x.coeff(0));
        for k in 1..x.dim() {
            prop_assert_eq!(c.coeff(k), -x.coeff(k));
        }
        prop_assert_eq!(c.conjugate(), x.clone());
        prop_assert_eq!(x.norm(), c.norm());
    }

    #[test]
    fn conjugate_of_product((x, y) in (0u32..=6).prop_flat_map(|n| (elem(n), elem(n)))) {
        let lhs = (&x * &y.conjugate()).conjugate();
        prop_assert!(close(&lhs, &(&y * &x.conjugate()), 1e-12));
    }

    #[test]
    fn real_and_imaginary_parts(x in (0u32..=6).prop_flat_map(elem)) {
        prop_assert_eq!(&x.real_part() + &x.imag_part(), x.clone());
        prop_assert!(x.real_part().coeffs()[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn inner_product_is_coefficient_dot((x, y) in (1u32..=6).prop_flat_map(|n| (elem(n), elem(n)))) {
        let dot: f64 = x.coeffs().iter().zip(y.coeffs()).map(|(a, b)| a * b).sum();
        prop_assert!((inner(&x, &y) - dot).abs() < 1e-12);
        prop_assert!((inner(&x, &y) - inner(&y, &x)).abs() < 1e-12);
        prop_assert!((inner(&x, &y) - (&x * &y.conjugate()).re()).abs() < 1e-12);
        let h = x.inner_hermitian(&y).unwrap();
        prop_assert!((h.re - inner(&x, &y)).abs() < 1e-12);
        let hx = x.inner_hermitian(&x).unwrap();
        prop_assert!(hx.im.abs() < 1e-12 && (hx.re - x.norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn norms_commute((x, y) in (0u32..=6).prop_flat_map(|n| (elem(n), elem(n)))) {
        let xy = (&x * &y).norm();
        prop_assert!((xy - (&y * &x).norm()).abs() < 1e-10);
        prop_assert!((xy - (&x * &y.conjugate()).norm()).abs() < 1e-10);
    }

    #[test]
    fn complex_scaling_of_perp_is_isometric(
        (a, alpha) in (2u32..=6).prop_flat_map(|n| (perp(n), complex()))
    ) {
        let lhs = a.mul_complex_left(alpha).unwrap().norm();
        prop_assert!((lhs - alpha.norm() * a.norm()).abs() < 1e-12);
    }

    #[test]
    fn ortho1((x, y) in (1u32..=6).prop_flat_map(|n| (elem(n), elem(n)))) {
        let y = y.imag_part();
        prop_assert!(inner(&x, &(&x * &y)).abs() < 1e-9);
    }

    #[test]
    fn multiplication_adjoints((n, a, x, y) in (0u32..=6).prop_flat_map(|n| (Just(n), elem(n), elem(n), elem(n)))) {
        let _ = n;
        let ac = a.conjugate();
        prop_assert!((inner(&(&a * &x), &y) - inner(&x, &(&ac * &y))).abs() < 1e-9);
        prop_assert!((inner(&(&x * &a), &y) - inner(&x, &(&y * &ac))).abs() < 1e-9);
    }

    #[test]
    fn complex_scalars_act_linearly(
        (n, x, alpha, beta) in (1u32..=6).prop_flat_map(|n| (Just(n), elem(n), complex(), complex()))
    ) {
        let (ae, be) = (alpha.to_element(n).unwrap(), beta.to_element(n).unwrap());
        let lhs = &ae * &(&be * &x);
        let rhs = &(alpha * beta).to_element(n).unwrap() * &x;
        prop_assert!(close(&lhs, &rhs, 1e-12));
        prop_assert!(close(&(&ae * &be), &(alpha * beta).to_element(n).unwrap(), 1e-15));
    }

    #[test]
    fn perp_multiplication_is_conjugate_linear(
        (n, a, x, alpha) in (2u32..=6).prop_flat_map(|n| (Just(n), perp(n), elem(n), complex()))
    ) {
        let lhs = &a * &x.mul_complex_left(alpha).unwrap();
        let rhs = (&a * &x).mul_complex_left(alpha.conj()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
        let _ = n;
    }

    #[test]
    fn perp_complex_identities(
        (n, a, b, alpha) in (2u32..=6).prop_flat_map(|n| (Just(n), perp(n), perp(n), complex()))
    ) {
        let ae = alpha.to_element(n).unwrap();
        let ace = alpha.conj().to_element(n).unwrap();
        prop_assert!(close(&(&ae * &a), &(&a * &ace), 1e-12));
        prop_assert!(close(&(&a * &(&ae * &b)), &(&ace * &(&a * &b)), 1e-12));
        prop_assert!(close(&(&(&ae * &a) * &b), &(&(&a * &b) * &ae), 1e-12));
    }

    #[test]
    fn complex_orthogonal_perp_products(
        (n, a, b, alpha, beta) in (2u32..=6).prop_flat_map(|n| (Just(n), perp(n), perp(n), complex(), complex()))
    ) {
        let ia = &i_n(n) * &a;
        let a2 = a.norm_sqr();
        let b = &(&b - &a.scale(inner(&b, &a) / a2)) - &ia.scale(inner(&b, &ia) / a2);
        prop_assert!(a.inner_hermitian(&b).unwrap().norm() < 1e-12);
        let lhs = &a.mul_complex_left(alpha).unwrap() * &b.mul_complex_left(beta).unwrap();
        let rhs = (&a * &b).mul_complex_left(alpha.conj() * beta.conj()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn cross_products((x, y) in (1u32..=6).prop_flat_map(|n| (elem(n), elem(n)))) {
        prop_assert!(x.cross(&x).unwrap().norm() < 1e-12);
        let c = x.cross(&y).unwrap();
        prop_assert_eq!(c.re(), 0.0);
        let (xi, yi) = (x.imag_part(), y.imag_part());
        let ci = xi.cross(&yi).unwrap();
        prop_assert!(inner(&ci, &xi).abs() < 1e-9 && inner(&ci, &yi).abs() < 1e-9);
    }

    #[test]
    fn cross_in_unit_eigenspace(
        (n, a, w) in (2u32..=6).prop_flat_map(|n| (Just(n), nonzero(n), prop::array::uniform4(-1.0f64..1.0)))
    ) {
        // b ∈ span{1, a, i_n, i_n a} ⊆ Eig_1(a)
        let ia = &i_n(n) * &a;
        let b = &(&(&Element::real(n, w[0]) + &a.scale(w[1])) + &i_n(n).scale(w[2])) + &ia.scale(w[3]);
        prop_assume!(b.norm() > 1e-3);
        let (an, bn) = (a.norm(), b.norm());
        let cos = inner(&a, &b) / (an * bn);
        let sin = (1.0 - cos * cos).max(0.0).sqrt();
        let cross = a.cross(&b).unwrap().norm();
        prop_assert!((cross - an * bn * sin).abs() < 1e-9);
        prop_assert!(cross <= 0.5 * (an * an + bn * bn) + 1e-12);
    }

    #[test]
    fn cross_of_complex_multiples(
        (m, a, alpha, beta) in (2u32..=6).prop_flat_map(|m| (Just(m), perp(m), complex(), complex()))
    ) {
        let lhs = a.mul_complex_left(alpha).unwrap().cross(&a.mul_complex_left(beta).unwrap()).unwrap();
        let ab = alpha.to_element(m).unwrap().cross(&beta.to_element(m).unwrap()).unwrap();
        prop_assert!(close(&lhs, &ab.scale(a.norm_sqr()), 1e-12));
        prop_assert!(close(&ab, &i_n(m).scale(alpha.cross(beta)), 1e-15));
    }

    #[test]
    fn split_join_round_trip((b, c) in (0u32..=5).prop_flat_map(|n| (elem(n), elem(n)))) {
        let x = Element::join(&b, &c).unwrap();
        prop_assert_eq!(x.split().unwrap(), (b, c));
    }

    #[test]
    fn complex_projection_recomposes(x in (1u32..=6).prop_flat_map(nonzero)) {
        let n = x.level();
        let p = x.project_complex().unwrap();
        let beta = p.complex.to_element(n).unwrap();
        prop_assert!(close(&(&beta + &p.perp), &x, 1e-15));
        prop_assert!(p.perp.coeff(0) == 0.0 && p.perp.coeff(1 << (n - 1)) == 0.0);
        let polar = p.polar.unwrap();
        prop_assert!((0.0..=FRAC_PI_2).contains(&polar.theta));
        let mut y = Element::zero(n);
        if let Some(u) = &polar.unit_perp {
            y += &u.scale(polar.theta.cos());
        }
        if let Some(u) = &polar.unit_complex {
            y += &u.scale(polar.theta.sin()).to_element(n).unwrap();
        }
        prop_assert!(close(&y.scale(polar.radius), &x, 1e-12));
    }

    #[test]
    fn octonions_are_alternative(a in nonzero(3)) {
        prop_assert!(a.is_alternative(1e-12));
    }

    #[test]
    fn expressions_round_trip(x in (0u32..=6).prop_flat_map(elem)) {
        let back = parse_element::<f64>(&to_expression(&x), x.level()).unwrap();
        prop_assert_eq!(back, x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Element>(&json).unwrap(), x);
    }

    // ---- operators ----

    #[test]
    fn multiplication_matrices((a, x) in (0u32..=5).prop_flat_map(|n| (elem(n), elem(n)))) {
        let l = mult_matrix(&a, Side::Left);
        let r = mult_matrix(&a, Side::Right);
        prop_assert!(close(&l.apply(&x), &(&a * &x), 1e-12));
        prop_assert!(close(&r.apply(&x), &(&x * &a), 1e-12));
        prop_assert_eq!(l.transpose(), mult_matrix(&a.conjugate(), Side::Left));
        prop_assert_eq!(r.transpose(), mult_matrix(&a.conjugate(), Side::Right));
    }

    #[test]
    fn m_operator_symmetries(
        (n, a, r, beta) in (1u32..=5).prop_flat_map(|n| (Just(n), nonzero(n), 0.1f64..10.0, complex()))
    ) {
        let m = m_operator(&a).unwrap();
        prop_assert!(m.is_symmetric());
        prop_assert!(m.max_abs_diff(&m_operator(&a.conjugate()).unwrap()) < 1e-12);
        prop_assert!(m.max_abs_diff(&m_operator(&a.scale(-r)).unwrap()) < 1e-12);
        let li = mult_matrix(&i_n(n), Side::Left);
        prop_assert!(m.matmul(&li).max_abs_diff(&li.matmul(&m)) < 1e-12);
        let p = a.perp_complex_part().unwrap();
        prop_assume!(p.norm() > 1e-3 && beta.norm() > 1e-3);
        let mp = m_operator(&p).unwrap();
        prop_assert!(mp.max_abs_diff(&m_operator(&p.mul_complex_left(beta).unwrap()).unwrap()) < 1e-12);
    }

    #[test]
    fn m_operator_is_the_gram_form((a, x, y) in (0u32..=5).prop_flat_map(|n| (nonzero(n), elem(n), elem(n)))) {
        let m = m_operator(&a).unwrap();
        let lhs = inner(&(&a * &x), &(&a * &y));
        prop_assert!((lhs - a.norm_sqr() * inner(&m.apply(&x), &y)).abs() < 1e-9);
        prop_assert!((lhs - a.norm_sqr() * inner(&x, &m.apply(&y))).abs() < 1e-9);
    }

    #[test]
    fn m_operator_is_positive_semidefinite(a in (1u32..=5).prop_flat_map(nonzero)) {
        let eig = symmetric_eigen(&m_operator(&a).unwrap()).unwrap();
        prop_assert!(eig.values().iter().all(|&v| v >= -1e-9));
    }

    #[test]
    fn mixed_operator_matches_direct(
        (a, phi, theta) in (2u32..=5).prop_flat_map(|n| (perp(n), 0.0f64..6.3, 0.0f64..FRAC_PI_2))
    ) {
        let a = a.normalized().unwrap();
        let beta = Complex::from_angle(phi);
        let x = &a.scale(theta.cos()) + &beta.to_element(a.level()).unwrap().scale(theta.sin());
        let mixed = mixed_m_operator(&a, beta, theta).unwrap();
        prop_assert!(mixed.max_abs_diff(&m_operator(&x).unwrap()) < 1e-10);
    }

    #[test]
    fn trace_pairing_is_scaled_inner_product((x, y) in (0u32..=5).prop_flat_map(|n| (elem(n), elem(n)))) {
        let scale = (x.dim() as f64) * x.norm().max(1.0) * y.norm().max(1.0);
        prop_assert!((trace_pairing(&x, &y).unwrap() - x.dim() as f64 * inner(&x, &y)).abs() <= 1e-9 * scale);
    }
}

proptest! {
    #![proptest_config(config(24))]

    // ---- eigentheory ----

    #[test]
    fn spectrum_invariants(a in (1u32..=6).prop_flat_map(nonzero)) {
        let n = a.level();
        let s = Spectrum::of(&a).unwrap();
        let dim = 1usize << n;
        prop_assert_eq!(s.total_multiplicity(), dim);
        prop_assert!((s.weighted_sum() - dim as f64).abs() <= 1e-6 * dim as f64);
        if n >= 2 {
            prop_assert!(s.clusters().iter().all(|c| c.multiplicity % 4 == 0));
        }
        if n >= 3 {
            let top = (1u64 << (n - 3)) as f64;
            prop_assert!(s.values().iter().all(|&v| (-1e-9..=top + 1e-6).contains(&v)));
        }
        prop_assert!(s.min_value() <= 1.0 + 1e-9 && s.max_value() >= 1.0 - 1e-9);
        let m = m_operator(&a).unwrap();
        for (k, c) in s.clusters().iter().enumerate() {
            prop_assert_eq!(c.basis.len(), c.multiplicity);
            for v in &c.basis {
                prop_assert!((&m.apply(v) - &v.scale(c.value)).norm() < 1e-8);
                for other in &s.clusters()[k + 1..] {
                    prop_assert!(other.basis.iter().all(|w| inner(v, w).abs() < 1e-8));
                }
            }
        }
    }

    #[test]
    fn spectrum_scale_invariance(
        (a, r, beta) in (2u32..=5).prop_flat_map(|n| (perp(n), 0.1f64..10.0, complex()))
    ) {
        prop_assume!(beta.norm() > 1e-3);
        let s = Spectrum::of(&a).unwrap();
        prop_assert!(same_eigenspaces(&s, &Spectrum::of(&a.scale(-r)).unwrap(), 1e-7));
        prop_assert!(same_eigenspaces(&s, &Spectrum::of(&a.mul_complex_left(beta).unwrap()).unwrap(), 1e-7));
    }

    #[test]
    fn shift_law((a, phi, theta) in (2u32..=5).prop_flat_map(|n| (perp(n), 0.0f64..6.3, 0.05f64..1.4))) {
        let a = a.normalized().unwrap();
        let beta = Complex::from_angle(phi).to_element(a.level()).unwrap();
        let x = &a.scale(theta.cos()) + &beta.scale(theta.sin());
        let base = Spectrum::of(&a).unwrap();
        let mixed = Spectrum::of(&x).unwrap();
        let (s2, c2) = (theta.sin().powi(2), theta.cos().powi(2));
        prop_assert_eq!(base.clusters().len(), mixed.clusters().len());
        for (b, m) in base.clusters().iter().zip(mixed.clusters()) {
            prop_assert_eq!(b.multiplicity, m.multiplicity);
            prop_assert!((s2 + b.value * c2 - m.value).abs() < 1e-7);
        }
    }

    #[test]
    fn zero_divisors_are_perpendicular_to_complexes(seed in any::<u64>(), x in (2u32..=5).prop_flat_map(nonzero)) {
        let a = zero_divisor(seed).normalized().unwrap();
        prop_assert!(is_zero_divisor(&a, 1e-8).unwrap());
        prop_assert!(a.complex_part().unwrap().norm() <= 1e-7);
        let x = x.normalized().unwrap();
        if is_zero_divisor(&x, 1e-8).unwrap() {
            prop_assert!(x.complex_part().unwrap().norm() <= 1e-7);
        }
    }

    #[test]
    fn kernels_of_m_and_l_agree(seed in any::<u64>()) {
        let a = zero_divisor(seed);
        let s = Spectrum::of(&a).unwrap();
        let eig0 = &s.clusters()[0];
        prop_assert_eq!(eig0.value, 0.0);
        for v in &eig0.basis {
            prop_assert!((&a * v).norm() < 1e-9);
        }
        let l = mult_matrix(&a, Side::Left);
        let gram = l.transpose().matmul(&l);
        let rows: Vec<Vec<f64>> = (0..gram.dim()).map(|r| gram.row(r).to_vec()).collect();
        let singular = symmetric_eigen(&Operator::from_rows(&rows).unwrap()).unwrap();
        let kernel_dim = singular.values().iter().filter(|&&v| v.abs() < 1e-9).count();
        prop_assert_eq!(kernel_dim, eig0.multiplicity);
    }

    #[test]
    fn left_multiplication_preserves_eigenspaces(a in (3u32..=5).prop_flat_map(nonzero)) {
        let s = Spectrum::of(&a).unwrap();
        for c in s.clusters().iter().filter(|c| c.value > 1e-8) {
            for v in &c.basis {
                let w = &a * v;
                let kept = s.project(c, &w).norm();
                prop_assert!(kept >= (1.0 - 1e-7) * w.norm());
                prop_assert!((w.norm() - c.value.sqrt() * a.norm()).abs() < 1e-8 * a.norm());
            }
        }
    }

    #[test]
    fn eigendecomposition_partitions(
        (a, x) in (2u32..=5).prop_flat_map(|n| (nonzero(n), nonzero(n))),
        seed in any::<u64>(),
    ) {
        for a in [a, zero_divisor(seed)] {
            let x = if x.level() == a.level() { x.clone() } else { sample::gaussian(&mut seeded(seed), a.level()) };
            let m = m_operator(&a).unwrap();
            let parts = eigendecompose(&x, &a).unwrap();
            let mut sum = Element::zero(a.level());
            for (k, p) in parts.iter().enumerate() {
                sum += &p.component;
                prop_assert!((&m.apply(&p.component) - &p.component.scale(p.value)).norm() < 1e-8);
                for q in &parts[k + 1..] {
                    prop_assert!(inner(&p.component, &q.component).abs() < 1e-9);
                }
            }
            prop_assert!(close(&sum, &x, 1e-12));
            // images under L_a decompose the product, minus the kernel part
            let ax = &a * &x;
            // kernel components of ax vanish only to solver accuracy
            let image: Vec<_> = eigendecompose(&ax, &a)
                .unwrap()
                .into_iter()
                .filter(|c| c.component.norm() > 1e-9 * ax.norm())
                .collect();
            let mapped: Vec<_> = parts.iter().filter(|p| p.value > 1e-8).collect();
            prop_assert_eq!(image.len(), mapped.len());
            for (img, p) in image.iter().zip(mapped) {
                prop_assert!((img.value - p.value).abs() < 1e-12);
                prop_assert!(close(&img.component, &(&a * &p.component), 1e-9));
            }
        }
    }

    #[test]
    fn doubling_bound((b, c) in (3u32..=5).prop_flat_map(|n| (nonzero(n), nonzero(n)))) {
        let top = |x: &Element| extreme_eigenvalues(x).unwrap().1;
        let joined = top(&Element::join(&b, &c).unwrap());
        prop_assert!(joined <= 2.0 * top(&b).max(top(&c)) + 1e-7);
    }

    #[test]
    fn norm_sandwich((a, x) in (1u32..=6).prop_flat_map(|n| (nonzero(n), elem(n)))) {
        let (lo, hi) = extreme_eigenvalues(&a).unwrap();
        let scale = a.norm() * x.norm();
        let ax = (&a * &x).norm();
        prop_assert!(lo.sqrt() * scale - 1e-9 <= ax && ax <= hi.sqrt() * scale + 1e-9);
    }

    #[test]
    fn complex_span_of_a_is_in_unit_eigenspace(a in (2u32..=6).prop_flat_map(perp), beta in complex()) {
        let n = a.level();
        let a = &a + &beta.to_element(n).unwrap();
        let h = generated_subalgebra(&[a.clone(), i_n(n)], 1e-9).unwrap();
        prop_assert_eq!(h.dim(), 4);
        prop_assert!(contains(&h, &(&i_n(n) * &a), 1e-9).unwrap());
        for v in h.basis() {
            prop_assert!(verify_eig_norm(&a, v, 1.0, 1e-8));
        }
        prop_assert!(verify_eig_norm(&a, &Element::one(n), 1.0, 1e-12));
    }

    #[test]
    fn eig_norm_conditions_match_membership(a in (4u32..=5).prop_flat_map(nonzero), x in nonzero(4), seed in any::<u64>()) {
        let x = if a.level() == 4 { x } else { sample::gaussian(&mut seeded(seed), 5) };
        let s = Spectrum::of(&a).unwrap();
        prop_assume!(s.clusters().len() > 1);
        let (lo, hi) = (s.min_value(), s.max_value());
        for c in s.clusters() {
            for v in &c.basis {
                prop_assert!(verify_eig_norm(&a, v, c.value, 1e-8));
            }
        }
        // a mixed x fails for both extremes, already on the first condition
        for lambda in [lo, hi] {
            prop_assert!(!verify_eig_norm(&a, &x, lambda, 1e-8));
            prop_assert!(!eig_norm_conditions(&a, &x, lambda, 1e-8).0);
        }
        let top = &s.clusters()[s.clusters().len() - 1];
        prop_assert!(eig_norm_conditions(&a, &top.basis[0], hi, 1e-8).0);
    }

    #[test]
    fn doubled_product_closed_form(
        (a, alpha, beta, x, y) in (2u32..=5).prop_flat_map(|m| (perp(m), complex(), complex(), elem(m), elem(m)))
    ) {
        let m = a.level();
        let h = generated_subalgebra(&[a.clone(), i_n(m)], 1e-9).unwrap();
        let x = &x - &h.project(&x);
        let y = &y - &h.project(&y);
        let big = Element::join(&a.mul_complex_left(alpha).unwrap(), &a.mul_complex_left(beta).unwrap()).unwrap();
        let lhs = &big * &(&big * &Element::join(&x, &y).unwrap());
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        let cross = alpha.to_element(m).unwrap().cross(&beta.to_element(m).unwrap()).unwrap().scale(2.0);
        let (aax, aay) = (&a * &(&a * &x), &a * &(&a * &y));
        let rhs = Element::join(
            &(&aax.scale(norm) + &(&cross * &aay)),
            &(&aay.scale(norm) - &(&cross * &aax)),
        ).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    // ---- subalgebras ----

    #[test]
    fn generated_subalgebras_are_closed(gens in (1u32..=4).prop_flat_map(|n| prop::collection::vec(elem(n), 1..3))) {
        let s = generated_subalgebra(&gens, 1e-9).unwrap();
        prop_assert!(s.dim().is_power_of_two() && s.dim() <= 1 << s.level());
        prop_assert!(s.closure_defect() < 1e-8);
        prop_assert!(contains(&s, &Element::one(s.level()), 1e-12).unwrap());
        for g in &gens {
            prop_assert!(contains(&s, g, 1e-9).unwrap());
        }
    }

    #[test]
    fn octonion_pair_subalgebra_in_unit_eigenspace(seed in any::<u64>()) {
        let (a, b) = sample::orthogonal_equal_norm_imaginary_pair::<f64, _>(&mut seeded(seed), 3).unwrap();
        let h = generated_subalgebra(&[a.clone(), b.clone()], 1e-9).unwrap();
        prop_assert_eq!(h.dim(), 4);
        let ab = Element::join(&a, &b).unwrap();
        let zero = Element::zero(3);
        for u in h.basis() {
            for v in [Element::join(u, &zero).unwrap(), Element::join(&zero, u).unwrap()] {
                prop_assert!(verify_eig_norm(&ab, &v, 1.0, 1e-8));
            }
        }
    }
}
