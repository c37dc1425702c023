use jordan_tp::rng::rng_for;
use jordan_tp::{AtomParam, Element, Error, ModelDescriptor, Shape, State, Tolerance};
use num_complex::Complex;
use proptest::prelude::*;

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn el(v: &[f64]) -> Element<f64> {
    Element::from_f64(v).unwrap()
}

fn symmetric_models() -> Vec<ModelDescriptor> {
    vec![
        ModelDescriptor::classical(4),
        ModelDescriptor::spin(3),
        ModelDescriptor::sym(3),
        ModelDescriptor::herm(3),
        ModelDescriptor::lpq(3, 2.0).unwrap(),
    ]
}

/// `(1 + f_{ω2}·ω1)/2` with `f_ω = sign(ω)|ω|^{p−1}`, straight from the
/// duality map on the unit sphere of l^p.
fn lpq_oracle(p: f64, w1: &[f64], w2: &[f64]) -> f64 {
    let f2: Vec<f64> = w2.iter().map(|x| x.signum() * x.abs().powf(p - 1.0)).collect();
    (1.0 + f2.iter().zip(w1).map(|(a, b)| a * b).sum::<f64>()) / 2.0
}

#[test]
fn state_of_atom_examples() {
    let t = tol();
    let h2 = ModelDescriptor::herm(2);
    let e = el(&[1.0, 0.0, 0.0, 0.0]);
    let s = h2.state_of_atom(&e, &t).unwrap();
    assert_eq!(s, State::DualVector(e.clone()));
    assert!((s.evaluate(&h2, &h2.order_unit()).unwrap() - 1.0).abs() < 1e-15);

    let c3 = ModelDescriptor::classical(3);
    let s = c3.state_of_atom(&el(&[0.0, 1.0, 0.0]), &t).unwrap();
    assert_eq!(s.evaluate(&c3, &el(&[0.3, 0.7, 0.9])).unwrap(), 0.7);

    let l3 = ModelDescriptor::lpq(2, 3.0).unwrap();
    let w = 2f64.powf(-1.0 / 3.0);
    let e = l3.atom_from_param(&AtomParam::BoundaryPoint(vec![w, w]), &t).unwrap();
    match l3.state_of_atom(&e, &t).unwrap() {
        State::PointEvaluation(omega) => {
            assert!((omega[0] - w).abs() < 1e-12 && (omega[1] - w).abs() < 1e-12);
        }
        other => panic!("{other:?}"),
    }

    assert!(matches!(h2.state_of_atom(&h2.order_unit(), &t), Err(Error::NotAnAtom)));
}

#[test]
fn states_are_normalized_and_positive() {
    let t = tol();
    for m in [ModelDescriptor::herm(3), ModelDescriptor::lpq(3, 1.5).unwrap(), ModelDescriptor::spin(2)] {
        let mut rng = rng_for(11, 0);
        let e = m.random_atom_with::<f64, _>(&mut rng);
        let s = m.state_of_atom(&e, &t).unwrap();
        assert!((s.evaluate(&m, &m.order_unit()).unwrap() - 1.0).abs() < 1e-9);
        for seed in 0..100 {
            let a = m.random_element::<f64>(seed, Shape::Positive);
            assert!(s.evaluate(&m, &a).unwrap() >= -1e-9);
        }
    }
}

#[test]
fn transition_prob_examples() {
    let t = tol();
    let h2 = ModelDescriptor::herm(2);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let e1 = h2
        .atom_from_param(&AtomParam::ComplexVector(vec![Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)]), &t)
        .unwrap();
    let e2 =
        h2.atom_from_param(&AtomParam::ComplexVector(vec![Complex::new(r, 0.0), Complex::new(r, 0.0)]), &t).unwrap();
    assert!((h2.transition_prob(&e1, &e2, &t).unwrap() - 0.5).abs() < 1e-15);
    assert!((h2.transition_prob(&e1, &e1, &t).unwrap() - 1.0).abs() < 1e-15);
    assert!(h2.transition_prob(&e1, &h2.order_unit(), &t).is_err());
}

#[test]
fn transition_prob_matches_overlap_oracle() {
    let t = tol();
    let h3 = ModelDescriptor::herm(3);
    let mut rng = rng_for(21, 0);
    for _ in 0..50 {
        let (p1, p2) = (h3.random_param_with::<f64, _>(&mut rng), h3.random_param_with::<f64, _>(&mut rng));
        let (AtomParam::ComplexVector(a), AtomParam::ComplexVector(b)) = (&p1, &p2) else { panic!() };
        let overlap: Complex<f64> = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
        let e1 = h3.atom_from_param(&p1, &t).unwrap();
        let e2 = h3.atom_from_param(&p2, &t).unwrap();
        assert!((h3.transition_prob(&e1, &e2, &t).unwrap() - overlap.norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn lpq_asymmetry_baseline() {
    let t = tol();
    let p = 3.0;
    let l3 = ModelDescriptor::lpq(2, p).unwrap();
    let w1 = vec![1.0, 0.0];
    let w2 = vec![2f64.powf(-1.0 / 3.0); 2];
    let e1 = l3.atom_from_param(&AtomParam::BoundaryPoint(w1.clone()), &t).unwrap();
    let e2 = l3.atom_from_param(&AtomParam::BoundaryPoint(w2.clone()), &t).unwrap();
    let p12 = l3.transition_prob(&e1, &e2, &t).unwrap();
    let p21 = l3.transition_prob(&e2, &e1, &t).unwrap();
    assert!((p12 - lpq_oracle(p, &w1, &w2)).abs() < 1e-12);
    assert!((p21 - lpq_oracle(p, &w2, &w1)).abs() < 1e-12);
    // Baseline: (1 + 2^{-2/3})/2 and (1 + 2^{-1/3})/2.
    assert!((p12 - 0.814_980_262_473_718_4).abs() < 1e-12, "{p12}");
    assert!((p21 - 0.896_850_262_992_049_8).abs() < 1e-12, "{p21}");
    assert!((p12 - p21).abs() > 0.05);
}

#[test]
fn lpq_transition_prob_matches_duality_oracle() {
    let t = tol();
    for p in [1.5, 3.0, 4.0] {
        let m = ModelDescriptor::lpq(3, p).unwrap();
        let mut rng = rng_for(31, 0);
        for _ in 0..30 {
            let p1 = m.random_param_with::<f64, _>(&mut rng);
            let p2 = m.random_param_with::<f64, _>(&mut rng);
            let (AtomParam::BoundaryPoint(w1), AtomParam::BoundaryPoint(w2)) = (&p1, &p2) else { panic!() };
            let e1 = m.atom_from_param(&p1, &t).unwrap();
            let e2 = m.atom_from_param(&p2, &t).unwrap();
            let got = m.transition_prob(&e1, &e2, &t).unwrap();
            assert!((got - lpq_oracle(p, w1, w2)).abs() < 1e-9, "p={p}");
        }
    }
}

#[test]
fn tp_matrix_examples() {
    let t = tol();
    let c3 = ModelDescriptor::classical(3);
    let basis: Vec<_> = (0..3).map(|i| c3.atom_from_param(&AtomParam::Basis(i), &t).unwrap()).collect();
    let tp = c3.tp_matrix(&basis, &t).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(tp.entries[i][j], if i == j { 1.0 } else { 0.0 });
        }
    }

    let h2 = ModelDescriptor::herm(2);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let fam = vec![
        el(&[1.0, 0.0, 0.0, 0.0]),
        el(&[0.0, 1.0, 0.0, 0.0]),
        h2.atom_from_param(&AtomParam::ComplexVector(vec![Complex::new(r, 0.0), Complex::new(r, 0.0)]), &t).unwrap(),
    ];
    let tp = h2.tp_matrix(&fam, &t).unwrap();
    assert!((tp.entries[0][2] - 0.5).abs() < 1e-15);
    assert!((tp.column_sum(&[0, 1], 2) - 1.0).abs() < 1e-15);

    let l3 = ModelDescriptor::lpq(2, 3.0).unwrap();
    let mut rng = rng_for(4, 0);
    let atoms: Vec<_> = (0..3).map(|_| l3.random_atom_with::<f64, _>(&mut rng)).collect();
    let tp = l3.tp_matrix(&atoms, &t).unwrap();
    assert!(tp.symmetry_defect() > 1e-3);
    for i in 0..3 {
        assert!((tp.entries[i][i] - 1.0).abs() < 1e-9);
        for j in 0..3 {
            assert!(tp.entries[i][j] >= -1e-9 && tp.entries[i][j] <= 1.0 + 1e-9);
        }
    }

    let csv = tp.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "e0,e1,e2");
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(row, tp.entries[0]);
}

#[test]
fn tp_rows_sum_to_one() {
    let t = tol();
    for m in symmetric_models().into_iter().chain([ModelDescriptor::lpq(3, 3.0).unwrap()]) {
        let r = m.verify_tp_rows::<f64>(3, 50).unwrap();
        assert!(r.passed(), "{m}: {r:?}");
        let mut rng = rng_for(2, 2);
        let frame = m.random_frame_with::<f64, _>(&mut rng);
        let e = m.random_atom_with::<f64, _>(&mut rng);
        let s: f64 = frame.iter().map(|f| m.transition_prob(f, &e, &t).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-9, "{m}");
    }
}

#[test]
fn symmetry_dichotomy() {
    for m in symmetric_models().into_iter().chain([ModelDescriptor::lpq(2, 2.0).unwrap()]) {
        assert!(m.symmetry_defect::<f64>(7, 200) <= 1e-9, "{m}");
    }
    let d = ModelDescriptor::lpq(2, 3.0).unwrap().symmetry_defect::<f64>(7, 200);
    assert!(d > 0.01, "{d}");
    // Regression baseline for seed 7, 200 trials.
    assert!((d - LPQ_2_3_BASELINE).abs() < 1e-12, "{d:.16e}");
}

const LPQ_2_3_BASELINE: f64 = 2.238_326_628_395_050_4e-1;

#[test]
fn inner_product_examples() {
    let t = tol();
    let h2 = ModelDescriptor::herm(2);
    let one = h2.order_unit::<f64>();
    assert!((h2.inner_product_t3(&one, &one, &t).unwrap() - 2.0).abs() < 1e-12);

    let c3 = ModelDescriptor::classical(3);
    let (a, b) = (el(&[0.5, -2.0, 3.0]), el(&[1.5, 4.0, -1.0]));
    assert!((c3.inner_product_t3(&a, &b, &t).unwrap() - a.dot(&b)).abs() < 1e-12);

    for m in symmetric_models() {
        let mut rng = rng_for(5, 5);
        let e = m.random_atom_with::<f64, _>(&mut rng);
        assert!((m.inner_product_t3(&e, &e, &t).unwrap() - 1.0).abs() < 1e-12, "{m}");
    }

    let l3 = ModelDescriptor::lpq(2, 3.0).unwrap();
    let one = l3.order_unit::<f64>();
    assert!(matches!(l3.inner_product_t3(&one, &one, &t), Err(Error::Unsupported(_))));
}

#[test]
fn inner_product_matches_trace_oracle() {
    let t = tol();
    for (m, complex) in [(ModelDescriptor::herm(3), true), (ModelDescriptor::sym(3), false)] {
        for seed in 0..20 {
            let a = m.random_element::<f64>(seed, Shape::Any);
            let b = m.random_element::<f64>(seed + 100, Shape::Any);
            // tr(ab) = Σ_ij a_ij conj(b_ij) from the full matrices.
            let am = jordan_tp::linalg::CMatrix::unpack(3, a.coords(), complex);
            let bm = jordan_tp::linalg::CMatrix::unpack(3, b.coords(), complex);
            let mut tr = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    tr += (am[(i, j)] * bm[(j, i)]).re;
                }
            }
            assert!((m.inner_product_t3(&a, &b, &t).unwrap() - tr).abs() < 1e-9);
        }
    }
}

#[test]
fn verifiers_pass_on_all_backends() {
    let t = tol();
    let all = symmetric_models()
        .into_iter()
        .chain([ModelDescriptor::lpq(2, 3.0).unwrap(), ModelDescriptor::lpq(3, 1.5).unwrap()]);
    for m in all {
        let reports = [
            m.verify_axiom1(1, 100, &t).unwrap(),
            m.verify_axiom2(1, 100, &t).unwrap(),
            m.verify_star(1, 100, &t).unwrap(),
            m.verify_strong_state_space(1, 100, &t).unwrap(),
            m.verify_orthogonality(1, 100, &t).unwrap(),
        ];
        for r in reports {
            assert!(r.passed(), "{m}: {:?}", r.failures().collect::<Vec<_>>());
        }
        if m.symmetric_tp() {
            for r in [
                m.check_inner_product(1, 100, &t).unwrap(),
                m.check_self_duality(1, 100, &t).unwrap(),
                m.check_norm_equivalence(1, 100, &t).unwrap(),
            ] {
                assert!(r.passed(), "{m}: {:?}", r.failures().collect::<Vec<_>>());
            }
        } else {
            assert!(m.check_self_duality::<f64>(1, 10, &t).is_err());
        }
    }
}

#[test]
fn norm_equivalence_tight_cases() {
    let t = tol();
    for m in [ModelDescriptor::classical(4), ModelDescriptor::herm(3)] {
        let one = m.order_unit::<f64>();
        let cap = m.info_capacity() as f64;
        let ip = m.inner_product_t3(&one, &one, &t).unwrap().sqrt();
        assert!((ip - cap.sqrt() * m.order_norm(&one, &t).unwrap()).abs() < 1e-12);
        let mut rng = rng_for(1, 1);
        let e = m.random_atom_with::<f64, _>(&mut rng);
        assert!((m.inner_product_t3(&e, &e, &t).unwrap().sqrt() - m.order_norm(&e, &t).unwrap()).abs() < 1e-12);
    }
    let h3 = ModelDescriptor::herm(3);
    let r = h3.check_norm_equivalence::<f64>(9, 500, &t).unwrap();
    assert!(r.passed());
}

#[test]
fn self_duality_negative_witness() {
    let t = tol();
    let c3 = ModelDescriptor::classical(3);
    let a = el(&[1.0, -0.5, 2.0]);
    let b = c3.atom_from_param(&AtomParam::Basis(1), &t).unwrap();
    assert!(c3.inner_product_t3(&a, &b, &t).unwrap() < 0.0);
    let h3 = ModelDescriptor::herm(3);
    let r = h3.check_self_duality::<f64>(2, 50, &t).unwrap();
    assert!(r.get("selfdual.negative_element_has_witness").unwrap().passed);
}

#[test]
fn verifier_examples() {
    let t = tol();
    // Strong state space witness for p = (1,0,0), q = (0,1,1).
    let c3 = ModelDescriptor::classical(3);
    let p = el(&[1.0, 0.0, 0.0]);
    let q = el(&[0.0, 1.0, 1.0]);
    let s = c3.state_of_atom(&p, &t).unwrap();
    assert_eq!(s.evaluate(&c3, &p).unwrap(), 1.0);
    assert_eq!(s.evaluate(&c3, &q).unwrap(), 0.0);

    // Half mixture of orthogonal atoms gives 1/2.
    let h3 = ModelDescriptor::herm(3);
    let mut rng = rng_for(12, 0);
    let frame = h3.random_frame_with::<f64, _>(&mut rng);
    let mix = State::Mixture(vec![
        (0.5, h3.state_of_atom(&frame[0], &t).unwrap()),
        (0.5, h3.state_of_atom(&frame[1], &t).unwrap()),
    ]);
    assert!((mix.evaluate(&h3, &frame[0]).unwrap() - 0.5).abs() < 1e-12);

    // (∗) construction: a = e + 0.7 f with f ⟂ e.
    let a = &frame[0] + &(0.7 * &frame[1]);
    assert!((h3.state_value(&frame[0], &a) - 1.0).abs() < 1e-12);
    assert!(h3.leq(&frame[0], &a, &t).unwrap());
    assert!(h3.leq(&frame[0], &h3.order_unit(), &t).unwrap());
}

#[test]
fn orthogonality_biconditional_on_pairs() {
    let t = tol();
    for m in [ModelDescriptor::lpq(2, 3.0).unwrap(), ModelDescriptor::herm(2), ModelDescriptor::spin(3)] {
        let mut rng = rng_for(13, 0);
        for k in 0..40 {
            let frame = m.random_frame_with::<f64, _>(&mut rng);
            let e1 = frame[0].clone();
            let e2 = if k % 2 == 0 { frame[1].clone() } else { m.random_atom_with(&mut rng) };
            let z12 = m.transition_prob(&e1, &e2, &t).unwrap().abs() <= 1e-9;
            let z21 = m.transition_prob(&e2, &e1, &t).unwrap().abs() <= 1e-9;
            let orth = m.leq(&(&e1 + &e2), &m.order_unit(), &t).unwrap();
            assert_eq!(z12, z21);
            assert_eq!(z12, orth, "{m} k={k}");
        }
    }
}

fn herm3() -> ModelDescriptor {
    ModelDescriptor::herm(3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_symmetric_and_bilinear(seed in 0u64..10_000, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let t = tol();
        let m = herm3();
        let a = m.random_element::<f64>(seed, Shape::Any);
        let b = m.random_element::<f64>(seed ^ 0xabcd, Shape::Any);
        let c = m.random_element::<f64>(seed ^ 0x1234, Shape::Any);
        let ab = m.inner_product_t3(&a, &b, &t).unwrap();
        let ba = m.inner_product_t3(&b, &a, &t).unwrap();
        prop_assert!((ab - ba).abs() < 1e-9);
        let lin = &(x * &a) + &(y * &c);
        let lhs = m.inner_product_t3(&lin, &b, &t).unwrap();
        let rhs = x * ab + y * m.inner_product_t3(&c, &b, &t).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8);
    }

    #[test]
    fn norm_bounds_hold(seed in 0u64..10_000) {
        let t = tol();
        for m in [herm3(), ModelDescriptor::spin(4)] {
            let a = m.random_element::<f64>(seed, Shape::Any);
            let norm = m.order_norm(&a, &t).unwrap();
            let ip = m.inner_product_t3(&a, &a, &t).unwrap().sqrt();
            prop_assert!(norm - 1e-9 <= ip);
            prop_assert!(ip <= (m.info_capacity() as f64).sqrt() * norm + 1e-9);
        }
    }

    #[test]
    fn transition_prob_in_unit_interval(seed in 0u64..10_000, p in 1.2f64..6.0) {
        let t = tol();
        let m = ModelDescriptor::lpq(3, p).unwrap();
        let mut rng = rng_for(seed, 0);
        let e1 = m.random_atom_with::<f64, _>(&mut rng);
        let e2 = m.random_atom_with::<f64, _>(&mut rng);
        let v = m.transition_prob(&e1, &e2, &t).unwrap();
        prop_assert!((-1e-9..=1.0 + 1e-9).contains(&v));
    }
}
