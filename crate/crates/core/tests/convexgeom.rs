use jordan_tp::convexgeom::{smooth_ball_e_omega, PolytopeStateSpace, MIDPOINT_SAMPLES};
use jordan_tp::rng::rng_for;
use jordan_tp::{Error, ModelDescriptor, Tolerance};
use proptest::prelude::*;
use rand::Rng;

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn poly(v: &[&[f64]]) -> PolytopeStateSpace<f64> {
    PolytopeStateSpace::new(v.iter().map(|p| p.to_vec()).collect()).unwrap()
}

fn triangle() -> PolytopeStateSpace<f64> {
    poly(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]])
}

fn square() -> PolytopeStateSpace<f64> {
    poly(&[&[1.0, 1.0], &[-1.0, 1.0], &[-1.0, -1.0], &[1.0, -1.0]])
}

fn simplex(n: usize) -> PolytopeStateSpace<f64> {
    let mut v = vec![vec![0.0; n]];
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        v.push(e);
    }
    PolytopeStateSpace::new(v).unwrap()
}

fn regular_polygon(k: usize) -> PolytopeStateSpace<f64> {
    PolytopeStateSpace::new(
        (0..k)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
    )
    .unwrap()
}

#[test]
fn e_omega_examples() {
    let t = tol();
    assert_eq!(triangle().e_omega_value(0, &[1.0, 0.0], &t).unwrap(), 0.0);
    let sq = square();
    assert!(sq.e_omega_value(0, &[-1.0, -1.0], &t).unwrap().abs() < 1e-12);
    assert!(sq.e_omega_value(0, &[-1.0, 1.0], &t).unwrap().abs() < 1e-12);
    assert!((sq.e_omega_value(0, &[0.0, 0.0], &t).unwrap() - 0.5).abs() < 1e-12);
    assert!((sq.e_omega_value(0, &[1.0, 1.0], &t).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn triangle_e_omega_is_barycentric() {
    let t = tol();
    let tri = triangle();
    let mut rng = rng_for(1, 0);
    for _ in 0..50 {
        let (a, b): (f64, f64) = (rng.random(), rng.random());
        let (x, y) = if a + b > 1.0 { (1.0 - a, 1.0 - b) } else { (a, b) };
        let bary = [1.0 - x - y, x, y];
        for (k, b) in bary.iter().enumerate() {
            assert!((tri.e_omega_value(k, &[x, y], &t).unwrap() - b).abs() < 1e-12);
        }
    }
}

#[test]
fn star_star_verdicts() {
    let t = tol();
    for p in [triangle(), simplex(3), simplex(4)] {
        let reports = p.check_star_star(&t, MIDPOINT_SAMPLES, 7).unwrap();
        for r in &reports {
            assert!(r.passes, "{r:?}");
            assert!(r.affinity_defect <= 1e-9);
            assert!(r.worst_point.is_none());
        }
    }

    let reports = square().check_star_star(&t, MIDPOINT_SAMPLES, 7).unwrap();
    for r in &reports {
        assert!(!r.passes);
        assert!((r.affinity_defect - 0.5).abs() <= 1e-6, "{r:?}");
        let w = r.worst_point.as_ref().unwrap();
        assert!(w.iter().all(|x| x.abs() < 1e-12), "{w:?}");
        assert!(r.max_off_value.abs() < 1e-12);
    }

    let reports = regular_polygon(5).check_star_star(&t, MIDPOINT_SAMPLES, 7).unwrap();
    assert!(reports.iter().all(|r| !r.passes && r.affinity_defect > 1e-3));
}

#[test]
fn square_defect_at_center_by_hand() {
    // e_{ω1}(ω2) = e_{ω1}(ω4) = 0 while e_{ω1}(center) = 1/2, and the center
    // is the midpoint of ω2 and ω4.
    let t = tol();
    let sq = square();
    let mid = sq.e_omega_value(0, &[0.0, 0.0], &t).unwrap();
    let ends = 0.5 * (sq.e_omega_value(0, &[-1.0, 1.0], &t).unwrap() + sq.e_omega_value(0, &[1.0, -1.0], &t).unwrap());
    assert!((mid - ends - 0.5).abs() < 1e-12);
}

#[test]
fn e_omega_is_pointwise_infimum() {
    // Any feasible affine a (values in [0,1] at vertices, a(ω) = 1)
    // dominates e_ω. Feasible a are built by hand: convex combinations of
    // 𝕀 and the coordinate-aligned affine functions of the square.
    let t = tol();
    let sq = square();
    let candidates = [(1.0, 0.0, 0.0), (0.5, 0.5, 0.0), (0.5, 0.0, 0.5), (0.5, 0.25, 0.25)];
    let mut rng = rng_for(3, 0);
    for _ in 0..40 {
        let z = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let e = sq.e_omega_value(0, &z, &t).unwrap();
        for &(c, fx, fy) in &candidates {
            assert!(e <= c + fx * z[0] + fy * z[1] + 1e-9);
        }
        assert!((0.0..=1.0).contains(&e));
    }
}

#[test]
fn simplex_tp_matrix_is_identity() {
    let t = tol();
    for p in [triangle(), simplex(3), simplex(4)] {
        let reports = p.check_star_star(&t, 16, 1).unwrap();
        let tp = p.atom_tp_matrix(&reports).unwrap();
        for i in 0..tp.size() {
            for j in 0..tp.size() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((tp.entries[i][j] - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn induced_axioms_on_passing_polytopes() {
    let t = tol();
    for p in [triangle(), simplex(3), simplex(4)] {
        let reports = p.check_star_star(&t, 16, 1).unwrap();
        let r = p.verify_induced_axioms(&reports, 5, 100, &t).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
    let sq = square();
    let reports = sq.check_star_star(&t, 16, 1).unwrap();
    assert!(matches!(sq.verify_induced_axioms(&reports, 5, 10, &t), Err(Error::Unsupported(_))));
}

#[test]
fn smooth_ball_examples() {
    let t = tol();
    let disk = ModelDescriptor::lpq(2, 2.0).unwrap();
    let w = [0.6, 0.8];
    assert_eq!(smooth_ball_e_omega(&disk, &w, &[-0.6, -0.8], &t).unwrap(), 0.0);
    assert_eq!(smooth_ball_e_omega(&disk, &w, &w, &t).unwrap(), 1.0);
    let w = [1.0, 0.0];
    assert_eq!(smooth_ball_e_omega(&disk, &w, &[-1.0, 0.0], &t).unwrap(), 0.0);
    let l3 = ModelDescriptor::lpq(2, 3.0).unwrap();
    assert_eq!(smooth_ball_e_omega(&l3, &[1.0, 0.0], &[0.0, 1.0], &t).unwrap(), 0.5);
    assert!(matches!(smooth_ball_e_omega(&l3, &[0.5, 0.5], &[0.0, 1.0], &t), Err(Error::UnnormalizedParam { .. })));
    assert!(smooth_ball_e_omega(&l3, &[1.0, 0.0], &[2.0, 0.0], &t).is_err());
    assert!(smooth_ball_e_omega(&ModelDescriptor::spin(2), &[1.0, 0.0], &[0.0, 0.0], &t).is_err());
}

#[test]
fn smooth_ball_matches_lpq_atom() {
    let t = tol();
    for p in [1.5, 3.0] {
        let m = ModelDescriptor::lpq(2, p).unwrap();
        let mut rng = rng_for(2, 0);
        for _ in 0..20 {
            let param = m.random_param_with::<f64, _>(&mut rng);
            let jordan_tp::AtomParam::BoundaryPoint(w) = &param else { panic!() };
            let e = m.atom_from_param(&param, &t).unwrap();
            let z = [rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)];
            let v = smooth_ball_e_omega(&m, w, &z, &t).unwrap();
            assert!((v - m.lpq_evaluate(&e, &z).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn invalid_inputs() {
    let t = tol();
    assert!(PolytopeStateSpace::<f64>::new(vec![vec![0.0, 0.0]]).is_err());
    assert!(PolytopeStateSpace::<f64>::new(vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]]).is_err());
    let interior = PolytopeStateSpace::<f64>::new(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![0.0, 2.0], vec![0.5, 0.5]]);
    assert!(matches!(interior, Err(Error::InvalidPolytope(_))));
    assert!(PolytopeStateSpace::<f64>::new(vec![vec![0.0, 0.0], vec![1.0]]).is_err());
    match triangle().e_omega_value(0, &[1.0, 1.0], &t) {
        Err(Error::Infeasible { residual }) => assert!(residual > 0.1),
        other => panic!("{other:?}"),
    }
    assert!(triangle().e_omega_value(9, &[0.1, 0.1], &t).is_err());
}

#[test]
fn polytope_from_csv() {
    let p = PolytopeStateSpace::<f64>::from_csv("x,y\n0,0\n1,0\n0,1\n".as_bytes()).unwrap();
    assert_eq!(p.vertices().len(), 3);
    assert!(PolytopeStateSpace::<f64>::from_csv("0,0\n1,x\n".as_bytes()).is_err());
}

#[test]
fn segment_is_a_simplex() {
    let t = tol();
    let seg = poly(&[&[0.0], &[1.0]]);
    let r = seg.check_star_star(&t, 8, 0).unwrap();
    assert!(r.iter().all(|x| x.passes));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn e_omega_in_unit_interval(k in 0usize..5, a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
        let t = tol();
        let p = regular_polygon(5);
        let w = [a, b, c, 1.0, 0.5];
        let s: f64 = w.iter().sum();
        let mut z = [0.0, 0.0];
        for (wi, v) in w.iter().zip(p.vertices()) {
            z[0] += wi / s * v[0];
            z[1] += wi / s * v[1];
        }
        let e = p.e_omega_value(k, &z, &t).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
        prop_assert!((p.e_omega_value(k, &p.vertices()[k].clone(), &t).unwrap() - 1.0).abs() < 1e-12);
    }
}
