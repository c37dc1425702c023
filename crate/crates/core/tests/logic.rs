use jordan_tp::linalg::{CMatrix, C};
use jordan_tp::rng::rng_for;
use jordan_tp::{AtomParam, Element, LogicElement, ModelDescriptor, Shape, Tolerance};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

fn tol() -> Tolerance<f64> {
    Tolerance::default()
}

fn logic(m: &ModelDescriptor, v: Element<f64>) -> LogicElement<f64> {
    m.logic_element(v, &tol()).unwrap()
}

fn el(v: &[f64]) -> Element<f64> {
    Element::from_f64(v).unwrap()
}

// --- independent oracle: subspaces via Gaussian elimination -------------

fn random_vectors(n: usize, k: usize, complex: bool, rng: &mut impl Rng) -> Vec<Vec<C<f64>>> {
    (0..k)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let im = if complex { rng.sample(StandardNormal) } else { 0.0 };
                    Complex::new(rng.sample(StandardNormal), im)
                })
                .collect()
        })
        .collect()
}

/// Orthonormal basis of the span of `vs` (classical Gram-Schmidt, rank by
/// a relative threshold).
fn orthonormalize(vs: &[Vec<C<f64>>]) -> Vec<Vec<C<f64>>> {
    let mut out: Vec<Vec<C<f64>>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &out {
                let d: C<f64> = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= d * bi;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            out.push(w.into_iter().map(|z| z / norm).collect());
        }
    }
    out
}

/// Null space of a complex `rows x cols` matrix by reduced row echelon form.
fn null_space(mut a: Vec<Vec<C<f64>>>, cols: usize) -> Vec<Vec<C<f64>>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best, mag) =
            (r..rows).map(|i| (i, a[i][c].norm())).fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag < 1e-10 {
            continue;
        }
        a.swap(r, best);
        let p = a[r][c];
        a[r].iter_mut().for_each(|x| *x /= p);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r {
                let f = row[c];
                row.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Complex::new(0.0, 0.0); cols];
            v[f] = Complex::new(1.0, 0.0);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

fn projection_of(basis: &[Vec<C<f64>>], n: usize, complex: bool) -> Element<f64> {
    let mut m = CMatrix::<f64>::zeros(n);
    for b in basis {
        let o = CMatrix::outer(b);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += o[(i, j)];
            }
        }
    }
    Element::new(m.pack(complex)).unwrap()
}

/// Range intersection of span(u) and span(w): solve `U x = W y`.
fn intersection(u: &[Vec<C<f64>>], w: &[Vec<C<f64>>], n: usize) -> Vec<Vec<C<f64>>> {
    let cols = u.len() + w.len();
    let a: Vec<Vec<C<f64>>> = (0..n).map(|i| u.iter().map(|v| v[i]).chain(w.iter().map(|v| -v[i])).collect()).collect();
    let sols = null_space(a, cols);
    let vecs: Vec<Vec<C<f64>>> =
        sols.iter().map(|s| (0..n).map(|i| u.iter().zip(s).map(|(v, x)| v[i] * x).sum()).collect()).collect();
    orthonormalize(&vecs)
}

fn max_diff(a: &Element<f64>, b: &Element<f64>) -> f64 {
    a.max_abs_diff(b)
}

#[test]
fn meet_matches_range_intersection_oracle() {
    let t = tol();
    for (m, complex, n) in [(ModelDescriptor::sym(4), false, 4), (ModelDescriptor::herm(3), true, 3)] {
        let mut rng = rng_for(77, 0);
        for trial in 0..50 {
            let (r1, r2) = if n == 4 { (2, 3) } else { (2, 2) };
            let u = orthonormalize(&random_vectors(n, r1, complex, &mut rng));
            let w = orthonormalize(&random_vectors(n, r2, complex, &mut rng));
            let p1 = logic(&m, projection_of(&u, n, complex));
            let p2 = logic(&m, projection_of(&w, n, complex));
            let expect = projection_of(&intersection(&u, &w, n), n, complex);
            let got = m.meet(&p1, &p2, &t).unwrap();
            assert!(max_diff(&got.value, &expect) < 1e-8, "{m} trial {trial}");

            let sum = orthonormalize(&[u.clone(), w.clone()].concat());
            let join = m.join(&p1, &p2, &t).unwrap();
            assert!(max_diff(&join.value, &projection_of(&sum, n, complex)) < 1e-8);
        }
    }
}

#[test]
fn is_logic_element_examples() {
    let t = tol();
    for m in [ModelDescriptor::classical(3), ModelDescriptor::herm(2), ModelDescriptor::lpq(3, 3.0).unwrap()] {
        assert!(m.is_logic_element(&m.order_unit::<f64>(), &t).unwrap());
    }
    assert!(ModelDescriptor::classical(3).is_logic_element(&el(&[1.0, 0.0, 1.0]), &t).unwrap());
    assert!(!ModelDescriptor::classical(3).is_logic_element(&el(&[1.0, 0.5, 1.0]), &t).unwrap());
    let u = [0.6, 0.8];
    let a = el(&[0.5, 0.5 * u[0], 0.5 * u[1]]);
    assert!(ModelDescriptor::spin(2).is_logic_element(&a, &t).unwrap());
}

#[test]
fn orthocomplement_examples() {
    let t = tol();
    let c3 = ModelDescriptor::classical(3);
    let zero = logic(&c3, c3.zero());
    assert_eq!(c3.orthocomplement(&zero).unwrap().value, c3.order_unit());
    let p = logic(&c3, el(&[1.0, 0.0, 1.0]));
    assert_eq!(c3.orthocomplement(&p).unwrap().value.coords(), &[0.0, 1.0, 0.0]);

    let h2 = ModelDescriptor::herm(2);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let eta = vec![Complex::new(s, 0.0), Complex::new(0.0, s)];
    let e = h2.atom_from_param(&AtomParam::ComplexVector(eta), &t).unwrap();
    let ec = h2.orthocomplement(&logic(&h2, e.clone())).unwrap();
    // Complement line is spanned by (1, -i)/√2.
    let perp = vec![Complex::new(s, 0.0), Complex::new(0.0, -s)];
    let expect = h2.atom_from_param(&AtomParam::ComplexVector(perp), &t).unwrap();
    assert!(max_diff(&ec.value, &expect) < 1e-15);
    assert!(h2.is_atom(&ec.value, &t).unwrap());
}

#[test]
fn orthogonal_family_examples() {
    let t = tol();
    let c4 = ModelDescriptor::classical(4);
    let basis: Vec<_> = (0..4).map(|i| logic(&c4, c4.atom_from_param(&AtomParam::Basis(i), &t).unwrap())).collect();
    assert!(c4.is_orthogonal_family(&basis, &t).unwrap());
    for m in [ModelDescriptor::herm(3), ModelDescriptor::spin(4), ModelDescriptor::lpq(2, 3.0).unwrap()] {
        let mut rng = rng_for(5, 0);
        let e = logic(&m, m.random_atom_with(&mut rng));
        assert!(!m.is_orthogonal_family(&[e.clone(), e], &t).unwrap());
    }
    // Two orthonormal vectors in C^3.
    let h3 = ModelDescriptor::herm(3);
    let mut rng = rng_for(6, 0);
    let basis = orthonormalize(&random_vectors(3, 2, true, &mut rng));
    let atoms: Vec<_> =
        basis.into_iter().map(|b| logic(&h3, h3.atom_from_param(&AtomParam::ComplexVector(b), &t).unwrap())).collect();
    assert!(h3.is_orthogonal_family(&atoms, &t).unwrap());
}

#[test]
fn orthogonal_family_equals_pairwise_on_atoms() {
    let t = tol();
    for m in [ModelDescriptor::herm(3), ModelDescriptor::classical(4), ModelDescriptor::spin(3)] {
        for seed in 0..30 {
            let mut rng = rng_for(seed, 1);
            let frame = m.random_frame_with::<f64, _>(&mut rng);
            let mut fam: Vec<_> = frame.iter().take(m.info_capacity().min(3)).cloned().collect();
            if seed % 2 == 1 {
                fam.push(m.random_atom_with(&mut rng));
            }
            let fam: Vec<_> = fam.into_iter().map(|e| logic(&m, e)).collect();
            let whole = m.is_orthogonal_family(&fam, &t).unwrap();
            let mut pairwise = true;
            for i in 0..fam.len() {
                for j in (i + 1)..fam.len() {
                    pairwise &= m.is_orthogonal_family(&[fam[i].clone(), fam[j].clone()], &t).unwrap();
                }
            }
            assert_eq!(whole, pairwise, "{m} seed {seed}");
        }
    }
}

#[test]
fn meet_join_trivial_cases() {
    let t = tol();
    for m in [ModelDescriptor::herm(3), ModelDescriptor::classical(3), ModelDescriptor::lpq(2, 3.0).unwrap()] {
        for seed in 0..10 {
            let p = logic(&m, m.random_element(seed, Shape::Logic));
            let pc = m.orthocomplement(&p).unwrap();
            assert!(max_diff(&m.meet(&p, &p, &t).unwrap().value, &p.value) < 1e-12);
            assert!(max_diff(&m.meet(&p, &pc, &t).unwrap().value, &m.zero()) < 1e-12);
            let zero = logic(&m, m.zero());
            assert!(max_diff(&m.join(&p, &zero, &t).unwrap().value, &p.value) < 1e-12);
        }
        let mut rng = rng_for(3, 3);
        let frame = m.random_frame_with::<f64, _>(&mut rng);
        let e1 = logic(&m, frame[0].clone());
        let e2 = logic(&m, frame[1].clone());
        let j = m.join(&e1, &e2, &t).unwrap();
        assert!(max_diff(&j.value, &(&frame[0] + &frame[1])) < 1e-12);
    }
}

#[test]
fn ambiguous_meet_is_reported() {
    let t = tol();
    let m = ModelDescriptor::sym(2);
    let e1 = m.atom_from_param(&AtomParam::RealVector(vec![1.0, 0.0]), &t).unwrap();
    let theta: f64 = 2e-3;
    let e2 = m.atom_from_param(&AtomParam::RealVector(vec![theta.cos(), theta.sin()]), &t).unwrap();
    // Top eigenvalue of e1 + e2 is 1 + cos θ ≈ 2 − 2e-6.
    let r = m.meet(&logic(&m, e1), &logic(&m, e2), &t);
    assert!(matches!(r, Err(jordan_tp::Error::AmbiguousMeet { .. })), "{r:?}");
}

#[test]
fn atomic_decomposition_examples() {
    let t = tol();
    let h3 = ModelDescriptor::herm(3);
    let mut rng = rng_for(8, 0);
    let e = h3.random_atom_with::<f64, _>(&mut rng);
    let atoms = h3.atomic_decomposition(&logic(&h3, e.clone()), &t).unwrap();
    assert_eq!(atoms.len(), 1);
    assert!(max_diff(&atoms[0], &e) < 1e-12);

    let c3 = ModelDescriptor::classical(3);
    let atoms = c3.atomic_decomposition(&logic(&c3, c3.order_unit()), &t).unwrap();
    assert_eq!(atoms.len(), 3);

    let frame = h3.random_frame_with::<f64, _>(&mut rng);
    let p = logic(&h3, &frame[0] + &frame[2]);
    let atoms = h3.atomic_decomposition(&p, &t).unwrap();
    assert_eq!(atoms.len(), 2);
    let sum = &atoms[0] + &atoms[1];
    assert!(max_diff(&sum, &p.value) < 1e-12);
    for a in &atoms {
        assert!(h3.is_atom(a, &t).unwrap());
    }
    assert!(h3.state_value(&atoms[0], &atoms[1]).abs() < 1e-12);
    assert!(h3.atomic_decomposition(&logic(&h3, h3.zero()), &t).unwrap().is_empty());
}

#[test]
fn information_capacity_examples() {
    let t = tol();
    assert_eq!(ModelDescriptor::classical(5).information_capacity_empirical(1, 5, &t).unwrap(), 5);
    assert_eq!(ModelDescriptor::spin(7).information_capacity_empirical(1, 5, &t).unwrap(), 2);
    assert_eq!(ModelDescriptor::herm(3).information_capacity_empirical(1, 5, &t).unwrap(), 3);
    assert_eq!(ModelDescriptor::lpq(3, 1.5).unwrap().information_capacity_empirical(1, 5, &t).unwrap(), 2);
}

#[test]
fn lattice_laws_on_samples() {
    let t = tol();
    for m in
        [ModelDescriptor::sym(3), ModelDescriptor::herm(3), ModelDescriptor::classical(4), ModelDescriptor::spin(3)]
    {
        for seed in 0..40 {
            let mut rng = rng_for(seed, 9);
            let p = logic(&m, m.random_element_with(&mut rng, Shape::Logic));
            let q = logic(&m, m.random_element_with(&mut rng, Shape::Logic));
            // Involution and complement stays in the logic.
            let pc = m.orthocomplement(&p).unwrap();
            assert!(m.is_logic_element(&pc.value, &t).unwrap());
            assert!(max_diff(&m.orthocomplement(&pc).unwrap().value, &p.value) < 1e-12);
            // Bounds.
            let meet = m.meet(&p, &q, &t).unwrap();
            let join = m.join(&p, &q, &t).unwrap();
            for x in [&p, &q] {
                assert!(m.leq(&meet.value, &x.value, &t).unwrap());
                assert!(m.leq(&x.value, &join.value, &t).unwrap());
            }
            // Orthomodular law with p ≤ r := p ∨ q.
            let r = join;
            let back = m.join(&p, &m.meet(&r, &pc, &t).unwrap(), &t).unwrap();
            assert!(max_diff(&back.value, &r.value) < 1e-8, "{m} seed {seed}");
            // Difference identity for p ≤ r.
            let diff = m.meet(&r, &pc, &t).unwrap();
            assert!(max_diff(&diff.value, &(&r.value - &p.value)) < 1e-8);
        }
    }
}

#[test]
fn logic_suite_on_all_backends() {
    let t = tol();
    for m in [
        ModelDescriptor::classical(4),
        ModelDescriptor::spin(3),
        ModelDescriptor::sym(4),
        ModelDescriptor::herm(3),
        ModelDescriptor::lpq(2, 2.0).unwrap(),
        ModelDescriptor::lpq(3, 3.0).unwrap(),
    ] {
        let r = m.verify_logic(5, 150, &t).unwrap();
        assert!(r.passed(), "{m}: {:?}", r.failures().collect::<Vec<_>>());
    }
}
