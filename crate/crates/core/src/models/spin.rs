//! Spin factor `R ⊕ R^n`: element `(t, x)` has eigenvalues `t ± |x|` with
//! atoms `½(1, ±x/|x|)`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::element::Element;
use crate::scalar::Scalar;

pub(crate) fn norm<T: Scalar>(x: &[T]) -> T {
    x.iter().map(|&v| v * v).sum::<T>().sqrt()
}

/// Atom `½(1, u)` for a unit direction `u`.
pub(crate) fn atom<T: Scalar>(u: &[T]) -> Element<T> {
    let mut v = Vec::with_capacity(u.len() + 1);
    v.push(T::half());
    v.extend(u.iter().map(|&x| x * T::half()));
    Element::from_vec(v)
}

pub(crate) fn first_axis<T: Scalar>(n: usize) -> Vec<T> {
    let mut u = vec![T::zero(); n];
    u[0] = T::one();
    u
}

/// `eig_cluster` is relative to `max(diameter, spectral radius)`; a
/// clustered pair is resolved along the first axis.
pub(crate) fn spectral<T: Scalar>(a: &Element<T>, eig_cluster: T) -> Vec<(T, Element<T>)> {
    let t = a[0];
    let x = &a.coords()[1..];
    let r = norm(x);
    let scale = (r + r).max(t.abs() + r);
    if r <= eig_cluster * scale || r == T::zero() {
        let u: Vec<T> = first_axis(x.len());
        let minus: Vec<T> = u.iter().map(|&v| -v).collect();
        return vec![(t, atom(&u)), (t, atom(&minus))];
    }
    let u: Vec<T> = x.iter().map(|&v| v / r).collect();
    let minus: Vec<T> = u.iter().map(|&v| -v).collect();
    vec![(t + r, atom(&u)), (t - r, atom(&minus))]
}

/// Pairing `2(t t' + x·x')`, normalized so atoms have unit length and
/// `<1|1> = 2`.
pub(crate) fn pairing<T: Scalar>(a: &Element<T>, b: &Element<T>) -> T {
    T::two() * a.dot(b)
}

pub(crate) fn random_unit<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<T> {
    loop {
        let g: Vec<T> = (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect();
        let r = norm(&g);
        if r > T::lit(1e-6) {
            return g.into_iter().map(|v| v / r).collect();
        }
    }
}

pub(crate) fn random_frame<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Element<T>> {
    let u: Vec<T> = random_unit(n, rng);
    let minus: Vec<T> = u.iter().map(|&v| -v).collect();
    vec![atom(&u), atom(&minus)]
}
