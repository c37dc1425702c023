//! Generalized qubit over the unit ball of `l^p(R^n)`, `1 < p < ∞`.
//!
//! An element `(c, f)` is the affine function `ζ ↦ c + f·ζ` on the ball. Its
//! extreme values are `c ± |f|_q` (with `1/p + 1/q = 1`), attained at the
//! boundary points `±ω` where `ω` is the duality image of `f`. The atom
//! belonging to a boundary point `ω` is `e_ω = (½, ½ f_ω)` with `f_ω` the
//! unique norm-one functional supporting the ball at `ω`.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::element::Element;
use crate::scalar::Scalar;

pub(crate) fn conjugate_exponent(p: f64) -> f64 {
    p / (p - 1.0)
}

pub(crate) fn pnorm<T: Scalar>(x: &[T], p: T) -> T {
    let m = x.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    if m == T::zero() {
        return T::zero();
    }
    m * x.iter().map(|&v| (v.abs() / m).powf(p)).sum::<T>().powf(T::one() / p)
}

/// `sign(x_i) |x_i|^(r-1)` componentwise.
fn signed_power<T: Scalar>(x: &[T], r: T) -> Vec<T> {
    x.iter().map(|&v| if v == T::zero() { T::zero() } else { v.signum() * v.abs().powf(r - T::one()) }).collect()
}

/// Supporting functional at a boundary point `ω` (`|ω|_p = 1`), rescaled so
/// that `f_ω · ω = 1` exactly up to rounding.
pub(crate) fn supporting_functional<T: Scalar>(omega: &[T], p: T) -> Vec<T> {
    let f = signed_power(omega, p);
    let dot: T = f.iter().zip(omega).map(|(&a, &b)| a * b).sum();
    f.into_iter().map(|v| v / dot).collect()
}

/// Boundary point `ω` where the norm-one functional `g` (`|g|_q = 1`)
/// attains its maximum over the ball.
pub(crate) fn peak_point<T: Scalar>(g: &[T], q: T) -> Vec<T> {
    let w = signed_power(g, q);
    let dot: T = w.iter().zip(g).map(|(&a, &b)| a * b).sum();
    w.into_iter().map(|v| v / dot).collect()
}

pub(crate) fn atom_from_functional<T: Scalar>(g: &[T]) -> Element<T> {
    let mut v = Vec::with_capacity(g.len() + 1);
    v.push(T::half());
    v.extend(g.iter().map(|&x| x * T::half()));
    Element::from_vec(v)
}

pub(crate) fn atom_from_point<T: Scalar>(omega: &[T], p: T) -> Element<T> {
    atom_from_functional(&supporting_functional(omega, p))
}

/// Evaluation of the affine function `a` at a point `ζ` of the ball.
pub(crate) fn evaluate<T: Scalar>(a: &Element<T>, zeta: &[T]) -> T {
    a[0] + a.coords()[1..].iter().zip(zeta).map(|(&f, &z)| f * z).sum::<T>()
}

pub(crate) fn spectral<T: Scalar>(a: &Element<T>, q: T, eig_cluster: T) -> Vec<(T, Element<T>)> {
    let c = a[0];
    let f = &a.coords()[1..];
    let r = pnorm(f, q);
    let scale = (r + r).max(c.abs() + r);
    if r <= eig_cluster * scale || r == T::zero() {
        let mut g = vec![T::zero(); f.len()];
        g[0] = T::one();
        let minus: Vec<T> = g.iter().map(|&v| -v).collect();
        return vec![(c, atom_from_functional(&g)), (c, atom_from_functional(&minus))];
    }
    let g: Vec<T> = f.iter().map(|&v| v / r).collect();
    let minus: Vec<T> = g.iter().map(|&v| -v).collect();
    vec![(c + r, atom_from_functional(&g)), (c - r, atom_from_functional(&minus))]
}

pub(crate) fn random_boundary_point<T: Scalar, R: Rng + ?Sized>(n: usize, p: T, rng: &mut R) -> Vec<T> {
    loop {
        let g: Vec<T> = (0..n).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect();
        let r = pnorm(&g, p);
        if r > T::lit(1e-6) {
            return g.into_iter().map(|v| v / r).collect();
        }
    }
}

pub(crate) fn random_frame<T: Scalar, R: Rng + ?Sized>(n: usize, p: T, rng: &mut R) -> Vec<Element<T>> {
    let omega = random_boundary_point(n, p, rng);
    let minus: Vec<T> = omega.iter().map(|&v| -v).collect();
    vec![atom_from_point(&omega, p), atom_from_point(&minus, p)]
}
