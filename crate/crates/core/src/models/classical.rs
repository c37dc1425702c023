//! `R^n` with the componentwise order: the associative (simplex) case.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::element::Element;
use crate::scalar::Scalar;

pub(crate) fn basis<T: Scalar>(n: usize, i: usize) -> Element<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    Element::from_vec(v)
}

/// Coordinates are the spectrum; atoms are the basis vectors. Ties keep
/// index order.
pub(crate) fn spectral<T: Scalar>(a: &Element<T>) -> Vec<(T, Element<T>)> {
    let n = a.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[j].partial_cmp(&a[i]).expect("finite coordinates"));
    idx.into_iter().map(|i| (a[i], basis(n, i))).collect()
}

pub(crate) fn random_frame<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Element<T>> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.into_iter().map(|i| basis(n, i)).collect()
}

/// Index of the basis atom `e`, if it is one.
pub(crate) fn atom_index<T: Scalar>(e: &Element<T>, tol: T) -> Option<usize> {
    let mut found = None;
    for (i, &x) in e.coords().iter().enumerate() {
        if (x - T::one()).abs() <= tol {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        } else if x.abs() > tol {
            return None;
        }
    }
    found
}
