//! Real symmetric and complex Hermitian matrices in the packed layout.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::element::Element;
use crate::linalg::{gram_schmidt, hermitian_eigen, CMatrix, C};
use crate::scalar::Scalar;

pub(crate) fn to_matrix<T: Scalar>(n: usize, a: &Element<T>, complex: bool) -> CMatrix<T> {
    CMatrix::unpack(n, a.coords(), complex)
}

pub(crate) fn from_matrix<T: Scalar>(m: &CMatrix<T>, complex: bool) -> Element<T> {
    Element::from_vec(m.pack(complex))
}

/// Rank-one projection onto the span of the unit vector `eta`.
pub(crate) fn projection<T: Scalar>(eta: &[C<T>], complex: bool) -> Element<T> {
    from_matrix(&CMatrix::outer(eta), complex)
}

/// Eigen-decomposition sorted descending. Clusters (consecutive gaps at most
/// `eig_cluster * max(diameter, spectral radius)`) share their mean
/// eigenvalue and are re-based by Gram-Schmidt on the eigenspace
/// projection applied to the standard basis, so the atoms do not depend on
/// how the eigensolver happened to rotate the eigenspace.
pub(crate) fn spectral<T: Scalar>(n: usize, a: &Element<T>, complex: bool, eig_cluster: T) -> Vec<(T, Element<T>)> {
    let m = to_matrix(n, a, complex);
    let (w, v) = hermitian_eigen(&m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[j].partial_cmp(&w[i]).expect("finite eigenvalues"));

    let top = w[order[0]];
    let bottom = w[order[n - 1]];
    let radius = top.abs().max(bottom.abs());
    let threshold = eig_cluster * (top - bottom).max(radius);

    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && w[order[end - 1]] - w[order[end]] <= threshold {
            end += 1;
        }
        let members = &order[start..end];
        if members.len() == 1 {
            let k = members[0];
            out.push((w[k], projection(&v.column(k), complex)));
        } else {
            let mean = members.iter().map(|&k| w[k]).sum::<T>() / T::lit(members.len() as f64);
            for eta in resolve_eigenspace(n, &v, members) {
                out.push((mean, projection(&eta, complex)));
            }
        }
        start = end;
    }
    out
}

fn resolve_eigenspace<T: Scalar>(n: usize, v: &CMatrix<T>, members: &[usize]) -> Vec<Vec<C<T>>> {
    let mut proj = CMatrix::zeros(n);
    for &k in members {
        let col = v.column(k);
        let outer = CMatrix::outer(&col);
        for i in 0..n {
            for j in 0..n {
                proj[(i, j)] += outer[(i, j)];
            }
        }
    }
    let candidates = (0..n).map(|j| proj.column(j));
    let basis = gram_schmidt(candidates, T::lit(1e-6), members.len());
    if basis.len() == members.len() {
        basis
    } else {
        members.iter().map(|&k| v.column(k)).collect()
    }
}

pub(crate) fn random_unit<T: Scalar, R: Rng + ?Sized>(n: usize, complex: bool, rng: &mut R) -> Vec<C<T>> {
    random_unitary(n, complex, rng).swap_remove(0)
}

/// Haar-distributed orthonormal basis (columns of a random unitary).
pub(crate) fn random_unitary<T: Scalar, R: Rng + ?Sized>(n: usize, complex: bool, rng: &mut R) -> Vec<Vec<C<T>>> {
    loop {
        let cands: Vec<Vec<C<T>>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let re = T::lit(rng.sample::<f64, _>(StandardNormal));
                        let im = if complex { T::lit(rng.sample::<f64, _>(StandardNormal)) } else { T::zero() };
                        Complex::new(re, im)
                    })
                    .collect()
            })
            .collect();
        let basis = gram_schmidt(cands, T::lit(1e-6), n);
        if basis.len() == n {
            return basis;
        }
    }
}

pub(crate) fn random_frame<T: Scalar, R: Rng + ?Sized>(n: usize, complex: bool, rng: &mut R) -> Vec<Element<T>> {
    random_unitary(n, complex, rng).iter().map(|eta| projection(eta, complex)).collect()
}
