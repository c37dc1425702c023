//! Small dense complex linear algebra: Hermitian Jacobi eigensolver, packing
//! between matrices and coordinate vectors, and Gram-Schmidt.

use num_complex::Complex;

use crate::scalar::Scalar;

pub type C<T> = Complex<T>;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C::new(T::zero(), T::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C::new(T::one(), T::zero());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank-one projection `v v*` (no normalization applied).
    pub fn outer(v: &[C<T>]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        (0..self.n)
            .map(|i| (0..self.n).fold(C::new(T::zero(), T::zero()), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn trace(&self) -> C<T> {
        (0..self.n).fold(C::new(T::zero(), T::zero()), |acc, i| acc + self[(i, i)])
    }

    /// Packs a Hermitian matrix into real coordinates: `n` diagonal entries,
    /// then the strict upper triangle row-major, as `(re, im)` pairs when
    /// `complex` or real parts only otherwise.
    pub fn pack(&self, complex: bool) -> Vec<T> {
        let n = self.n;
        let mut out = Vec::with_capacity(if complex { n * n } else { n * (n + 1) / 2 });
        for i in 0..n {
            out.push(self[(i, i)].re);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let z = self[(i, j)];
                out.push(z.re);
                if complex {
                    out.push(z.im);
                }
            }
        }
        out
    }

    pub fn unpack(n: usize, coords: &[T], complex: bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C::new(coords[i], T::zero());
        }
        let mut k = n;
        for i in 0..n {
            for j in (i + 1)..n {
                let re = coords[k];
                let im = if complex { coords[k + 1] } else { T::zero() };
                k += if complex { 2 } else { 1 };
                m[(i, j)] = C::new(re, im);
                m[(j, i)] = C::new(re, -im);
            }
        }
        m
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.n + j]
    }
}

/// Trace pairing `tr(ab)` of two packed Hermitian matrices.
pub fn packed_trace_pairing<T: Scalar>(n: usize, a: &[T], b: &[T]) -> T {
    let diag: T = (0..n).map(|i| a[i] * b[i]).sum();
    let off: T = a[n..].iter().zip(&b[n..]).map(|(&x, &y)| x * y).sum();
    diag + T::two() * off
}

pub fn vdot<T: Scalar>(u: &[C<T>], v: &[C<T>]) -> C<T> {
    u.iter().zip(v).fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * *b)
}

pub fn vnorm<T: Scalar>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues (unsorted) and the unitary whose columns
/// are the matching eigenvectors.
pub fn hermitian_eigen<T: Scalar>(a: &CMatrix<T>) -> (Vec<T>, CMatrix<T>) {
    let n = a.n();
    let mut m = a.clone();
    let mut v = CMatrix::identity(n);
    let zero = C::new(T::zero(), T::zero());
    let eps = T::epsilon();

    for _sweep in 0..64 {
        let mut off = T::zero();
        let mut diag = T::zero();
        for i in 0..n {
            diag += m[(i, i)].norm_sqr();
            for j in 0..n {
                if i != j {
                    off += m[(i, j)].norm_sqr();
                }
            }
        }
        if off <= eps * eps * diag.max(T::min_positive_value()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r == T::zero() {
                    continue;
                }
                // Phase e^{-i phi} on column q makes the (p,q) entry real and
                // positive; a real rotation then annihilates it.
                let phase = apq.unscale(r);
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (T::two() * r);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let ph = phase.conj();
                // G = D R with D = diag(1, e^{-i phi}) on (p,q).
                let g_pp = C::new(c, T::zero());
                let g_pq = C::new(s, T::zero());
                let g_qp = ph * C::new(-s, T::zero());
                let g_qq = ph * C::new(c, T::zero());

                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * g_pp + mkq * g_qp;
                    m[(k, q)] = mkp * g_pq + mkq * g_qq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = g_pp.conj() * mpk + g_qp.conj() * mqk;
                    m[(q, k)] = g_pq.conj() * mpk + g_qq.conj() * mqk;
                }
                m[(p, q)] = zero;
                m[(q, p)] = zero;
                m[(p, p)] = C::new(m[(p, p)].re, T::zero());
                m[(q, q)] = C::new(m[(q, q)].re, T::zero());
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * g_pp + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
    }
    ((0..n).map(|i| m[(i, i)].re).collect(), v)
}

/// Modified Gram-Schmidt over `candidates`, keeping vectors whose residual
/// norm exceeds `threshold`, stopping once `limit` vectors are collected.
/// Each kept vector is rotated so its first entry above `threshold` in
/// magnitude is real and positive.
pub fn gram_schmidt<T: Scalar>(
    candidates: impl IntoIterator<Item = Vec<C<T>>>,
    threshold: T,
    limit: usize,
) -> Vec<Vec<C<T>>> {
    let mut basis: Vec<Vec<C<T>>> = Vec::new();
    for mut v in candidates {
        if basis.len() >= limit {
            break;
        }
        for _ in 0..2 {
            for b in &basis {
                let proj = vdot(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * *y;
                }
            }
        }
        let norm = vnorm(&v);
        if norm > threshold {
            let inv = T::one() / norm;
            for x in v.iter_mut() {
                *x *= inv;
            }
            fix_phase(&mut v);
            basis.push(v);
        }
    }
    basis
}

/// Rotates `v` so its first non-negligible entry is real and positive.
pub fn fix_phase<T: Scalar>(v: &mut [C<T>]) {
    let cut = T::lit(1e-6) * vnorm(v);
    if let Some(z) = v.iter().find(|z| z.norm() > cut).copied() {
        let ph = z.conj().unscale(z.norm());
        for x in v.iter_mut() {
            *x *= ph;
        }
    }
}
