//! Lawson–Hanson nonnegative least squares: `min ‖A x − b‖` over `x ≥ 0`,
//! with `A` given by its columns.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct NnlsSolution<T> {
    pub x: Vec<T>,
    /// `‖A x − b‖`
    pub residual: T,
    pub iterations: usize,
}

fn apply<T: Scalar>(cols: &[Vec<T>], x: &[T], m: usize) -> Vec<T> {
    let mut out = vec![T::zero(); m];
    for (c, &xi) in cols.iter().zip(x) {
        if xi != T::zero() {
            for (o, &v) in out.iter_mut().zip(c) {
                *o += xi * v;
            }
        }
    }
    out
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Unconstrained least squares on the selected columns via modified
/// Gram–Schmidt QR. Columns that are numerically dependent on earlier ones
/// get coefficient 0.
fn least_squares<T: Scalar>(cols: &[Vec<T>], select: &[usize], b: &[T]) -> Vec<T> {
    let k = select.len();
    let mut q: Vec<Vec<T>> = Vec::with_capacity(k);
    let mut r = vec![vec![T::zero(); k]; k];
    let mut keep = vec![false; k];
    for (j, &c) in select.iter().enumerate() {
        let mut v = cols[c].clone();
        let orig = norm(&v);
        for (i, qi) in q.iter().enumerate() {
            if qi.is_empty() {
                continue;
            }
            let d = dot(qi, &v);
            r[i][j] = d;
            for (vk, &qk) in v.iter_mut().zip(qi) {
                *vk -= d * qk;
            }
        }
        let nv = norm(&v);
        if nv > T::lit(1e-12) * orig.max(T::one()) {
            keep[j] = true;
            r[j][j] = nv;
            q.push(v.into_iter().map(|x| x / nv).collect());
        } else {
            q.push(Vec::new());
        }
    }
    let qtb: Vec<T> = q.iter().map(|qi| if qi.is_empty() { T::zero() } else { dot(qi, b) }).collect();
    let mut s = vec![T::zero(); k];
    for j in (0..k).rev() {
        if !keep[j] {
            continue;
        }
        let mut acc = qtb[j];
        for l in (j + 1)..k {
            acc -= r[j][l] * s[l];
        }
        s[j] = acc / r[j][j];
    }
    s
}

/// Solves `min ‖A x − b‖, x ≥ 0`. Terminates when every inactive gradient
/// component is below `tol · ‖A‖ · max(1, ‖b‖)`; exceeding `max_iter` outer
/// plus inner steps is reported with the current residual.
pub fn nnls<T: Scalar>(cols: &[Vec<T>], b: &[T], max_iter: usize, tol: T) -> Result<NnlsSolution<T>> {
    let m = b.len();
    if let Some(c) = cols.iter().find(|c| c.len() != m) {
        return Err(Error::DimensionMismatch { expected: m, got: c.len() });
    }
    let n = cols.len();
    let scale = cols.iter().map(|c| norm(c)).fold(T::zero(), T::max) * norm(b).max(T::one());
    let stop = tol * scale.max(T::one());
    let mut x = vec![T::zero(); n];
    let mut passive = vec![false; n];
    let mut iterations = 0;

    let residual_of = |x: &[T]| -> Vec<T> {
        let ax = apply(cols, x, m);
        b.iter().zip(&ax).map(|(&bi, &ai)| bi - ai).collect()
    };

    loop {
        let res = residual_of(&x);
        let w: Vec<T> = cols.iter().map(|c| dot(c, &res)).collect();
        let pick = (0..n).filter(|&j| !passive[j] && w[j] > stop).max_by(|&i, &j| w[i].partial_cmp(&w[j]).unwrap());
        let Some(j) = pick else {
            return Ok(NnlsSolution { residual: norm(&res), x, iterations });
        };
        passive[j] = true;

        loop {
            iterations += 1;
            if iterations > max_iter {
                let residual = norm(&residual_of(&x)).as_f64();
                return Err(Error::ProjectionFailed { iterations, residual });
            }
            let select: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let s_sel = least_squares(cols, &select, b);
            let mut s = vec![T::zero(); n];
            for (&i, &v) in select.iter().zip(&s_sel) {
                s[i] = v;
            }
            if select.iter().all(|&i| s[i] > T::zero()) {
                x = s;
                break;
            }
            let mut alpha = T::one();
            for &i in &select {
                if s[i] <= T::zero() {
                    let denom = x[i] - s[i];
                    if denom > T::zero() {
                        alpha = alpha.min(x[i] / denom);
                    } else {
                        alpha = T::zero();
                    }
                }
            }
            for &i in &select {
                let xi = x[i] + alpha * (s[i] - x[i]);
                x[i] = xi;
                if x[i] <= T::epsilon() * T::lit(16.0) {
                    x[i] = T::zero();
                    passive[i] = false;
                }
            }
            if !select.iter().any(|&i| passive[i]) {
                break;
            }
        }
    }
}
