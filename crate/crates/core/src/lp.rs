//! Dense two-phase simplex with Bland's rule for small linear programs.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub rel: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn new(coeffs: Vec<T>, rel: Relation, rhs: T) -> Self {
        Self { coeffs, rel, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

/// Minimizes `objective · x` subject to `constraints`. Variables flagged in
/// `free` are unrestricted in sign, the rest are `≥ 0`.
pub fn minimize<T: Scalar>(objective: &[T], constraints: &[Constraint<T>], free: &[bool]) -> Result<LpOutcome<T>> {
    let nv = objective.len();
    if free.len() != nv {
        return Err(Error::DimensionMismatch { expected: nv, got: free.len() });
    }
    if let Some(c) = constraints.iter().find(|c| c.coeffs.len() != nv) {
        return Err(Error::DimensionMismatch { expected: nv, got: c.coeffs.len() });
    }
    // Column layout: one column per nonnegative variable, two per free one.
    let mut map = Vec::with_capacity(nv);
    let mut ncols = 0;
    for &f in free {
        map.push(ncols);
        ncols += if f { 2 } else { 1 };
    }
    let expand = |row: &[T]| -> Vec<T> {
        let mut out = vec![T::zero(); ncols];
        for (i, &v) in row.iter().enumerate() {
            out[map[i]] = v;
            if free[i] {
                out[map[i] + 1] = -v;
            }
        }
        out
    };

    let m = constraints.len();
    let n_slack = constraints.iter().filter(|c| c.rel != Relation::Eq).count();
    let n_struct = ncols + n_slack;
    let width = n_struct + m + 1;
    let mut tab = vec![vec![T::zero(); width]; m];
    let mut basis = vec![0usize; m];
    let mut slack = ncols;
    for (r, c) in constraints.iter().enumerate() {
        let mut row = expand(&c.coeffs);
        row.resize(width, T::zero());
        match c.rel {
            Relation::Le => {
                row[slack] = T::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -T::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width - 1] = c.rhs;
        if c.rhs < T::zero() {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        row[n_struct + r] = T::one();
        basis[r] = n_struct + r;
        tab[r] = row;
    }

    let eps = T::epsilon() * T::lit(4096.0);
    let max_pivots = 50 * (width + m).max(16);

    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![T::zero(); width];
    for row in &tab {
        for j in 0..width {
            if j < n_struct || j == width - 1 {
                cost[j] -= row[j];
            }
        }
    }
    run_simplex(&mut tab, &mut cost, &mut basis, n_struct + m, eps, max_pivots)?;
    let infeasibility = -cost[width - 1];
    let rhs_scale = constraints.iter().map(|c| c.rhs.abs()).fold(T::one(), T::max);
    if infeasibility > T::lit(1e-9) * rhs_scale {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive remaining artificials out of the basis where possible.
    for r in 0..m {
        if basis[r] >= n_struct {
            if let Some(j) = (0..n_struct).find(|&j| tab[r][j].abs() > eps) {
                pivot(&mut tab, &mut cost, &mut basis, r, j);
            }
        }
    }

    // Phase 2 on structural columns only.
    let mut cost = vec![T::zero(); width];
    let obj = expand(objective);
    cost[..ncols].copy_from_slice(&obj);
    for r in 0..m {
        let b = basis[r];
        if b < ncols && cost[b] != T::zero() {
            let f = cost[b];
            for j in 0..width {
                cost[j] -= f * tab[r][j];
            }
        }
    }
    match run_simplex(&mut tab, &mut cost, &mut basis, n_struct, eps, max_pivots)? {
        true => {}
        false => return Ok(LpOutcome::Unbounded),
    }
    let mut cols = vec![T::zero(); ncols];
    for r in 0..m {
        if basis[r] < ncols {
            cols[basis[r]] = tab[r][width - 1];
        }
    }
    let x: Vec<T> = (0..nv).map(|i| if free[i] { cols[map[i]] - cols[map[i] + 1] } else { cols[map[i]] }).collect();
    let value = objective.iter().zip(&x).map(|(&c, &v)| c * v).sum();
    Ok(LpOutcome::Optimal { x, value })
}

fn pivot<T: Scalar>(tab: &mut [Vec<T>], cost: &mut [T], basis: &mut [usize], r: usize, j: usize) {
    let p = tab[r][j];
    for v in tab[r].iter_mut() {
        *v /= p;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r && row[j] != T::zero() {
            let f = row[j];
            for (v, &pv) in row.iter_mut().zip(&prow) {
                *v -= f * pv;
            }
        }
    }
    if cost[j] != T::zero() {
        let f = cost[j];
        for (v, &pv) in cost.iter_mut().zip(&prow) {
            *v -= f * pv;
        }
    }
    basis[r] = j;
}

/// Bland's rule on columns `< allowed`. Returns false when unbounded.
fn run_simplex<T: Scalar>(
    tab: &mut [Vec<T>],
    cost: &mut [T],
    basis: &mut [usize],
    allowed: usize,
    eps: T,
    max_pivots: usize,
) -> Result<bool> {
    let width = cost.len();
    for _ in 0..max_pivots {
        let Some(j) = (0..allowed).find(|&j| cost[j] < -eps) else {
            return Ok(true);
        };
        let mut best: Option<(usize, T)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[j] > eps {
                let ratio = row[width - 1] / row[j];
                best = match best {
                    None => Some((r, ratio)),
                    Some((br, bv)) => {
                        if ratio < bv - eps || ((ratio - bv).abs() <= eps && basis[r] < basis[br]) {
                            Some((r, ratio))
                        } else {
                            Some((br, bv))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = best else {
            return Ok(false);
        };
        pivot(tab, cost, basis, r, j);
    }
    Err(Error::LpFailure(format!("no convergence after {max_pivots} pivots")))
}
