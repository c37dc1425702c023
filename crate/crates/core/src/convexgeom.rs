//! Polytope state spaces: the infimum function `e_ω` by linear programming
//! over vertex values, the (∗∗) decision, and the smooth-ball closed form.

use std::io::Read;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::element::{Element, Tolerance};
use crate::error::{Error, Result};
use crate::lp::{minimize, Constraint, LpOutcome, Relation};
use crate::model::{BackendKind, ModelDescriptor};
use crate::models::lpq;
use crate::nnls::nnls;
use crate::report::{Report, Worst};
use crate::rng::rng_for_tagged;
use crate::scalar::Scalar;
use crate::transition::{TpMatrix, STATE_GAP};

/// Default number of random convex combinations per extreme point.
pub const MIDPOINT_SAMPLES: usize = 64;

/// `ζ ↦ c + f·ζ`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct AffineFunction<T> {
    pub c: T,
    pub f: Vec<T>,
}

impl<T: Scalar> AffineFunction<T> {
    pub fn eval(&self, zeta: &[T]) -> T {
        self.c + self.f.iter().zip(zeta).map(|(&a, &b)| a * b).sum::<T>()
    }
}

/// Outcome of the (∗∗) test at one extreme point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EOmegaReport {
    pub omega_index: usize,
    pub values_at_vertices: Vec<f64>,
    pub affinity_defect: f64,
    pub max_off_value: f64,
    pub passes: bool,
    /// Sample point where the affinity defect is attained, when positive.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_point: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeStateSpace<T> {
    vertices: Vec<Vec<T>>,
    d: usize,
}

impl<T: Scalar> PolytopeStateSpace<T> {
    /// Validates at least two pairwise distinct vertices, each extreme.
    pub fn new(vertices: Vec<Vec<T>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPolytope("need at least two vertices".into()));
        }
        let d = vertices[0].len();
        if d == 0 {
            return Err(Error::InvalidPolytope("vertices must have at least one coordinate".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != d {
                return Err(Error::InvalidPolytope(format!("vertex {i} has {} coordinates, expected {d}", v.len())));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPolytope(format!("vertex {i} is not finite")));
            }
        }
        let eps = T::lit(1e-12);
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                let same = vertices[i].iter().zip(&vertices[j]).all(|(&a, &b)| (a - b).abs() <= eps);
                if same {
                    return Err(Error::InvalidPolytope(format!("vertices {i} and {j} coincide")));
                }
            }
        }
        let poly = Self { vertices, d };
        for i in 0..poly.vertices.len() {
            let others: Vec<Vec<T>> =
                poly.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            if hull_weights(&others, &poly.vertices[i])?.is_some() {
                return Err(Error::InvalidPolytope(format!("vertex {i} is not an extreme point")));
            }
        }
        Ok(poly)
    }

    /// One vertex per CSV row.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let rows = crate::points::read_points(reader)?;
        Self::new(rows.into_iter().map(|r| r.into_iter().map(T::lit).collect()).collect())
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Barycentric weights of `zeta`, or `None` outside the hull.
    pub fn barycentric(&self, zeta: &[T]) -> Result<Option<Vec<T>>> {
        if zeta.len() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: zeta.len() });
        }
        hull_weights(&self.vertices, zeta)
    }

    /// Distance-like residual of `zeta` from the hull (zero inside).
    fn hull_residual(&self, zeta: &[T]) -> Result<T> {
        let cols: Vec<Vec<T>> =
            self.vertices.iter().map(|v| v.iter().copied().chain(std::iter::once(T::one())).collect()).collect();
        let b: Vec<T> = zeta.iter().copied().chain(std::iter::once(T::one())).collect();
        let n = self.d + 1;
        Ok(nnls(&cols, &b, 10 * n * n + 10 * cols.len(), T::lit(1e-12))?.residual)
    }

    /// The minimizing affine function of the `e_ω` program at `zeta`.
    pub fn e_omega_affine(&self, omega_index: usize, zeta: &[T]) -> Result<AffineFunction<T>> {
        let omega = self.vertex(omega_index)?;
        if self.barycentric(zeta)?.is_none() {
            return Err(Error::Infeasible { residual: self.hull_residual(zeta)?.as_f64() });
        }
        let objective: Vec<T> = std::iter::once(T::one()).chain(zeta.iter().copied()).collect();
        self.solve_affine(omega, &objective)
    }

    fn vertex(&self, k: usize) -> Result<&[T]> {
        self.vertices
            .get(k)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::InvalidPolytope(format!("no vertex {k} (have {})", self.vertices.len())))
    }

    /// Minimizes `objective · (c, f)` over affine functions with values in
    /// `[0,1]` at every vertex and value 1 at `omega`.
    fn solve_affine(&self, omega: &[T], objective: &[T]) -> Result<AffineFunction<T>> {
        let row = |p: &[T]| -> Vec<T> { std::iter::once(T::one()).chain(p.iter().copied()).collect() };
        let mut cons = Vec::with_capacity(2 * self.vertices.len() + 1);
        for v in &self.vertices {
            cons.push(Constraint::new(row(v), Relation::Ge, T::zero()));
            cons.push(Constraint::new(row(v), Relation::Le, T::one()));
        }
        cons.push(Constraint::new(row(omega), Relation::Eq, T::one()));
        match minimize(objective, &cons, &vec![true; self.d + 1])? {
            LpOutcome::Optimal { x, .. } => Ok(AffineFunction { c: x[0], f: x[1..].to_vec() }),
            LpOutcome::Infeasible => Err(Error::LpFailure("e_omega program reported infeasible".into())),
            LpOutcome::Unbounded => Err(Error::LpFailure("e_omega program reported unbounded".into())),
        }
    }

    /// `e_ω(ζ) = inf { a(ζ) : a affine, 0 ≤ a ≤ 1 on the polytope, a(ω) = 1 }`
    pub fn e_omega_value(&self, omega_index: usize, zeta: &[T], tol: &Tolerance<T>) -> Result<T> {
        let a = self.e_omega_affine(omega_index, zeta)?;
        let v = a.eval(zeta);
        // Clamp solver noise only; larger excursions are a solver failure.
        if v < -tol.check_tol || v > T::one() + tol.check_tol {
            return Err(Error::LpFailure(format!("e_omega value {} outside [0,1]", v.as_f64())));
        }
        Ok(v.max(T::zero()).min(T::one()))
    }

    /// Vertex values of `e_ω`, plus the largest deviation from affinity over
    /// vertex midpoints, the centroid and `midpoint_samples` random convex
    /// combinations.
    pub fn check_star_star(&self, tol: &Tolerance<T>, midpoint_samples: usize, seed: u64) -> Result<Vec<EOmegaReport>> {
        let nv = self.vertices.len();
        let mut samples: Vec<Vec<T>> = Vec::new();
        for i in 0..nv {
            for j in (i + 1)..nv {
                let mut w = vec![T::zero(); nv];
                w[i] = T::half();
                w[j] = T::half();
                samples.push(w);
            }
        }
        samples.push(vec![T::one() / T::lit(nv as f64); nv]);
        let mut rng = rng_for_tagged(seed, "star-star", 0);
        for _ in 0..midpoint_samples {
            let raw: Vec<f64> = (0..nv).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let s: f64 = raw.iter().sum();
            samples.push(raw.into_iter().map(|x| T::lit(x / s)).collect());
        }

        let mut out = Vec::with_capacity(nv);
        for k in 0..nv {
            let values: Vec<T> = self.vertices.iter().map(|v| self.e_omega_value(k, v, tol)).collect::<Result<_>>()?;
            let mut worst = T::zero();
            let mut worst_point = None;
            for w in &samples {
                let zeta = self.combine(w);
                let direct = self.e_omega_value(k, &zeta, tol)?;
                let interp: T = w.iter().zip(&values).map(|(&a, &b)| a * b).sum();
                let d = (direct - interp).abs();
                if d > worst {
                    worst = d;
                    worst_point = Some(zeta.iter().map(|x| x.as_f64()).collect());
                }
            }
            let max_off = (0..nv).filter(|&j| j != k).map(|j| values[j]).fold(T::zero(), T::max);
            let passes = worst <= tol.check_tol && max_off.as_f64() <= 1.0 - STATE_GAP;
            out.push(EOmegaReport {
                omega_index: k,
                values_at_vertices: values.iter().map(|v| v.as_f64()).collect(),
                affinity_defect: worst.as_f64(),
                max_off_value: max_off.as_f64(),
                passes,
                worst_point: if worst > tol.check_tol { worst_point } else { None },
            });
        }
        Ok(out)
    }

    fn combine(&self, w: &[T]) -> Vec<T> {
        let mut z = vec![T::zero(); self.d];
        for (wi, v) in w.iter().zip(&self.vertices) {
            for (zj, &vj) in z.iter_mut().zip(v) {
                *zj += *wi * vj;
            }
        }
        z
    }

    /// `T[i][j] = P_{e_i}(e_j) = e_{ω_j}(ω_i)`, atoms in vertex-value form.
    pub fn atom_tp_matrix(&self, reports: &[EOmegaReport]) -> Result<TpMatrix<f64>> {
        let nv = self.vertices.len();
        if reports.len() != nv {
            return Err(Error::DimensionMismatch { expected: nv, got: reports.len() });
        }
        let atoms =
            reports.iter().map(|r| Element::from_f64(&r.values_at_vertices)).collect::<Result<Vec<Element<f64>>>>()?;
        let entries = (0..nv).map(|i| (0..nv).map(|j| reports[j].values_at_vertices[i]).collect()).collect();
        Ok(TpMatrix { labels: (0..nv).map(|i| format!("e{i}")).collect(), atoms, entries })
    }

    /// On a polytope with (∗∗): the atoms `e_ω` with states `δ_ω` satisfy
    /// the uniqueness property of `P_e` on sampled mixtures, and (∗) on
    /// sampled affine `a ∈ [0,𝕀]` with `a(ω) = 1`.
    pub fn verify_induced_axioms(
        &self,
        reports: &[EOmegaReport],
        seed: u64,
        trials: usize,
        tol: &Tolerance<T>,
    ) -> Result<Report> {
        if let Some(r) = reports.iter().find(|r| !r.passes) {
            return Err(Error::Unsupported(format!("extreme point {} fails (∗∗); no induced model", r.omega_index)));
        }
        let ctol = tol.check_tol.as_f64();
        let nv = self.vertices.len();
        let mut self_value = Worst::default();
        let mut mixed = Worst::default();
        let mut star_one = Worst::default();
        let mut star = Worst::default();
        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "polytope-induced", trial as u64);
            let k = rng.random_range(0..nv);
            let e = &reports[k].values_at_vertices;
            self_value.record((e[k] - 1.0).abs(), || e.clone());

            let wk = rng.random_range(0.0..0.99);
            let raw: Vec<f64> = (0..nv).map(|j| if j == k { 0.0 } else { -(1.0 - rng.random::<f64>()).ln() }).collect();
            let s: f64 = raw.iter().sum();
            let sigma: f64 = wk * e[k] + (1.0 - wk) * raw.iter().zip(e).map(|(w, v)| w / s * v).sum::<f64>();
            mixed.record(sigma, || e.clone());

            let weights: Vec<T> = (0..nv).map(|_| T::lit(rng.random::<f64>())).collect();
            let mut objective = vec![T::zero(); self.d + 1];
            for (w, v) in weights.iter().zip(&self.vertices) {
                objective[0] += *w;
                for (o, &x) in objective[1..].iter_mut().zip(v) {
                    *o += *w * x;
                }
            }
            let a = self.solve_affine(&self.vertices[k], &objective)?;
            let a_vals: Vec<f64> = self.vertices.iter().map(|v| a.eval(v).as_f64()).collect();
            star_one.record((a_vals[k] - 1.0).abs(), || a_vals.clone());
            let gap = e.iter().zip(&a_vals).map(|(x, y)| x - y).fold(0.0, f64::max);
            star.record(gap, || a_vals.clone());
        }
        let mut r = Report::new();
        r.push(self_value.into_check("axiom1.p_e_normalized", ctol));
        r.push(mixed.into_check("axiom1.other_states_below_one", 1.0 - STATE_GAP));
        r.push(star_one.into_check("star.p_e_of_a_is_one", ctol));
        r.push(star.into_check("star.e_leq_a", ctol));
        Ok(r)
    }
}

/// Barycentric weights by a feasibility program, or `None`.
fn hull_weights<T: Scalar>(vertices: &[Vec<T>], zeta: &[T]) -> Result<Option<Vec<T>>> {
    let nv = vertices.len();
    let mut cons = Vec::with_capacity(zeta.len() + 1);
    for (i, &z) in zeta.iter().enumerate() {
        cons.push(Constraint::new(vertices.iter().map(|v| v[i]).collect(), Relation::Eq, z));
    }
    cons.push(Constraint::new(vec![T::one(); nv], Relation::Eq, T::one()));
    match minimize(&vec![T::zero(); nv], &cons, &vec![false; nv])? {
        LpOutcome::Optimal { x, .. } => Ok(Some(x)),
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(Error::LpFailure("feasibility program unbounded".into())),
    }
}

/// `e_ω(ζ) = (1 + f_ω·ζ)/2` on the unit ball of an `lpq` model, `f_ω` the
/// supporting functional at the boundary point `ω`.
pub fn smooth_ball_e_omega<T: Scalar>(
    model: &ModelDescriptor,
    omega: &[T],
    zeta: &[T],
    tol: &Tolerance<T>,
) -> Result<T> {
    if model.kind() != BackendKind::LpQubit {
        return Err(Error::Unsupported(format!("{} is not a smooth ball model", model.kind().key())));
    }
    let n = model.n();
    for v in [omega, zeta] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    let p = T::lit(model.p().expect("lpq has p"));
    let r = lpq::pnorm(omega, p);
    if (r - T::one()).abs() > tol.check_tol {
        return Err(Error::UnnormalizedParam { norm: r.as_f64() });
    }
    if lpq::pnorm(zeta, p) > T::one() + tol.check_tol {
        return Err(Error::Infeasible { residual: (lpq::pnorm(zeta, p) - T::one()).as_f64() });
    }
    let f = lpq::supporting_functional(omega, p);
    Ok((T::one() + f.iter().zip(zeta).map(|(&a, &b)| a * b).sum::<T>()) / T::two())
}
