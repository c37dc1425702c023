//! Concrete backends: spectral decomposition, atoms, random sampling,
//! functional calculus and the polarized Jordan product.

mod checks;
mod classical;
pub(crate) mod lpq;
mod matrix;
mod spin;

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::element::{Element, Tolerance};
use crate::error::{Error, Result};
use crate::model::{BackendKind, ModelDescriptor};
use crate::rng::rng_for;
use crate::scalar::Scalar;

pub(crate) use lpq::{conjugate_exponent, pnorm};

/// One eigenvalue and its atom.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SpectralPair<T> {
    pub eigenvalue: T,
    pub atom: Element<T>,
}

/// A complete spectral frame: pairwise orthogonal atoms summing to the
/// order unit, each with its eigenvalue, sorted by descending eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SpectralForm<T> {
    pub pairs: Vec<SpectralPair<T>>,
    pub complete: bool,
}

impl<T: Scalar> SpectralForm<T> {
    fn from_pairs(pairs: Vec<(T, Element<T>)>) -> Self {
        Self {
            pairs: pairs.into_iter().map(|(eigenvalue, atom)| SpectralPair { eigenvalue, atom }).collect(),
            complete: true,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.pairs.iter().map(|p| p.eigenvalue).collect()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Element<T>> {
        self.pairs.iter().map(|p| &p.atom)
    }

    /// `Σ s_k e_k`
    pub fn reconstruct(&self) -> Element<T> {
        self.map_sum(|s| s)
    }

    /// `Σ e_k`
    pub fn frame_sum(&self) -> Element<T> {
        self.map_sum(|_| T::one())
    }

    /// `Σ f(s_k) e_k` without finiteness checks.
    pub fn map_sum(&self, f: impl Fn(T) -> T) -> Element<T> {
        let dim = self.pairs.first().map_or(0, |p| p.atom.len());
        self.pairs.iter().fold(Element::zeros(dim), |acc, p| acc.axpy(f(p.eigenvalue), &p.atom))
    }

    pub fn max_eigenvalue(&self) -> T {
        self.pairs.iter().map(|p| p.eigenvalue).fold(T::neg_infinity(), T::max)
    }

    pub fn min_eigenvalue(&self) -> T {
        self.pairs.iter().map(|p| p.eigenvalue).fold(T::infinity(), T::min)
    }

    pub fn spectral_radius(&self) -> T {
        self.pairs.iter().map(|p| p.eigenvalue.abs()).fold(T::zero(), T::max)
    }
}

/// Parameter selecting an atom (minimal extreme point of the unit interval).
#[derive(Debug, Clone, PartialEq)]
pub enum AtomParam<T> {
    /// `classical`: index of the basis vector.
    Basis(usize),
    /// `spin`: unit direction `u`, atom `½(1, u)`.
    Direction(Vec<T>),
    /// `sym`: unit vector spanning the range.
    RealVector(Vec<T>),
    /// `herm`: unit vector spanning the range.
    ComplexVector(Vec<Complex<T>>),
    /// `lpq`: point `ω` on the unit `l^p` sphere.
    BoundaryPoint(Vec<T>),
}

/// Distribution selector for [`ModelDescriptor::random_element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Any,
    Positive,
    UnitInterval,
    Logic,
}

impl ModelDescriptor {
    fn q<T: Scalar>(&self) -> T {
        T::lit(conjugate_exponent(self.p().unwrap_or(2.0)))
    }

    fn p_scalar<T: Scalar>(&self) -> T {
        T::lit(self.p().unwrap_or(2.0))
    }

    fn is_complex(&self) -> bool {
        self.kind() == BackendKind::HermMatrices
    }

    /// Spectral decomposition `a = Σ s_k e_k` over a complete frame.
    pub fn spectral_decompose<T: Scalar>(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<SpectralForm<T>> {
        self.check_dim(a)?;
        let n = self.n();
        let pairs = match self.kind() {
            BackendKind::Classical => classical::spectral(a),
            BackendKind::SpinFactor => spin::spectral(a, tol.eig_cluster),
            BackendKind::SymMatrices | BackendKind::HermMatrices => {
                matrix::spectral(n, a, self.is_complex(), tol.eig_cluster)
            }
            BackendKind::LpQubit => lpq::spectral(a, self.q(), tol.eig_cluster),
        };
        Ok(SpectralForm::from_pairs(pairs))
    }

    /// Builds the atom selected by `param`.
    pub fn atom_from_param<T: Scalar>(&self, param: &AtomParam<T>, tol: &Tolerance<T>) -> Result<Element<T>> {
        let n = self.n();
        let check_len = |len: usize| {
            if len == n {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected: n, got: len })
            }
        };
        let check_norm = |norm: T| {
            if (norm - T::one()).abs() <= tol.check_tol {
                Ok(())
            } else {
                Err(Error::UnnormalizedParam { norm: norm.as_f64() })
            }
        };
        match (self.kind(), param) {
            (BackendKind::Classical, AtomParam::Basis(i)) => {
                if *i >= n {
                    return Err(Error::ParamMismatch(format!("basis index {i} >= {n}")));
                }
                Ok(classical::basis(n, *i))
            }
            (BackendKind::SpinFactor, AtomParam::Direction(u)) => {
                check_len(u.len())?;
                check_norm(spin::norm(u))?;
                Ok(spin::atom(u))
            }
            (BackendKind::SymMatrices, AtomParam::RealVector(v)) => {
                check_len(v.len())?;
                check_norm(spin::norm(v))?;
                let eta: Vec<Complex<T>> = v.iter().map(|&x| Complex::new(x, T::zero())).collect();
                Ok(matrix::projection(&eta, false))
            }
            (BackendKind::HermMatrices, AtomParam::ComplexVector(v)) => {
                check_len(v.len())?;
                check_norm(crate::linalg::vnorm(v))?;
                Ok(matrix::projection(v, true))
            }
            (BackendKind::HermMatrices, AtomParam::RealVector(v)) => {
                let eta: Vec<Complex<T>> = v.iter().map(|&x| Complex::new(x, T::zero())).collect();
                self.atom_from_param(&AtomParam::ComplexVector(eta), tol)
            }
            (BackendKind::LpQubit, AtomParam::BoundaryPoint(omega)) => {
                check_len(omega.len())?;
                check_norm(pnorm(omega, self.p_scalar()))?;
                Ok(lpq::atom_from_point(omega, self.p_scalar()))
            }
            (kind, other) => {
                Err(Error::ParamMismatch(format!("{other:?} is not an atom parameter for {}", kind.key())))
            }
        }
    }

    /// Recovers the parameter of an atom (inverse of [`Self::atom_from_param`]).
    pub fn atom_param<T: Scalar>(&self, e: &Element<T>, tol: &Tolerance<T>) -> Result<AtomParam<T>> {
        if !self.is_atom(e, tol)? {
            return Err(Error::NotAnAtom);
        }
        let x = &e.coords()[1.min(e.len())..];
        Ok(match self.kind() {
            BackendKind::Classical => {
                AtomParam::Basis(classical::atom_index(e, self.logic_tol(tol)).ok_or(Error::NotAnAtom)?)
            }
            BackendKind::SpinFactor => {
                let r = spin::norm(x);
                AtomParam::Direction(x.iter().map(|&v| v / r).collect())
            }
            BackendKind::LpQubit => {
                let q = self.q::<T>();
                let r = pnorm(x, q);
                let g: Vec<T> = x.iter().map(|&v| v / r).collect();
                AtomParam::BoundaryPoint(lpq::peak_point(&g, q))
            }
            BackendKind::SymMatrices | BackendKind::HermMatrices => {
                let m = matrix::to_matrix(self.n(), e, self.is_complex());
                let (w, v) = crate::linalg::hermitian_eigen(&m);
                let k = (0..w.len()).max_by(|&i, &j| w[i].partial_cmp(&w[j]).expect("finite")).expect("n > 0");
                let mut eta = v.column(k);
                crate::linalg::fix_phase(&mut eta);
                if self.kind() == BackendKind::SymMatrices {
                    AtomParam::RealVector(eta.iter().map(|z| z.re).collect())
                } else {
                    AtomParam::ComplexVector(eta)
                }
            }
        })
    }

    /// Absolute tolerance for "eigenvalue is 0 or 1" tests.
    pub(crate) fn logic_tol<T: Scalar>(&self, tol: &Tolerance<T>) -> T {
        tol.eig_cluster.max(tol.check_tol)
    }

    /// True iff `e` is a minimal extreme point of the unit interval:
    /// spectrum `{1, 0, ..., 0}`.
    pub fn is_atom<T: Scalar>(&self, e: &Element<T>, tol: &Tolerance<T>) -> Result<bool> {
        let sf = self.spectral_decompose(e, tol)?;
        let lt = self.logic_tol(tol);
        let mut ones = 0;
        for s in sf.eigenvalues() {
            if (s - T::one()).abs() <= lt {
                ones += 1;
            } else if s.abs() > lt {
                return Ok(false);
            }
        }
        Ok(ones == 1)
    }

    /// Native value `P_e(a)` of the unique state attaining 1 at the atom `e`:
    /// coordinate evaluation, spin pairing, trace pairing, or evaluation at
    /// the boundary point of `e` for `lpq`. `e` is assumed to be an atom.
    pub fn state_value<T: Scalar>(&self, e: &Element<T>, a: &Element<T>) -> T {
        match self.kind() {
            BackendKind::Classical => e.dot(a),
            BackendKind::SpinFactor => spin::pairing(e, a),
            BackendKind::SymMatrices | BackendKind::HermMatrices => {
                crate::linalg::packed_trace_pairing(self.n(), e.coords(), a.coords())
            }
            BackendKind::LpQubit => {
                let q = self.q::<T>();
                let g = &e.coords()[1..];
                let r = pnorm(g, q);
                let g: Vec<T> = g.iter().map(|&v| v / r).collect();
                lpq::evaluate(a, &lpq::peak_point(&g, q))
            }
        }
    }

    /// Boundary point of an `lpq` atom (the point evaluated by its state).
    pub fn lpq_peak_point<T: Scalar>(&self, e: &Element<T>) -> Result<Vec<T>> {
        if self.kind() != BackendKind::LpQubit {
            return Err(Error::Unsupported(format!("{} has no boundary points", self.kind().key())));
        }
        self.check_dim(e)?;
        let q = self.q::<T>();
        let g = &e.coords()[1..];
        let r = pnorm(g, q);
        if r == T::zero() {
            return Err(Error::NotAnAtom);
        }
        let g: Vec<T> = g.iter().map(|&v| v / r).collect();
        Ok(lpq::peak_point(&g, q))
    }

    /// Evaluates an `lpq` element as an affine function at `ζ`.
    pub fn lpq_evaluate<T: Scalar>(&self, a: &Element<T>, zeta: &[T]) -> Result<T> {
        if self.kind() != BackendKind::LpQubit {
            return Err(Error::Unsupported(format!("{} is not a function space", self.kind().key())));
        }
        self.check_dim(a)?;
        if zeta.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: zeta.len() });
        }
        Ok(lpq::evaluate(a, zeta))
    }

    /// Native symmetric pairing (trace / spin / dot), when the model has one.
    pub fn native_pairing<T: Scalar>(&self, a: &Element<T>, b: &Element<T>) -> Option<T> {
        match self.kind() {
            BackendKind::Classical => Some(a.dot(b)),
            BackendKind::SpinFactor => Some(spin::pairing(a, b)),
            BackendKind::SymMatrices | BackendKind::HermMatrices => {
                Some(crate::linalg::packed_trace_pairing(self.n(), a.coords(), b.coords()))
            }
            BackendKind::LpQubit if self.symmetric_tp() => Some(spin::pairing(a, b)),
            BackendKind::LpQubit => None,
        }
    }

    /// Deterministic sample for a fixed seed.
    pub fn random_element<T: Scalar>(&self, seed: u64, shape: Shape) -> Element<T> {
        self.random_element_with(&mut rng_for(seed, 0), shape)
    }

    pub fn random_element_with<T: Scalar, R: Rng + ?Sized>(&self, rng: &mut R, shape: Shape) -> Element<T> {
        if shape == Shape::Any {
            let dim = self.ambient_dim();
            return Element::from_vec((0..dim).map(|_| T::lit(rng.sample::<f64, _>(StandardNormal))).collect());
        }
        let frame = self.random_frame_with::<T, R>(rng);
        let dim = self.ambient_dim();
        frame.iter().fold(Element::zeros(dim), |acc, e| {
            let s = match shape {
                Shape::Positive => rng.sample::<f64, _>(StandardNormal).abs(),
                Shape::UnitInterval => rng.random::<f64>(),
                Shape::Logic => f64::from(u8::from(rng.random::<bool>())),
                Shape::Any => unreachable!(),
            };
            acc.axpy(T::lit(s), e)
        })
    }

    /// A random maximal orthogonal family of atoms (a complete frame).
    pub fn random_frame_with<T: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Element<T>> {
        let n = self.n();
        match self.kind() {
            BackendKind::Classical => classical::random_frame(n, rng),
            BackendKind::SpinFactor => spin::random_frame(n, rng),
            BackendKind::SymMatrices => matrix::random_frame(n, false, rng),
            BackendKind::HermMatrices => matrix::random_frame(n, true, rng),
            BackendKind::LpQubit => lpq::random_frame(n, self.p_scalar(), rng),
        }
    }

    pub fn random_atom_with<T: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> Element<T> {
        self.random_frame_with(rng).swap_remove(0)
    }

    /// A random atom parameter, normalized for this backend.
    pub fn random_param_with<T: Scalar, R: Rng + ?Sized>(&self, rng: &mut R) -> AtomParam<T> {
        let n = self.n();
        match self.kind() {
            BackendKind::Classical => AtomParam::Basis(rng.random_range(0..n)),
            BackendKind::SpinFactor => AtomParam::Direction(spin::random_unit(n, rng)),
            BackendKind::SymMatrices => {
                AtomParam::RealVector(matrix::random_unit(n, false, rng).into_iter().map(|z| z.re).collect())
            }
            BackendKind::HermMatrices => AtomParam::ComplexVector(matrix::random_unit(n, true, rng)),
            BackendKind::LpQubit => AtomParam::BoundaryPoint(lpq::random_boundary_point(n, self.p_scalar(), rng)),
        }
    }

    /// `Σ f(s_k) e_k` over the complete spectral frame of `a`.
    pub fn func_calculus<T: Scalar>(
        &self,
        a: &Element<T>,
        f: impl Fn(T) -> T,
        tol: &Tolerance<T>,
    ) -> Result<Element<T>> {
        let sf = self.spectral_decompose(a, tol)?;
        let mut out = Element::zeros(self.ambient_dim());
        for p in &sf.pairs {
            let v = f(p.eigenvalue);
            if !v.is_finite() {
                return Err(Error::NonFiniteFunction { eigenvalue: p.eigenvalue.as_f64() });
            }
            out = out.axpy(v, &p.atom);
        }
        Ok(out)
    }

    pub fn square<T: Scalar>(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<Element<T>> {
        self.func_calculus(a, |s| s * s, tol)
    }

    /// `a ∘ b = ¼((a + b)² − (a − b)²)` with squares from the spectral
    /// calculus. Bilinear exactly for the Jordan backends.
    pub fn jordan_product_polarized<T: Scalar>(
        &self,
        a: &Element<T>,
        b: &Element<T>,
        tol: &Tolerance<T>,
    ) -> Result<Element<T>> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let plus = self.square(&(a + b), tol)?;
        let minus = self.square(&(a - b), tol)?;
        Ok((&plus - &minus).scale(T::lit(0.25)))
    }

    /// Max over sampled triples of `|a∘(b+c) − a∘b − a∘c|` in the order norm.
    pub fn linearity_defect<T: Scalar>(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<T> {
        let mut worst = T::zero();
        for trial in 0..trials.max(1) {
            let mut rng = crate::rng::rng_for_tagged(seed, "linearity", trial as u64);
            let a = self.random_element_with::<T, _>(&mut rng, Shape::Any);
            let b = self.random_element_with::<T, _>(&mut rng, Shape::Any);
            let c = self.random_element_with::<T, _>(&mut rng, Shape::Any);
            let lhs = self.jordan_product_polarized(&a, &(&b + &c), tol)?;
            let ab = self.jordan_product_polarized(&a, &b, tol)?;
            let ac = self.jordan_product_polarized(&a, &c, tol)?;
            let diff = &(&lhs - &ab) - &ac;
            worst = worst.max(self.order_norm(&diff, tol)?);
        }
        Ok(worst)
    }
}
