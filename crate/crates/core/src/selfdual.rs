//! Euclidean spaces with a self-dual cone: Moreau decomposition, atoms as
//! indecomposable positive elements of unit length, spectral peeling by
//! orthogonal splitting, recovery of the order unit from maximal orthogonal
//! atom families, and sampling verifiers for (tp) and (∗∗∗).
//!
//! Two cone forms are supported: the positive cone of a backend with a
//! symmetric transition probability (paired through its native inner
//! product), and a finitely generated cone in `R^d` with the dot product.

use std::io::Read;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::element::{Element, Tolerance};
use crate::error::{Error, Result};
use crate::model::ModelDescriptor;
use crate::models::{Shape, SpectralForm, SpectralPair};
use crate::nnls::nnls;
use crate::report::{Check, Report, Worst};
use crate::rng::rng_for_tagged;
use crate::scalar::Scalar;
use crate::transition::STATE_GAP;

/// Residual tolerance for cone projections.
pub const PROJECTION_TOL: f64 = 1e-10;

/// Finitely generated cone; `atoms` are the normalized extreme generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedCone<T> {
    generators: Vec<Element<T>>,
    atoms: Vec<Element<T>>,
    dim: usize,
}

impl<T: Scalar> GeneratedCone<T> {
    pub fn new(generators: Vec<Element<T>>) -> Result<Self> {
        let dim = generators
            .first()
            .map(Element::len)
            .ok_or_else(|| Error::InvalidModel("cone needs at least one generator".into()))?;
        if dim == 0 {
            return Err(Error::InvalidModel("generators must be nonempty vectors".into()));
        }
        let mut unit: Vec<Element<T>> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
            }
            let n = g.dot(g).sqrt();
            if n <= T::epsilon() {
                return Err(Error::InvalidModel(format!("generator {i} is zero")));
            }
            let u = g.scale(T::one() / n);
            if !unit.iter().any(|v| (v.dot(&u) - T::one()).abs() <= T::lit(1e-12)) {
                unit.push(u);
            }
        }
        let cap = 10 * dim * dim;
        let mut atoms = Vec::new();
        for (i, u) in unit.iter().enumerate() {
            let others: Vec<Vec<T>> =
                unit.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.coords().to_vec()).collect();
            let extreme = others.is_empty()
                || nnls(&others, u.coords(), cap.max(64), T::lit(PROJECTION_TOL))?.residual > T::lit(1e-9);
            if extreme {
                atoms.push(u.clone());
            }
        }
        Ok(Self { generators, atoms, dim })
    }

    pub fn generators(&self) -> &[Element<T>] {
        &self.generators
    }

    pub fn atoms(&self) -> &[Element<T>] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn columns(&self) -> Vec<Vec<T>> {
        self.atoms.iter().map(|a| a.coords().to_vec()).collect()
    }

    /// Coefficients over the atoms of the nearest cone point.
    fn project_coeffs(&self, a: &Element<T>) -> Result<(Vec<T>, T)> {
        let s = nnls(&self.columns(), a.coords(), 10 * self.dim * self.dim, T::lit(PROJECTION_TOL))?;
        Ok((s.x, s.residual))
    }

    fn combine(&self, idx: &[usize], x: &[T]) -> Element<T> {
        let mut out = Element::zeros(self.dim);
        for &i in idx {
            out = out.axpy(x[i], &self.atoms[i]);
        }
        out
    }
}

/// `a = a_plus − a_minus` with both parts in the cone and orthogonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct MoreauPair<T> {
    pub a_plus: Element<T>,
    pub a_minus: Element<T>,
}

/// Splits a nonzero positive element into two nonzero orthogonal positive
/// parts, or reports it indecomposable with `None`.
pub trait SplitOracle<T: Scalar> {
    fn split(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<Option<(Element<T>, Element<T>)>>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum SelfDualCone<T> {
    Spectral(ModelDescriptor),
    Generated(GeneratedCone<T>),
}

impl<T: Scalar> SelfDualCone<T> {
    /// The positive cone of a backend; requires a symmetric transition
    /// probability so that the native pairing is an inner product.
    pub fn spectral(model: ModelDescriptor) -> Result<Self> {
        if !model.symmetric_tp() {
            return Err(Error::Unsupported(format!("{model} has no self-dualizing inner product")));
        }
        Ok(Self::Spectral(model))
    }

    pub fn generated(generators: Vec<Element<T>>) -> Result<Self> {
        Ok(Self::Generated(GeneratedCone::new(generators)?))
    }

    /// One generator per CSV row.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let rows = crate::points::read_points(reader)?;
        let gens = rows.iter().map(|r| Element::from_f64(r)).collect::<Result<Vec<_>>>()?;
        Self::generated(gens)
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Self::Spectral(m) => m.ambient_dim(),
            Self::Generated(g) => g.dim,
        }
    }

    fn check_dim(&self, a: &Element<T>) -> Result<()> {
        if a.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: a.len() });
        }
        Ok(())
    }

    pub fn inner(&self, a: &Element<T>, b: &Element<T>) -> T {
        match self {
            Self::Spectral(m) => m.native_pairing(a, b).expect("symmetric model has a pairing"),
            Self::Generated(_) => a.dot(b),
        }
    }

    pub fn norm(&self, a: &Element<T>) -> T {
        self.inner(a, a).max(T::zero()).sqrt()
    }

    /// Distance-like measure of how far `a` is from the cone: the most
    /// negative eigenvalue for spectral cones, the projection residual for
    /// generated ones. Zero inside the cone.
    pub fn cone_defect(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<T> {
        self.check_dim(a)?;
        match self {
            Self::Spectral(m) => Ok((-m.spectral_decompose(a, tol)?.min_eigenvalue()).max(T::zero())),
            Self::Generated(g) => Ok(g.project_coeffs(a)?.1),
        }
    }

    pub fn contains(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<bool> {
        let scale = match self {
            Self::Spectral(_) => T::one(),
            Self::Generated(_) => self.norm(a).max(T::one()),
        };
        Ok(self.cone_defect(a, tol)? <= tol.cone_slack * scale)
    }

    /// Nearest point of the cone.
    pub fn project(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<Element<T>> {
        self.check_dim(a)?;
        match self {
            Self::Spectral(m) => {
                let sf = m.spectral_decompose(a, tol)?;
                Ok(sf.map_sum(|s| s.max(T::zero())))
            }
            Self::Generated(g) => {
                let (x, _) = g.project_coeffs(a)?;
                let idx: Vec<usize> = (0..x.len()).collect();
                Ok(g.combine(&idx, &x))
            }
        }
    }

    /// Moreau split: exact eigenvalue split for spectral cones, projection
    /// `a_plus = P(a)` and `a_minus = a_plus − a` for generated ones.
    pub fn moreau_decompose(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<MoreauPair<T>> {
        self.check_dim(a)?;
        match self {
            Self::Spectral(m) => {
                let sf = m.spectral_decompose(a, tol)?;
                Ok(MoreauPair {
                    a_plus: sf.map_sum(|s| s.max(T::zero())),
                    a_minus: sf.map_sum(|s| (-s).max(T::zero())),
                })
            }
            Self::Generated(_) => {
                let a_plus = self.project(a, tol)?;
                let a_minus = &a_plus - a;
                Ok(MoreauPair { a_plus, a_minus })
            }
        }
    }

    /// `e ≥ 0`, `<e|e> = 1` and `e` admits no orthogonal positive split.
    pub fn is_atom_sd(&self, e: &Element<T>, tol: &Tolerance<T>) -> Result<bool> {
        self.check_dim(e)?;
        if (self.inner(e, e) - T::one()).abs() > tol.check_tol {
            return Ok(false);
        }
        match self {
            Self::Spectral(m) => {
                if !m.cone_contains(e, tol)? {
                    return Ok(false);
                }
                let lt = tol.eig_cluster.max(tol.check_tol);
                let sf = m.spectral_decompose(e, tol)?;
                Ok(sf.eigenvalues().iter().filter(|s| s.abs() > lt).count() == 1)
            }
            Self::Generated(g) => Ok(g.atoms.iter().any(|a| (a.dot(e) - T::one()).abs() <= tol.check_tol)),
        }
    }

    pub fn random_atom_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Element<T> {
        match self {
            Self::Spectral(m) => m.random_atom_with(rng),
            Self::Generated(g) => g.atoms[rng.random_range(0..g.atoms.len())].clone(),
        }
    }

    pub fn random_positive_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Element<T> {
        match self {
            Self::Spectral(m) => m.random_element_with(rng, Shape::Positive),
            Self::Generated(g) => {
                let mut out = Element::zeros(g.dim);
                for a in &g.atoms {
                    let w: f64 = rng.random::<f64>();
                    out = out.axpy(T::lit(-(1.0 - w).ln()), a);
                }
                out
            }
        }
    }

    /// A maximal family of pairwise orthogonal atoms: a random frame for
    /// spectral cones, a greedy pass over shuffled atoms otherwise.
    pub fn random_maximal_family_with<R: Rng + ?Sized>(&self, rng: &mut R, tol: &Tolerance<T>) -> Vec<Element<T>> {
        match self {
            Self::Spectral(m) => m.random_frame_with(rng),
            Self::Generated(g) => {
                let mut order: Vec<usize> = (0..g.atoms.len()).collect();
                order.shuffle(rng);
                let mut fam: Vec<Element<T>> = Vec::new();
                for i in order {
                    let a = &g.atoms[i];
                    if fam.iter().all(|f| f.dot(a).abs() <= tol.check_tol) {
                        fam.push(a.clone());
                    }
                }
                fam
            }
        }
    }

    /// Positive spectral form by repeated orthogonal splitting: split the
    /// first summand until it is indecomposable, record it as `s·e` with
    /// `s = <b|b>^{1/2}`, subtract and repeat. Any element goes through its
    /// Moreau pair first, the negative part contributing negative
    /// coefficients.
    pub fn peel_spectral(
        &self,
        a: &Element<T>,
        oracle: &dyn SplitOracle<T>,
        tol: &Tolerance<T>,
    ) -> Result<SpectralForm<T>> {
        let pair = self.moreau_decompose(a, tol)?;
        let mut pairs = self.peel_positive(&pair.a_plus, oracle, tol)?;
        for p in self.peel_positive(&pair.a_minus, oracle, tol)? {
            pairs.push(SpectralPair { eigenvalue: -p.eigenvalue, atom: p.atom });
        }
        pairs.sort_by(|x, y| y.eigenvalue.partial_cmp(&x.eigenvalue).unwrap());
        Ok(SpectralForm { pairs, complete: false })
    }

    /// [`Self::peel_spectral`] with the cone's own split oracle.
    pub fn peel(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<SpectralForm<T>> {
        self.peel_spectral(a, self, tol)
    }

    fn peel_positive(
        &self,
        a: &Element<T>,
        oracle: &dyn SplitOracle<T>,
        tol: &Tolerance<T>,
    ) -> Result<Vec<SpectralPair<T>>> {
        let zero = tol.eig_cluster.max(tol.check_tol) * self.norm(a).max(T::one());
        let budget = 4 * self.ambient_dim() + 4;
        let mut rest = a.clone();
        let mut out = Vec::new();
        while self.norm(&rest) > zero {
            if out.len() >= budget {
                return Err(Error::OracleFailure(format!("no termination after {budget} atoms")));
            }
            let mut b = rest.clone();
            let mut depth = 0;
            while let Some((b1, _)) = oracle.split(&b, tol)? {
                depth += 1;
                if depth > budget {
                    return Err(Error::OracleFailure("split recursion does not terminate".into()));
                }
                b = b1;
            }
            let s = self.norm(&b);
            if s <= zero {
                return Err(Error::OracleFailure("oracle returned a vanishing part".into()));
            }
            out.push(SpectralPair { eigenvalue: s, atom: b.scale(T::one() / s) });
            rest = &rest - &b;
        }
        Ok(out)
    }

    fn validate_family(&self, fam: &[Element<T>], tol: &Tolerance<T>) -> Result<()> {
        for (i, e) in fam.iter().enumerate() {
            if !self.is_atom_sd(e, tol)? {
                return Err(Error::NotAnAtom);
            }
            for f in &fam[i + 1..] {
                if self.inner(e, f).abs() > tol.check_tol {
                    return Err(Error::Unsupported("family is not pairwise orthogonal".into()));
                }
            }
        }
        Ok(())
    }

    /// `𝕀 = Σ e_k` from maximal orthogonal atom families. Supplied families
    /// are topped up with sampled ones to at least five; all sums must agree
    /// and every sampled atom must satisfy `<e|𝕀> = 1`.
    pub fn recover_order_unit(
        &self,
        seed: u64,
        families: &[Vec<Element<T>>],
        tol: &Tolerance<T>,
    ) -> Result<Element<T>> {
        let mut fams: Vec<Vec<Element<T>>> = families.to_vec();
        for f in &fams {
            self.validate_family(f, tol)?;
        }
        let mut k = 0u64;
        while fams.len() < 5 {
            let mut rng = rng_for_tagged(seed, "order-unit", k);
            fams.push(self.random_maximal_family_with(&mut rng, tol));
            k += 1;
        }
        let dim = self.ambient_dim();
        let unit = Element::sum(dim, fams[0].iter());
        for f in &fams[1..] {
            let d = Element::sum(dim, f.iter()).max_abs_diff(&unit);
            if d > tol.check_tol {
                return Err(Error::TpViolation { defect: d.as_f64() });
            }
        }
        for k in 0..16 {
            let mut rng = rng_for_tagged(seed, "order-unit-atom", k);
            let e = self.random_atom_with(&mut rng);
            let d = (self.inner(&e, &unit) - T::one()).abs();
            if d > tol.check_tol {
                return Err(Error::TpViolation { defect: d.as_f64() });
            }
        }
        Ok(unit)
    }

    /// Moreau pairs on Gaussian samples: reconstruction, orthogonality, cone
    /// membership of both parts, and reproduction on re-decomposition.
    pub fn verify_moreau(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let mut recon = Worst::default();
        let mut orth = Worst::default();
        let mut member = Worst::default();
        let mut unique = Worst::default();
        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "moreau", trial as u64);
            let a = self.gaussian_with(&mut rng);
            let p = self.moreau_decompose(&a, tol)?;
            recon.record((&(&p.a_plus - &p.a_minus) - &a).max_abs_diff(&Element::zeros(a.len())).as_f64(), || {
                a.to_f64()
            });
            orth.record(self.inner(&p.a_plus, &p.a_minus).abs().as_f64(), || a.to_f64());
            let m = self.cone_defect(&p.a_plus, tol)?.max(self.cone_defect(&p.a_minus, tol)?);
            member.record(m.as_f64(), || a.to_f64());
            let again = self.moreau_decompose(&(&p.a_plus - &p.a_minus), tol)?;
            let u = again.a_plus.max_abs_diff(&p.a_plus).max(again.a_minus.max_abs_diff(&p.a_minus));
            unique.record(u.as_f64(), || a.to_f64());
        }
        let mut r = Report::new();
        r.push(recon.into_check("moreau.reconstruction", ctol));
        r.push(orth.into_check("moreau.orthogonal_parts", ctol));
        r.push(member.into_check("moreau.parts_in_cone", ctol));
        r.push(unique.into_check("moreau.reproducible", ctol));
        Ok(r)
    }

    fn gaussian_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Element<T> {
        match self {
            Self::Spectral(m) => m.random_element_with(rng, Shape::Any),
            Self::Generated(g) => {
                let v: Vec<T> = (0..g.dim).map(|_| T::lit(rng.sample(rand_distr::StandardNormal))).collect();
                Element::from_vec(v)
            }
        }
    }

    /// Self-duality on samples: pairwise nonnegativity of cone elements, and
    /// membership of the dual samples `P(y) − y`.
    pub fn verify_self_duality(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let mut pos = Worst::default();
        let mut dual = Worst::default();
        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "cone-dual", trial as u64);
            let a = self.random_positive_with(&mut rng);
            let b = self.random_positive_with(&mut rng);
            let scale = (self.norm(&a) * self.norm(&b)).max(T::one());
            pos.record(((-self.inner(&a, &b)).max(T::zero()) / scale).as_f64(), || b.to_f64());
            let y = self.gaussian_with(&mut rng);
            let d = &self.project(&y, tol)? - &y;
            dual.record(self.cone_defect(&d, tol)?.as_f64(), || d.to_f64());
        }
        let mut r = Report::new();
        r.push(pos.into_check("cone.positive_pairs_nonnegative", ctol));
        r.push(dual.into_check("cone.dual_samples_in_cone", ctol));
        Ok(r)
    }

    /// Peeling on samples: reconstruction, orthogonal atoms, positive
    /// coefficients, and coefficients in `[0,1]` for elements of `[0,𝕀]`
    /// when an order unit is available.
    pub fn verify_peeling(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let unit = self.recover_order_unit(seed, &[], tol).ok();
        let mut recon = Worst::default();
        let mut orth = Worst::default();
        let mut coeff = Worst::default();
        let mut not_atoms = 0usize;
        let mut interval = Worst::default();
        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "peel", trial as u64);
            let a = self.random_positive_with(&mut rng);
            let sf = self.peel(&a, tol)?;
            let scale = self.norm(&a).max(T::one());
            recon.record((self.norm(&(&sf.reconstruct() - &a)) / scale).as_f64(), || a.to_f64());
            for (i, p) in sf.pairs.iter().enumerate() {
                if !self.is_atom_sd(&p.atom, tol)? {
                    not_atoms += 1;
                }
                coeff.record((-p.eigenvalue).max(T::zero()).as_f64(), || a.to_f64());
                for q in &sf.pairs[i + 1..] {
                    orth.record(self.inner(&p.atom, &q.atom).abs().as_f64(), || a.to_f64());
                }
            }
            if let Some(u) = &unit {
                // Convex combination of 𝕀 and a scaled-down positive element.
                let nb = self.inner(u, &a).max(T::one());
                let t = T::lit(rng.random::<f64>());
                let b = &u.scale(t) + &a.scale((T::one() - t) / nb);
                if self.contains(&(u - &b), tol)? {
                    for p in self.peel(&b, tol)?.pairs {
                        let over = (p.eigenvalue - T::one()).max(-p.eigenvalue).max(T::zero());
                        interval.record(over.as_f64(), || b.to_f64());
                    }
                }
            }
        }
        let mut r = Report::new();
        r.push(recon.into_check("peel.reconstruction", ctol));
        r.push(orth.into_check("peel.atoms_orthogonal", ctol));
        r.push(coeff.into_check("peel.coefficients_positive", ctol));
        r.push(Check::new("peel.parts_are_atoms", not_atoms as f64, 0.0));
        match unit {
            Some(_) => r.push(interval.into_check("peel.unit_interval_coefficients", ctol)),
            None => r.push(Check::skipped("peel.unit_interval_coefficients", "no order unit (tp fails)")),
        }
        Ok(r)
    }

    /// (tp): `Σ_k <e_k|e> = 1` for sampled maximal families and atoms.
    pub fn verify_tp_property(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let mut extra = Worst::default();
        let mut member = Worst::default();
        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "tp-property", trial as u64);
            let fam = self.random_maximal_family_with(&mut rng, tol);
            let e = self.random_atom_with(&mut rng);
            let s: T = fam.iter().map(|f| self.inner(f, &e)).sum();
            extra.record((s - T::one()).abs().as_f64(), || e.to_f64());
            let m = &fam[rng.random_range(0..fam.len())];
            let s: T = fam.iter().map(|f| self.inner(f, m)).sum();
            member.record((s - T::one()).abs().as_f64(), || m.to_f64());
        }
        let mut r = Report::new();
        r.push(extra.into_check("tp_property.sum_over_family", ctol));
        r.push(member.into_check("tp_property.member_atom", ctol));
        Ok(r)
    }

    /// (∗∗∗): for `a = e + Σ λ_k e_k` built on a maximal family through `e`,
    /// `<e|a> = 1`, `a ∈ [0,𝕀]` and `a − e` is positive. Also the cases
    /// `a = e` and `a = 𝕀`.
    pub fn verify_star3(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let mut r = Report::new();
        let unit = match self.recover_order_unit(seed, &[], tol) {
            Ok(u) => u,
            Err(Error::TpViolation { defect }) => {
                r.push(Check::new("star3.order_unit_recovered", defect, ctol));
                return Ok(r);
            }
            Err(e) => return Err(e),
        };
        r.push(Check::new("star3.order_unit_recovered", 0.0, ctol));
        let mut pairing = Worst::default();
        let mut inside = Worst::default();
        let mut order = Worst::default();
        let mut trivial = Worst::default();
        for trial in 0..trials.max(1) {
            let mut rng = rng_for_tagged(seed, "star3", trial as u64);
            let fam = self.random_maximal_family_with(&mut rng, tol);
            let e = fam[0].clone();
            let mut a = e.clone();
            for f in &fam[1..] {
                a = a.axpy(T::lit(rng.random::<f64>()), f);
            }
            pairing.record((self.inner(&e, &a) - T::one()).abs().as_f64(), || a.to_f64());
            let d = self.cone_defect(&a, tol)?.max(self.cone_defect(&(&unit - &a), tol)?);
            inside.record(d.as_f64(), || a.to_f64());
            order.record(self.cone_defect(&(&a - &e), tol)?.as_f64(), || a.to_f64());
            let t = self.cone_defect(&(&unit - &e), tol)?.max(self.cone_defect(&e, tol)?);
            trivial.record(t.as_f64(), || e.to_f64());
        }
        r.push(pairing.into_check("star3.pairing_is_one", ctol));
        r.push(inside.into_check("star3.a_in_unit_interval", ctol));
        r.push(order.into_check("star3.e_leq_a", ctol));
        r.push(trivial.into_check("star3.e_leq_unit", ctol));
        Ok(r)
    }

    /// Consequences for the induced order unit space once (tp) and (∗∗∗)
    /// hold: uniqueness of the state attaining 1 at an atom, property (∗),
    /// and a symmetric transition probability equal to the inner product.
    pub fn verify_induced_model(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let ctol = tol.check_tol.as_f64();
        let mut r = Report::new();
        match self {
            Self::Spectral(m) => {
                for (prefix, rep) in
                    [("induced.", m.verify_axiom1(seed, trials, tol)?), ("induced.", m.verify_star(seed, trials, tol)?)]
                {
                    for mut c in rep.checks {
                        c.name = format!("{prefix}{}", c.name);
                        r.push(c);
                    }
                }
                let d = m.symmetry_defect::<T>(seed, trials).as_f64();
                r.push(Check::new("induced.symmetry_defect", d, ctol));
                let mut tp = Worst::default();
                for trial in 0..trials.max(1) {
                    let mut rng = rng_for_tagged(seed, "induced-tp", trial as u64);
                    let e1 = m.random_atom_with::<T, _>(&mut rng);
                    let e2 = m.random_atom_with::<T, _>(&mut rng);
                    tp.record((m.state_value(&e1, &e2) - self.inner(&e1, &e2)).abs().as_f64(), || e2.to_f64());
                }
                r.push(tp.into_check("induced.tp_equals_inner_product", ctol));
            }
            Self::Generated(g) => {
                let unit = match self.recover_order_unit(seed, &[], tol) {
                    Ok(u) => u,
                    Err(Error::TpViolation { defect }) => {
                        r.push(Check::new("induced.order_unit_recovered", defect, ctol));
                        return Ok(r);
                    }
                    Err(e) => return Err(e),
                };
                let mut norm = Worst::default();
                let mut others = Worst::default();
                let mut sym = Worst::default();
                for trial in 0..trials.max(1) {
                    let mut rng = rng_for_tagged(seed, "induced", trial as u64);
                    let i = rng.random_range(0..g.atoms.len());
                    let e = &g.atoms[i];
                    norm.record(
                        (self.inner(e, e) - T::one()).abs().max((self.inner(e, &unit) - T::one()).abs()).as_f64(),
                        || e.to_f64(),
                    );
                    // State mixing P_e with weight ≤ 0.9 and other atoms' states.
                    if g.atoms.len() > 1 {
                        let w = T::lit(0.9 * rng.random::<f64>());
                        let mut j = rng.random_range(0..g.atoms.len() - 1);
                        if j >= i {
                            j += 1;
                        }
                        let f = &g.atoms[j];
                        let sigma = w * self.inner(e, e) + (T::one() - w) * self.inner(f, e);
                        others.record(sigma.as_f64(), || f.to_f64());
                        sym.record((self.inner(e, f) - self.inner(f, e)).abs().as_f64(), || f.to_f64());
                    }
                }
                r.push(norm.into_check("induced.axiom1.p_e_normalized", ctol));
                r.push(others.into_check("induced.axiom1.other_states_below_one", 1.0 - STATE_GAP));
                r.push(sym.into_check("induced.symmetry_defect", ctol));
                let star = self.verify_star3(seed, trials, tol)?;
                for mut c in star.checks {
                    c.name = format!("induced.star.{}", c.name.trim_start_matches("star3."));
                    r.push(c);
                }
            }
        }
        Ok(r)
    }

    /// Every verifier in this module.
    pub fn verify_all(&self, seed: u64, trials: usize, tol: &Tolerance<T>) -> Result<Report> {
        let mut r = Report::new();
        r.extend(self.verify_self_duality(seed, trials, tol)?);
        r.extend(self.verify_moreau(seed, trials, tol)?);
        r.extend(self.verify_peeling(seed, trials, tol)?);
        match self.recover_order_unit(seed, &[], tol) {
            Ok(_) => r.push(Check::new("order_unit.families_agree", 0.0, tol.check_tol.as_f64())),
            Err(Error::TpViolation { defect }) => {
                r.push(Check::new("order_unit.families_agree", defect, tol.check_tol.as_f64()))
            }
            Err(e) => return Err(e),
        }
        r.extend(self.verify_tp_property(seed, trials, tol)?);
        r.extend(self.verify_star3(seed, trials, tol)?);
        if r.passed() {
            r.extend(self.verify_induced_model(seed, trials, tol)?);
        } else {
            r.push(Check::skipped("induced", "tp or star3 failed; induced model not constructed"));
        }
        Ok(r)
    }
}

impl<T: Scalar> SplitOracle<T> for SelfDualCone<T> {
    /// Spectral cones: top atom against the rest of the positive spectrum.
    /// Generated cones: for each atom `e_i`, the atoms orthogonal to it
    /// (`S2`) and the atoms orthogonal to all of `S2` (`S1`) are mutually
    /// orthogonal; the first pair whose combined cone contains `a` with
    /// both parts nonzero gives the split.
    fn split(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<Option<(Element<T>, Element<T>)>> {
        let lt = tol.eig_cluster.max(tol.check_tol) * self.norm(a).max(T::one());
        match self {
            Self::Spectral(m) => {
                let sf = m.spectral_decompose(a, tol)?;
                let pos: Vec<&SpectralPair<T>> = sf.pairs.iter().filter(|p| p.eigenvalue > lt).collect();
                if pos.len() < 2 {
                    return Ok(None);
                }
                let b1 = pos[0].atom.scale(pos[0].eigenvalue);
                let b2 = pos[1..].iter().fold(Element::zeros(a.len()), |acc, p| acc.axpy(p.eigenvalue, &p.atom));
                Ok(Some((b1, b2)))
            }
            Self::Generated(g) => {
                let n = g.atoms.len();
                let orth = |i: usize, j: usize| g.atoms[i].dot(&g.atoms[j]).abs() <= tol.check_tol;
                for i in 0..n {
                    let s2: Vec<usize> = (0..n).filter(|&j| j != i && orth(i, j)).collect();
                    if s2.is_empty() {
                        continue;
                    }
                    let s1: Vec<usize> = (0..n).filter(|&k| s2.iter().all(|&j| orth(k, j))).collect();
                    let idx: Vec<usize> = s1.iter().chain(&s2).copied().collect();
                    let cols: Vec<Vec<T>> = idx.iter().map(|&k| g.atoms[k].coords().to_vec()).collect();
                    let sol = nnls(&cols, a.coords(), 10 * g.dim * g.dim, T::lit(PROJECTION_TOL))?;
                    if sol.residual > tol.cone_slack * self.norm(a).max(T::one()) {
                        continue;
                    }
                    let mut x = vec![T::zero(); n];
                    for (&k, &v) in idx.iter().zip(&sol.x) {
                        x[k] = v;
                    }
                    let b1 = g.combine(&s1, &x);
                    let b2 = g.combine(&s2, &x);
                    if self.norm(&b1) > lt && self.norm(&b2) > lt {
                        return Ok(Some((b1, b2)));
                    }
                }
                Ok(None)
            }
        }
    }
}
