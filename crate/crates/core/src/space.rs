//! Order-unit-space queries, all routed through the spectrum: the order
//! unit, cone membership, the order norm and the unit interval.

use crate::element::{Element, Tolerance};
use crate::error::Result;
use crate::model::{BackendKind, ModelDescriptor};
use crate::scalar::Scalar;

impl ModelDescriptor {
    /// The distinguished order unit.
    pub fn order_unit<T: Scalar>(&self) -> Element<T> {
        let n = self.n();
        let mut v = vec![T::zero(); self.ambient_dim()];
        match self.kind() {
            BackendKind::Classical => v.iter_mut().for_each(|x| *x = T::one()),
            BackendKind::SpinFactor | BackendKind::LpQubit => v[0] = T::one(),
            BackendKind::SymMatrices | BackendKind::HermMatrices => v[..n].iter_mut().for_each(|x| *x = T::one()),
        }
        Element::from_vec(v)
    }

    pub fn zero<T: Scalar>(&self) -> Element<T> {
        Element::zeros(self.ambient_dim())
    }

    /// `0 ≤ a` iff every eigenvalue is at least `-cone_slack`.
    pub fn cone_contains<T: Scalar>(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<bool> {
        let sf = self.spectral_decompose(a, tol)?;
        Ok(sf.min_eigenvalue() >= -tol.cone_slack)
    }

    /// `a ≤ b` in the cone order.
    pub fn leq<T: Scalar>(&self, a: &Element<T>, b: &Element<T>, tol: &Tolerance<T>) -> Result<bool> {
        self.check_dim(a)?;
        self.cone_contains(&(b - a), tol)
    }

    /// `‖a‖ = max |s_k|`, the smallest `s` with `-s𝕀 ≤ a ≤ s𝕀`.
    pub fn order_norm<T: Scalar>(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<T> {
        Ok(self.spectral_decompose(a, tol)?.spectral_radius())
    }

    /// `0 ≤ a ≤ 𝕀` with `cone_slack` on both ends.
    pub fn in_unit_interval<T: Scalar>(&self, a: &Element<T>, tol: &Tolerance<T>) -> Result<bool> {
        let sf = self.spectral_decompose(a, tol)?;
        Ok(sf.min_eigenvalue() >= -tol.cone_slack && sf.max_eigenvalue() <= T::one() + tol.cone_slack)
    }
}
