//! Dense coordinate vectors and the tolerance bundle threaded through every
//! verifier.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of a model's ambient real space.
///
/// The meaning of the coordinates is fixed by the backend: componentwise
/// values for `classical`, `(t, x)` for spin factors, packed matrices for
/// `sym`/`herm`, `(c, f)` affine functions for `lpq`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound = "T: Scalar")]
pub struct Element<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Element<T> {
    /// Wraps coordinates, rejecting non-finite entries.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coords })
    }

    pub(crate) fn from_vec(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| T::lit(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: vec![T::zero(); dim] }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|x| x.as_f64()).collect()
    }

    pub fn scale(&self, s: T) -> Self {
        Self { coords: self.coords.iter().map(|&x| x * s).collect() }
    }

    /// `self + s * other`
    pub fn axpy(&self, s: T, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + s * b).collect() }
    }

    /// Euclidean dot product of the raw coordinates.
    pub fn dot(&self, other: &Self) -> T {
        self.coords.iter().zip(&other.coords).map(|(&a, &b)| a * b).sum()
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.coords.iter().zip(&other.coords).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn sum<'a, I>(dim: usize, items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items.into_iter().fold(Self::zeros(dim), |acc, e| &acc + e)
    }

    pub fn cast<U: Scalar>(&self) -> Element<U> {
        Element { coords: self.coords.iter().map(|x| U::lit(x.as_f64())).collect() }
    }
}

impl<T> Index<usize> for Element<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: Scalar> Add for &Element<T> {
    type Output = Element<T>;
    fn add(self, rhs: Self) -> Element<T> {
        debug_assert_eq!(self.len(), rhs.len());
        Element::from_vec(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a + b).collect())
    }
}

impl<T: Scalar> Sub for &Element<T> {
    type Output = Element<T>;
    fn sub(self, rhs: Self) -> Element<T> {
        debug_assert_eq!(self.len(), rhs.len());
        Element::from_vec(self.coords.iter().zip(&rhs.coords).map(|(&a, &b)| a - b).collect())
    }
}

impl<T: Scalar> Neg for &Element<T> {
    type Output = Element<T>;
    fn neg(self) -> Element<T> {
        Element::from_vec(self.coords.iter().map(|&a| -a).collect())
    }
}

impl<T: Scalar> Mul<&Element<T>> for f64 {
    type Output = Element<T>;
    fn mul(self, rhs: &Element<T>) -> Element<T> {
        rhs.scale(T::lit(self))
    }
}

/// Tolerances used by decompositions, cone queries and verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Tolerance<T> {
    /// Relative eigenvalue clustering threshold (against the spectral diameter).
    pub eig_cluster: T,
    pub cone_slack: T,
    pub check_tol: T,
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        Self { eig_cluster: T::lit(T::EIG_CLUSTER), cone_slack: T::lit(T::CONE_SLACK), check_tol: T::lit(T::CHECK_TOL) }
    }
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(eig_cluster: T, cone_slack: T, check_tol: T) -> Result<Self> {
        let tol = Self { eig_cluster, cone_slack, check_tol };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let limit = T::lit(1e-3);
        for (name, v) in
            [("eig_cluster", self.eig_cluster), ("cone_slack", self.cone_slack), ("check_tol", self.check_tol)]
        {
            if !(v > T::zero() && v < limit) {
                return Err(Error::InvalidTolerance(format!("{name} = {v} outside (0, 1e-3)")));
            }
        }
        Ok(())
    }

    /// Applies a `KEY=VAL` override.
    pub fn set(&mut self, key: &str, value: T) -> Result<()> {
        match key {
            "eig_cluster" => self.eig_cluster = value,
            "cone_slack" => self.cone_slack = value,
            "check_tol" => self.check_tol = value,
            other => return Err(Error::Parse(format!("unknown tolerance key `{other}`"))),
        }
        self.validate()
    }
}
