//! Backend identity and parameters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The concrete spectral backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BackendKind {
    /// `R^n` with the componentwise order.
    #[serde(rename = "classical")]
    Classical,
    /// Spin factor `R ⊕ R^n`.
    #[serde(rename = "spin")]
    SpinFactor,
    /// Real symmetric `n x n` matrices.
    #[serde(rename = "sym")]
    SymMatrices,
    /// Complex Hermitian `n x n` matrices.
    #[serde(rename = "herm")]
    HermMatrices,
    /// Affine functions on the unit ball of `l^p(R^n)`.
    #[serde(rename = "lpq")]
    LpQubit,
}

impl BackendKind {
    pub fn key(self) -> &'static str {
        match self {
            Self::Classical => "classical",
            Self::SpinFactor => "spin",
            Self::SymMatrices => "sym",
            Self::HermMatrices => "herm",
            Self::LpQubit => "lpq",
        }
    }

    pub fn from_key(key: &str) -> Result<Self> {
        Ok(match key {
            "classical" => Self::Classical,
            "spin" => Self::SpinFactor,
            "sym" => Self::SymMatrices,
            "herm" => Self::HermMatrices,
            "lpq" => Self::LpQubit,
            other => return Err(Error::Parse(format!("unknown backend `{other}`"))),
        })
    }
}

/// A validated backend together with its parameters.
///
/// Immutable after construction; derived quantities (ambient dimension,
/// information capacity, symmetry flags) are computed from `kind`, `n`, `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor", into = "RawDescriptor")]
pub struct ModelDescriptor {
    kind: BackendKind,
    n: usize,
    p: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawDescriptor {
    kind: BackendKind,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
}

impl TryFrom<RawDescriptor> for ModelDescriptor {
    type Error = Error;
    fn try_from(raw: RawDescriptor) -> Result<Self> {
        Self::new(raw.kind, raw.n, raw.p)
    }
}

impl From<ModelDescriptor> for RawDescriptor {
    fn from(m: ModelDescriptor) -> Self {
        Self { kind: m.kind, n: m.n, p: m.p }
    }
}

impl ModelDescriptor {
    pub fn new(kind: BackendKind, n: usize, p: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("n must be positive".into()));
        }
        match (kind, p) {
            (BackendKind::LpQubit, Some(p)) => {
                if !(p.is_finite() && p > 1.0) {
                    return Err(Error::InvalidModel(format!(
                        "lpq requires 1 < p < inf for a smooth strictly convex ball, got p = {p}"
                    )));
                }
            }
            (BackendKind::LpQubit, None) => return Err(Error::InvalidModel("lpq requires an exponent p".into())),
            (_, Some(_)) => return Err(Error::InvalidModel(format!("{} takes no exponent", kind.key()))),
            (_, None) => {}
        }
        if kind == BackendKind::LpQubit && n < 2 {
            return Err(Error::InvalidModel("lpq requires n >= 2".into()));
        }
        Ok(Self { kind, n, p })
    }

    pub fn classical(n: usize) -> Self {
        Self::new(BackendKind::Classical, n, None).expect("valid classical model")
    }

    pub fn spin(n: usize) -> Self {
        Self::new(BackendKind::SpinFactor, n, None).expect("valid spin factor")
    }

    pub fn sym(n: usize) -> Self {
        Self::new(BackendKind::SymMatrices, n, None).expect("valid sym model")
    }

    pub fn herm(n: usize) -> Self {
        Self::new(BackendKind::HermMatrices, n, None).expect("valid herm model")
    }

    pub fn lpq(n: usize, p: f64) -> Result<Self> {
        Self::new(BackendKind::LpQubit, n, Some(p))
    }

    pub fn kind(&self) -> BackendKind {
        self.kind
    }

    /// Backend size parameter `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of the `l^p` ball (only for `lpq`).
    pub fn p(&self) -> Option<f64> {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        let n = self.n;
        match self.kind {
            BackendKind::Classical => n,
            BackendKind::SpinFactor | BackendKind::LpQubit => n + 1,
            BackendKind::SymMatrices => n * (n + 1) / 2,
            BackendKind::HermMatrices => n * n,
        }
    }

    /// Maximum cardinality of an orthogonal family of atoms.
    pub fn info_capacity(&self) -> usize {
        match self.kind {
            BackendKind::Classical | BackendKind::SymMatrices | BackendKind::HermMatrices => self.n,
            BackendKind::SpinFactor | BackendKind::LpQubit => 2,
        }
    }

    pub fn symmetric_tp(&self) -> bool {
        match self.kind {
            BackendKind::LpQubit => self.p == Some(2.0),
            _ => true,
        }
    }

    pub fn has_inner_product(&self) -> bool {
        self.symmetric_tp()
    }

    /// Euclidean Jordan algebra: every backend except `lpq` with `p != 2`.
    pub fn is_jordan(&self) -> bool {
        self.symmetric_tp()
    }

    pub fn check_dim<T: Scalar>(&self, a: &Element<T>) -> Result<()> {
        let expected = self.ambient_dim();
        if a.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: a.len() });
        }
        Ok(())
    }

    /// Validates and wraps raw coordinates as an element of this model.
    pub fn element<T: Scalar>(&self, coords: Vec<T>) -> Result<Element<T>> {
        let a = Element::new(coords)?;
        self.check_dim(&a)?;
        Ok(a)
    }
}

impl fmt::Display for ModelDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            Some(p) => write!(f, "{}:{}:{}", self.kind.key(), self.n, p),
            None => write!(f, "{}:{}", self.kind.key(), self.n),
        }
    }
}

/// Parses `kind:n[:p]`, e.g. `herm:3` or `lpq:2:3`.
impl FromStr for ModelDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(Error::Parse(format!("model spec `{s}` is not kind:n[:p]")));
        }
        let kind = BackendKind::from_key(parts[0])?;
        let n = parts[1].parse::<usize>().map_err(|e| Error::Parse(format!("bad dimension `{}`: {e}", parts[1])))?;
        let p = parts
            .get(2)
            .map(|p| p.parse::<f64>().map_err(|e| Error::Parse(format!("bad exponent `{p}`: {e}"))))
            .transpose()?;
        Self::new(kind, n, p)
    }
}
