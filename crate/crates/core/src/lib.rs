//! Finite-dimensional order unit spaces with transition probabilities.
//!
//! The crate provides spectral backends (classical, spin factor, real
//! symmetric and complex Hermitian matrices, and the non-symmetric `l^p`
//! generalized qubit), the quantum logic of their unit intervals,
//! transition probabilities and the inner product they induce, Moreau
//! decompositions in self-dual cones, and the extreme-point function `e_ω`
//! on polytope state spaces.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases fix the common `f64` instantiation.

pub mod convexgeom;
pub mod element;
pub mod error;
pub mod linalg;
pub mod logic;
pub mod lp;
pub mod model;
pub mod models;
pub mod nnls;
pub mod points;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod selfdual;
pub mod space;
pub mod transition;

pub use convexgeom::{AffineFunction, EOmegaReport, PolytopeStateSpace};
pub use element::{Element, Tolerance};
pub use error::{Error, Result};
pub use logic::LogicElement;
pub use model::{BackendKind, ModelDescriptor};
pub use models::{AtomParam, Shape, SpectralForm, SpectralPair};
pub use report::{Check, Report};
pub use scalar::Scalar;
pub use selfdual::{GeneratedCone, MoreauPair, SelfDualCone, SplitOracle};
pub use transition::{State, TpMatrix};

pub type Element64 = Element<f64>;
pub type Tolerance64 = Tolerance<f64>;
pub type SpectralForm64 = SpectralForm<f64>;
pub type AtomParam64 = AtomParam<f64>;
pub type SelfDualCone64 = SelfDualCone<f64>;
pub type PolytopeStateSpace64 = PolytopeStateSpace<f64>;
pub type TpMatrix64 = TpMatrix<f64>;
