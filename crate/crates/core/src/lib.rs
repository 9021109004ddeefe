//! Exact computations with Lie conformal superalgebras: brackets, axiom
//! checks, centers, centroids, biderivations, commuting maps and current
//! algebras, all over ℚ.
//!
//! Spectral parameters are formal variables of [`poly::SPoly`]: `d` is the
//! derivation ∂, `x` is λ, and `y`, `z`, `w` serve as μ, γ, η.

pub mod algebra;
pub mod builtins;
pub mod current;
pub mod element;
pub mod error;
pub mod linsolve;
pub mod maps;
pub mod poly;
pub mod report;
pub mod solvers;
mod system;
pub mod verify;

pub use algebra::{LcsAlgebra, ModuleSpace, Perfectness};
pub use current::{lift_to_current, tensor_current, CommutativeAlgebra};
pub use element::{ConformalElement, Parity};
pub use error::{Error, Result};
pub use maps::{BilinearConfMap, Convention, LinearConfMap};
pub use poly::{Rat, SPoly, Var};
pub use report::{AxiomReport, Status, VerifierReport};
pub use solvers::Bounds;
