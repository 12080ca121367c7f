//! Bohr-Rogosinski radius solvers for Ma-Minda type function classes.
//!
//! The crate builds extremal power series for a generating function `ψ`,
//! sums majorant and weighted coefficient series with certified tails, and
//! finds the minimal root of each class's radius equation. The [`oracle`]
//! module checks the underlying inequalities by brute force on random
//! subordinate functions.

pub mod bounds;
pub mod extremal;
pub mod oracle;
pub mod psi;
pub mod quad;
pub mod radius;
pub mod series;
pub mod weights;

pub use bounds::CoeffBoundProvider;
pub use psi::PsiModel;
pub use radius::{ClassTag, Exponent, NumericConfig, RadiusProblem, RadiusResult};
pub use series::{Series, C64};
pub use weights::WeightSequence;
