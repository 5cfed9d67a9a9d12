//! Exact twisted differential calculus on universal enveloping algebras.
//!
//! Given structure constants of a finite-dimensional Lie algebra and a matrix
//! `φ` of truncated power series close to the identity, this crate realizes
//! `U(𝔤)` inside the completed Weyl algebra (`x̂ᵢ ↦ Σⱼ xⱼ φʲᵢ`), builds the
//! coalgebra isomorphism `ξ : S(𝔤) → U(𝔤)` by vacuum projection, the deformed
//! derivatives `∂̂ⁱ = ξ ∘ ∂ⁱ ∘ ξ⁻¹`, the twisted exterior derivative
//! `d̂ = Σⱼ dxⱼ ∂̂ʲ` on `Λ*(𝔤) ⊗ U(𝔤)`, and the transported star product, and
//! verifies their identities exactly up to a chosen truncation order.
//!
//! Indices are 0-based in the API and 1-based in rendered output.

pub mod calculus;
pub mod envelope;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod multi_index;
pub mod phi;
pub mod rational;
pub mod series;
pub mod terms;
pub mod weyl;

pub use calculus::{CheckReport, RealizationContext};
pub use envelope::{SPoly, UElement, UFormElement, XiTables};
pub use error::{AlgebraError, Result};
pub use exec::Exec;
pub use exterior::{BasisLabel, ExteriorMonomial};
pub use lie::{OrderingSpec, StructureConstants};
pub use matrix::SeriesMatrix;
pub use multi_index::MultiIndex;
pub use rational::Rational;
pub use series::PowerSeries;
pub use weyl::{ClassicalForm, WeylFormElement};
