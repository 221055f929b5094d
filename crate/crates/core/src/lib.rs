//! Exact computation of Hochschild homology and cohomology for differential
//! operator rings `E = A #_f U(g)`: crossed products of an algebra `A` by the
//! enveloping algebra of a Lie algebra `g`, twisted by a two-cocycle `f`.
//!
//! The crate builds the small (co)chain complexes attached to such a ring,
//! computes Betti numbers with exact linear algebra, evaluates cup and cap
//! products on the small complexes, and cross-validates everything against
//! comparison maps into the normalized bar complex plus independent
//! Chevalley-Eilenberg and bar-complex oracles.

pub mod data;
pub mod element;
pub mod linalg;
pub mod module;
pub mod oracles;
pub mod presets;
pub mod products;
pub mod scalar;
pub mod betti;
pub mod comparison;
pub mod complexes;
pub mod symmetric;
pub mod validate;

pub use betti::{ComplexAssembly, TruncationReport};
pub use complexes::{Chain, Cochain};
pub use data::RingData;
pub use element::{ABasisId, Element, PbwMonomial};
pub use linalg::{SparseMatrix, SparseVector};
pub use module::{MValue, ModuleCtx, ModuleData};
pub use scalar::{FieldKind, Scalar};
pub use validate::ValidationReport;
