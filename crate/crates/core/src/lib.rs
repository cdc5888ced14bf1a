//! Combinatorial computations with Leavitt path algebras of finite digraphs.

pub mod digraph;
pub mod error;
pub mod field;
pub mod ideals;
pub mod io;
pub mod ktheory;
pub mod limits;
pub mod quotients;

pub use error::{Error, ErrorCategory, Result};
pub use field::{FieldSpec, FieldValue, LaurentElement, Polynomial, RootMultiset};
pub use digraph::{AdmissiblePair, Digraph, DigraphBuilder, GeometricCycle, Multiplicity, VertexId, VertexSet};
pub use ideals::{IdealCycle, IdealPresentation};
pub use limits::Limits;
pub use ktheory::{GeneratorItem, MatrixDecomposition, MonoidElement, ProjectivePresentation};
pub use quotients::QuotientResult;
