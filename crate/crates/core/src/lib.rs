//! Higher Auslander–Reiten theory for bound quiver algebras.
//!
//! Modules over `kQ/I` are quiver representations; all questions are reduced
//! to exact linear algebra over a prime field or the rationals.

pub mod error;
pub mod field;
pub mod linalg;
pub mod par;
mod poly;
pub mod presentation;
pub mod reps;
pub mod homology;
pub mod dexact;
pub mod fixtures;
pub mod approx;
pub mod artheory;
pub mod io;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::Matrix;
pub use presentation::{build_algebra, injective_at, projective_at, Algebra, Quiver, Relation};
pub use reps::{ModMorphism, Representation};
