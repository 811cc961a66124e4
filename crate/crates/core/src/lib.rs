//! Constructive density in semigroups of 2x2 matrices and linear fractional
//! transformations.
//!
//! The toolkit synthesizes explicit generator words approximating target
//! transformations and matrices over named generator systems, decides
//! membership in semigroup and orbit closures through exact
//! characterizations, and provides the greedy base expansions and
//! Kronecker-type solvers the constructions run on.
//!
//! Data-parallel scans (ratio searches, independence certificates, orbit
//! grids) run on rayon when the default `parallel` feature is enabled and
//! fall back to identical sequential code without it.

pub mod diophantine;
pub mod error;
pub mod expansion;
pub mod json;
pub mod mat2;
pub mod orbits;
pub mod par;
pub mod scalar;
pub mod synthesis;
pub mod systems;
pub mod words;

pub use error::{Error, Result};
pub use mat2::{canonicalize, mat_distance, proj_distance, Mat2, Point, ProjectiveMap};
pub use scalar::{Coeff, FieldKind, FloatCoeff};
pub use synthesis::{ApproxReport, SynthesisBudget};
pub use words::{evaluate, evaluate_exact, parse_word, substitute, GeneratorSystem, Word};
