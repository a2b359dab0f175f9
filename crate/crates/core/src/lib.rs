//! Harmonic Bloch mappings on the unit disk.
//!
//! The crate evaluates Bloch-type seminorms of harmonic maps `f = h + conj(g)`,
//! provides the Möbius geometry of the disk, and runs seeded numerical
//! certification campaigns for pseudo-hyperbolic Lipschitz inequalities of the
//! weighted derivative functionals `(1 − |z|²)Λ_f(z)` and `(1 − |z|²)√J_f(z)`.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example <name>`.

pub mod analytic;
pub mod bounds;
pub mod cli;
pub mod disk;
pub mod error;
pub mod harmonic;
pub mod seminorms;
pub mod verify;

pub use analytic::{Analytic, AnalyticFunction, LogFixture, MobiusComposed, Polynomial};
pub use disk::{DiskPoint, MobiusTransform};
pub use error::{Error, Result};
pub use harmonic::{DerivativeBundle, HarmonicMap, MapSpec};
pub use seminorms::{SupConfig, SupEstimate};
