//! Steiner triple systems with Veblen points, built as Schreier extensions
//! of Steiner loops.

pub mod automorphism;
pub mod catalog;
pub mod checkpoint;
pub mod error;
pub mod extension;
pub mod factor;
pub mod format;
pub mod gf2;
pub mod iso;
pub mod loops;
pub mod orbits;
pub mod pasch;
pub mod sts;

pub use error::{Error, Result};
pub use extension::{classify, ClassificationReport, ClassifyOptions, ExtensionSpec};
pub use factor::{CoboundarySpace, FactorSystem};
pub use loops::SteinerLoop;
pub use pasch::PaschConfiguration;
pub use sts::SteinerTripleSystem;
