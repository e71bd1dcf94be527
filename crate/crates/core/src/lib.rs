//! Angular-momentum / angle uncertainty relations for rotating systems.

pub mod engine;
pub mod error;
pub mod fourier;
pub mod moments;
pub mod numerics;
pub mod observables;
pub mod oracle;
mod poly;
pub mod relations;
pub mod specio;
pub mod states;

pub use engine::{Engine, EngineSettings};
pub use error::{Error, Result};
pub use observables::{ObservableKind, Provenance};
pub use relations::{evaluate, RelationId, RelationParams, RelationReport, Verdict};
pub use states::{Family, State};
pub use specio::{parse, SpecDocument};

pub use num_complex::Complex64;
