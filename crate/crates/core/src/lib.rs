//! Exact enumeration of lattice walks on the half-line.
pub mod asymptotics;
pub mod closed_forms;
pub mod combinatorial_identities;
pub mod dfinite;
mod error;
pub mod exact_series;
pub mod guessing;
pub mod parse;
pub mod selfcheck;
pub mod walk_engine;

pub use asymptotics::{AsympExpansion, ConstantEstimate, Decimal};
pub use combinatorial_identities::Convergent;
pub use dfinite::{LinODE, PRec, Poly};
pub use error::{Error, Result};
pub use exact_series::{ExactRational, LaurentPoly, LaurentSeries, Series, SeriesError};
pub use guessing::{CertificateReport, GuessReport, TriPoly};
pub use walk_engine::{CountTable, StepSet};
