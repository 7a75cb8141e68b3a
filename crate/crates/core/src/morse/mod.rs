//! Sublinear gauges and the finite-window Morse analysis built on them.

mod contraction;
mod excursion;
mod kappa;
mod path;

pub use contraction::{ContractionProfile, DivergenceReport, ProfileWindow, SampleSpec};
pub use excursion::{
    grows_with_window, ChainEntry, ChainStep, ExcursionChain, ExcursionSearch, ExcursionVerdict, LocalityReport,
    TrendPoint,
};
pub use kappa::{
    sublinear_constants, validate_kappa, KappaProperty, KappaReport, KappaViolation, SublinearFunction,
    DEFAULT_HORIZON, DEFAULT_TOLERANCE,
};
pub use path::{DiscretePath, FirstCrossing};
