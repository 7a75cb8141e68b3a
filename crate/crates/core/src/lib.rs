//! Exact combinatorics of finite CAT(0) cube complexes.
//!
//! A complex is stored as its wall-labeled 1-skeleton (a median graph) together
//! with a basepoint. Every vertex carries its orientation vector (which side of
//! each wall it lies on), so distances, medians, intervals and hulls reduce to
//! bitset arithmetic.
//!
//! The crate is organised in layers:
//!
//! * [`complex`]: construction, validation, pocset realization and the JSON format;
//! * [`median`]: medians, intervals, joins, hulls, convexity and gate maps;
//! * [`separation`]: crossing, facing triples, chains and well-separation;
//! * [`morse`]: sublinear gauges, excursion chains and contraction profiles;
//! * [`gallery`]: deterministic generators, including the tree of flats of `Z * Z^2`.

pub mod complex;
pub mod error;
pub mod gallery;
pub mod geodesics;
pub mod median;
pub mod morse;
pub mod report;
pub mod separation;

pub use complex::{
    CubeComplex, Edge, HalfSpaceSystem, Hyperplane, Side, ValidationOptions, ValidationReport,
    Vertex, VertexSet, Wall, WallSet,
};
pub use error::{Error, Result};
pub use median::{Certificate, ConvexSubset};
pub use morse::{DiscretePath, ExcursionChain, SublinearFunction};
pub use report::{AnalysisReport, Exactness};
