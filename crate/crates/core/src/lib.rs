//! Range longest-increasing-subsequence queries.
//!
//! Given a sequence `a_1..a_n` mapped to points `(i, a_i)`, and a batch of
//! axis-aligned query ranges, report for every range the longest increasing
//! subsequence of the points inside it. Colored instances ask for the longest
//! *monochromatic* increasing subsequence instead.
//!
//! Three techniques are combined by [`solver`]:
//!
//! * [`small_lis`]: a deterministic divide and conquer over the index range
//!   storing lowest-peak / highest-base tables; exact whenever the answer has
//!   length at most `tau`.
//! * [`large_lis`]: a random sample of stitching elements with restricted LIS
//!   weights per pivot; exact with high probability whenever the answer has
//!   length at least `tau`.
//! * [`light_colors`]: every possible monochromatic answer of a light color
//!   encoded as a weighted rectangle; exact for colors with at most `delta`
//!   points.
//!
//! [`oracle`] holds the brute-force reference used for verification.

pub mod cli;
pub mod error;
pub mod geom;
pub mod instance;
pub mod large_lis;
pub mod light_colors;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod small_lis;
pub mod solver;

pub use error::{Error, Result};
pub use instance::{
    classic_lis, validate_instance, ColorId, ColorLabel, Instance, LisAnswer, Point, PointClass,
    Query, RankBox, TieMode,
};
pub use solver::{Problem, SolverConfig, Techniques};
