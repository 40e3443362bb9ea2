//! Whitehead's method for free groups.
//!
//! Words and tuples live in [`word`], automorphisms in [`automorphism`].
//! [`classic`] holds the deterministic descent algorithm and the orbit
//! search, [`gwa`] the genetic algorithm, [`sampling`] the random test
//! sets and [`experiments`] the measurement suite built on all of them.
//!
//! ```
//! use whitehead::{dwa_type2, WordTuple};
//!
//! let u = WordTuple::parse("abAB", 2).unwrap();
//! assert_eq!(dwa_type2(&u).unwrap().output.total_length(), 4);
//! ```

pub mod automorphism;
pub mod classic;
pub mod error;
pub mod experiments;
pub mod gwa;
pub mod sampling;
pub mod stats;
pub mod word;

pub use automorphism::{Action, Automorphism, Member, RestrictedAuto, Type1Auto, Type2Auto, WhiteheadAuto};
pub use classic::{dwa, dwa_type2, elr, is_minimal, min_length_oracle, orbit_min, same_orbit, Budget, SameOrbit};
pub use error::{Error, Result};
pub use gwa::{GwaConfig, GwaResult, Termination};
pub use word::{Letter, Word, WordTuple};

/// Correlation with `f64` values, as reported by the experiments.
pub type Correlation = stats::Correlation<f64>;
/// Summary with `f64` values.
pub type Summary = stats::Summary<f64>;
