//! Exact enumeration of Semi-Goldilocks and Goldilocks threshold functions,
//! which count the chambers of the spaces of admissible weights for pointed
//! curves.
//!
//! A Boolean function `f` on `n` variables is a linear threshold function
//! (LTF) when some weights `w` and threshold `θ` give `f(x) = 1 ⇔ w·x > θ`.
//! It is Semi-Goldilocks when it is also positive (monotone) and small (every
//! singleton is false), and Goldilocks when it is in addition ample (no
//! point and its negation are both false).
//!
//! ```
//! use goldilocks::{classify, BooleanFunction};
//!
//! let maj3: BooleanFunction = "00010111".parse().unwrap();
//! let report = classify::classify(&maj3);
//! assert!(report.goldilocks);
//! ```
//!
//! Chamber counts for a given number of points:
//!
//! ```
//! use goldilocks::chambers::count_chambers;
//! use goldilocks::enumerate::{Engine, Genus};
//!
//! let row = count_chambers(4, Genus::Zero, Engine::Both).unwrap();
//! assert_eq!((row.count, row.orbit_count), (27, 5));
//! ```
//!
//! All arithmetic on weights is exact: the LP runs over integers with a
//! rational interface, so points lying exactly on a wall are never
//! misclassified.

pub mod boolfn;
pub mod chambers;
pub mod chow;
pub mod classify;
pub mod config;
pub mod enumerate;
pub mod error;
pub mod lp;
pub mod ltf;
pub mod oracle;
pub mod selftest;

pub use boolfn::{BooleanFunction, Permutation, Point};
pub use chow::{chow, ChowParameters};
pub use enumerate::{Engine, Genus};
pub use error::{Error, Result};
pub use ltf::{Constraints, Realization};
