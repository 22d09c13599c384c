//! Least Euclidean distortion of distance-regular graphs.
//!
//! Everything starts from an [`IntersectionArray`]. From it the crate derives
//! the spectrum and cosine sequences ([`spectrum`]), the distortion of the
//! canonical spectral embedding together with the family of LLR-type lower
//! bounds ([`distortion`]), per-instance conjecture verdicts
//! ([`conjectures`]), closed forms for the known families ([`families`]) and
//! brute-force checks on small explicit graphs ([`oracle`]).
//!
//! ```
//! use drg_distortion::{analyze, IntersectionArray};
//!
//! let golay: IntersectionArray = "{22,21,20,3,2,1;1,2,3,20,21,22}".parse().unwrap();
//! let report = analyze(&golay).unwrap();
//! assert!(report.certified);
//! assert_eq!(report.best_r, 5);
//! assert!((report.c2_sq.point().unwrap() - 35.0 / 3.0).abs() < 1e-9);
//! ```

pub mod cli;
pub mod conjectures;
pub mod distortion;
mod error;
pub mod families;
pub mod intersection_array;
pub mod oracle;
pub mod report;
pub mod spectrum;
pub mod tables;
pub mod tol;

pub use conjectures::{check_conjecture1, check_conjecture2, check_corpus, ConjectureVerdict};
pub use distortion::{analyze, C2Value, DistortionReport};
pub use error::{Error, Result};
pub use intersection_array::{FeasibilityReport, IntersectionArray};
pub use spectrum::{spectrum, Spectrum};
