//! Monodromy factorizations of Lefschetz fibrations: Dehn twist words, their
//! action on homology and on the fundamental group, the invariants of the
//! total space, factorization surgery, and the genus-2 `(n, s)` feasibility
//! analysis.

pub mod catalog;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod homrep;
pub mod intlinalg;
pub mod invariants;
pub mod monodromy;
pub mod pi1;
pub mod surface;

pub use error::{Error, Result};
pub use homrep::SpMatrix;
pub use intlinalg::{AbelianGroupReport, IntMatrix, SnfResult};
pub use monodromy::{Curve, Factorization, LanternInstance, Level, NSType};
pub use pi1::{FreeWord, TwistAutomorphism};
pub use surface::{HomologyClass, StdCurve, Twist};
