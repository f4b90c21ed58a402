//! Symmetric divergence measures on the probability simplex and numeric
//! certification of the inequality chains relating them.
//!
//! The toolkit covers seven classical symmetric divergences (triangular
//! discrimination, Jensen-Shannon, Hellinger, d-divergence, J-divergence,
//! arithmetic-geometric mean divergence, symmetric chi-square), the two
//! one-parameter families that generalize them, the difference-of-divergence
//! measures built from the normalized chain
//!
//! ```text
//! Δ/4 ≤ I ≤ h ≤ 4d ≤ J/8 ≤ T ≤ Ψ/16,
//! ```
//!
//! and the machinery to check every published inequality chain, generator
//! ratio limit, and auxiliary-function non-negativity claim by dense numeric
//! scans instead of plots.
//!
//! Organization:
//! - [`distributions`]: validated points of the open simplex, sampling, file I/O
//! - [`generators`]: the convex generator families, Csiszár divergences,
//!   second-derivative ratio bounds
//! - [`measures`]: closed forms for the measures and the ζ/ξ families
//! - [`differences`]: difference measures, the chain registry, chain checking
//! - [`verification`]: auxiliary scalar functions, g-ratio limits, scans,
//!   counterexample search

pub mod differences;
pub mod distributions;
pub mod error;
pub mod generators;
pub mod measures;
mod numeric;
mod parallel;
pub mod verification;

pub use error::{Error, Result};
