//! Brute-force homology of Vietoris-Rips complexes over the two-element
//! field, used to check the predictions made from winding fractions.

mod bottleneck;
mod complex;
mod reduce;

pub use bottleneck::{bottleneck, DiagramPoint};
pub use complex::{vr_complex, vr_complex_with_budget, DistanceMatrix, FlagComplex, DEFAULT_SIMPLEX_BUDGET};
pub use reduce::{betti, two_scale_rank, two_scale_rank_with_budget};
