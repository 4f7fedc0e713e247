//! Vietoris-Rips complexes of the regular polygon `P_n` inscribed in the
//! unit circle.
//!
//! Below the cyclicity threshold `r_n` every ball meets `P_n` in one arc,
//! so `VR(P_n; r)` and its finite subsamples are governed by a circle map
//! and its winding fraction. The crate computes that map ([`geometry`]),
//! homotopy types of finite cyclic graphs ([`cyclic`]), the inscribed star
//! thresholds where the type changes ([`stars`]), the resulting barcodes
//! ([`predictor`]), dense samples with a chosen number of periodic orbits
//! ([`sampler`]) and Gromov-Hausdorff bounds ([`gh`]). A brute-force
//! clique-complex homology engine ([`oracle`]) checks the predictions.

pub mod cyclic;
pub mod error;
pub mod geometry;
pub mod gh;
pub mod io;
pub mod oracle;
pub mod predictor;
pub mod sampler;
pub mod stars;

pub use cyclic::{Convention, FiniteCyclicGraph, Fraction, HomotopyType, OrbitReport, VertexClass};
pub use error::{Error, Result};
pub use geometry::{ball_arc, g_r, r_n, ArcInterval, Polygon, PolygonPoint};
pub use gh::{gh_report, GHReport};
pub use oracle::{betti, bottleneck, two_scale_rank, vr_complex, DistanceMatrix, FlagComplex};
pub use predictor::{Barcode, Interval, PolygonPredictor, Tail};
pub use sampler::{construct, density, SampleSpec};
pub use stars::{thresholds, Certification, StarSolution, Thresholds};
