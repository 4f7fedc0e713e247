use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("r_3 = 0: no cyclic regime")]
    NoCyclicRegime,

    #[error("cyclicity threshold exceeded: r = {r} >= r_{n} = {rn}")]
    CyclicityThresholdExceeded { n: usize, r: f64, rn: f64 },

    #[error("graph is not cyclic: violating triple ({0}, {1}, {2})")]
    NotCyclic(usize, usize, usize),

    #[error("inconsistent ball at vertex {vertex}: {detail}")]
    InconsistentBall { vertex: usize, detail: String },

    #[error("existence of ({}-)stars not guaranteed for n = {n}, l = {l} (need n >= 4l+2)", 2 * .l + 1)]
    ExistenceNotGuaranteed { n: usize, l: usize },

    #[error("no sign change of the star defect for n = {n}, l = {l} at basepoint {p}")]
    NoSignChange { n: usize, l: usize, p: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("monotonicity of the star side length failed for n = {n}, l = {l} (worst violation {worst:e})")]
    ConjectureViolated { n: usize, l: usize, worst: f64 },

    #[error("requires the monotonicity conjecture for n = {n}, l = {l}, which could not be validated")]
    RequiresConjecture { n: usize, l: usize },

    #[error("scale {r} is outside the cyclic regime (0, {rn})")]
    OutsideCyclicRegime { r: f64, rn: f64 },

    #[error("degenerate circumscription: star passes through a polygon vertex")]
    DegenerateCircumscription,

    #[error("scales ({r}, {r2}) are not inside one singular window: {detail}")]
    RegimeMismatch { r: f64, r2: f64, detail: String },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
