use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is constant, it has no roots")]
    DegreeZero,

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("inexact division: remainder {remainder:e} exceeds {bound:e}")]
    InexactDivision { remainder: f64, bound: f64 },

    #[error("matrix is not in SL(2): |det - 1| = {0:e}")]
    NotUnimodular(f64),

    #[error("index {0} out of range")]
    IndexOutOfRange(i64),

    #[error("m and n must be nonzero")]
    ZeroParameter,

    #[error("eigenvalue s is (numerically) zero")]
    SingularS,

    #[error("|m|, |n| must be at most {max}, got m={m}, n={n}")]
    ParameterTooLarge { m: i64, n: i64, max: i64 },

    #[error("degenerate denominator in closed form ({0:e})")]
    DegenerateDenominator(f64),

    #[error("longitude image is not upper triangular: |(2,1) entry| = {0:e}")]
    NotTriangular(f64),

    #[error("meridian trace x = 2: torsion of the knot exterior is not defined")]
    ParabolicMeridian,

    #[error("meridian trace x lies in {{0, 2}}: surgery torsion formula does not apply")]
    MeridianTraceDegenerate,

    #[error("finite-difference Jacobian is singular")]
    JacobianSingular,

    #[error("invalid surgery slope {p}/{q}: need gcd(p, q) = 1")]
    InvalidSlope { p: i64, q: i64 },

    #[error("not a nonabelian representation: {0}")]
    InvalidRep(String),

    #[error("dual-path disagreement: {0}")]
    DualPathMismatch(String),
}
