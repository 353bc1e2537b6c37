//! Exact symbolic calculus for pseudodifferential symbols on the
//! supercircle `S^{1|2}`, the contact superconformal algebras they carry,
//! and the one-parameter family of 17-dimensional exceptional Lie
//! superalgebras realized inside them.
//!
//! Everything is computed exactly over rational functions in the formal
//! parameters (`alpha`, `h`, `mu`, `sigma1..3`) extended by `w` with
//! `w^2 = -2`; verification suites check the algebraic identities
//! symbolically, not numerically.

pub mod coeff;
pub mod contact;
pub mod gamma;
pub mod grassmann;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod psymbols;
pub mod scalar;
pub mod suites;
pub mod weyl;

pub use coeff::{CoeffError, Coefficient};
pub use poly::{Param, Poly};
pub use scalar::Scalar;

/// Maps `f` over `items`, in parallel when the `parallel` feature is
/// enabled. Output order always follows input order.
#[cfg(feature = "parallel")]
pub fn maybe_par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn maybe_par_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Always-sequential twin of [`maybe_par_map`]; the benchmarks compare the
/// two on the same grids.
pub fn seq_map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
