//! Exact arithmetic engine for identities among Fibonacci, Lucas, and general
//! second-order Lucas-pair sequences.
//!
//! The crate is organised around a small number of cooperating pieces:
//!
//! * [`seq`] — arbitrary-precision evaluation of F, L, and the generalised
//!   `u`/`w` pairs attached to parameters `(p, q)` with `q != 0`, at any
//!   integer index.
//! * [`poly`] — dense rational polynomials, elements of the quadratic field
//!   `Q(sqrt(D))`, and linear recurrences with constant coefficients.
//! * [`charpoly`] — generalised binomial coefficients and the characteristic
//!   polynomials annihilating `n`-th powers of `u`-sequences, built by two
//!   independent routes that are kept separate on purpose so they can check
//!   each other.
//! * [`identity`] — a small expression language for candidate identities, a
//!   finite-check prover (agree on enough consecutive points and you agree
//!   everywhere), and an independent closed-form prover that reduces both
//!   sides to an exponential normal form.
//! * [`trigraph`] — vector sequences generated by strip-shaped trivalent
//!   graphs, recognisers for Fibonacci/Lucas structure in their entries, and
//!   deterministic ASCII/SVG renderings.
//! * [`galois`] — discriminant classification and the family of square
//!   identities `w_n^2 - 4q^n = u_n^2 (p^2 - 4q)` with its corollaries.
//!
//! All arithmetic is exact; nothing in this crate rounds.

pub mod charpoly;
pub mod error;
pub mod galois;
pub mod identity;
pub mod poly;
pub mod scalar;
pub mod seq;
pub mod trigraph;

pub use error::{Error, ParseError};
pub use scalar::{Int, Rat};
pub use seq::{fib, lucas, lucas_u, lucas_w, LucasParams, SeqKind};
