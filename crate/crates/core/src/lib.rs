//! Exact-arithmetic toolkit for the centrally extended conformal Galilei
//! algebras g_l in one spatial dimension, where l is an odd positive
//! half-integer.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere. The main layers, bottom up:
//!
//! - [`exact`]: rationals, sparse two-variable polynomials in (delta, mu),
//!   truncated power series, fraction-free determinants, rational kernels.
//! - [`algebra`]: generators, structure constants, the grading
//!   anti-automorphism omega, triangular decomposition.
//! - [`pbw`]: normal ordering in the universal enveloping algebra and
//!   closed forms for commutators with powers of a generator.
//! - [`verma`]: highest-weight modules, level bases, generator actions.
//! - [`singular`]: singular vectors, kernels of the raising action,
//!   quotient modules, irreducibility classification.
//! - [`shapovalov`]: the contravariant form, Kac matrices and the exact
//!   factorization of their determinants.
//! - [`partitions`]: the restricted partition counts that control level
//!   dimensions and determinant exponents.

pub mod algebra;
pub mod exact;
pub mod json;
pub mod partitions;
pub mod pbw;
pub mod shapovalov;
pub mod singular;
pub mod verma;
