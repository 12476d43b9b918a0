//! Statistics of arithmetic class functions over very short intervals
//! `I(f) = { f(x) + a : a ∈ F_q }` of polynomials over finite fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`finite_field`]: `F_p` and `F_{p^l}` arithmetic.
//! * [`polynomial`]: `F_q[x]` arithmetic, factorization, resultants.
//! * [`class_functions`]: cycle types and class functions on `S_d`.
//! * [`morse_galois`]: critical values, the Morse test, bad shifts and the
//!   Möbius cancellation classifier.
//! * [`interval_lab`]: exact interval sums and the experiment reports.
//!
//! Class-function values are generic over [`Scalar`]; the aliases below fix
//! the exact rational instantiation used throughout the tools.

pub mod class_functions;
pub mod finite_field;
pub mod interval_lab;
pub mod morse_galois;
pub mod polynomial;
pub mod scalar;

pub use class_functions::{BuiltinKind, ClassFnError, ClassFunction, CycleType};
pub use finite_field::{make_extension, make_prime_field, FieldCtx, FieldElement, FieldError};
pub use polynomial::{FactorizationResult, Poly, PolyError};
pub use scalar::Scalar;

/// Exact rational used for class-function values and interval sums.
pub type Rational = num_rational::Ratio<i128>;

pub type ExactClassFunction = ClassFunction<Rational>;
pub type FloatClassFunction = ClassFunction<f64>;
pub type ExactReport = interval_lab::ExperimentReport<Rational>;
pub type FloatReport = interval_lab::ExperimentReport<f64>;
