//! Exact arithmetic: F_q, A = F_q[θ], F_q[t], A[t] and k[t], k = F_q(θ),
//! truncated Laurent series in 1/θ, and linear algebra over F_q.

pub mod bipoly;
pub mod field;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod ratfrac;
pub mod reconstruct;

pub use bipoly::{BiPoly, Coeff};
pub use field::{Elem, Field, FieldSpec, Scalar};
pub use laurent::LaurentNumber;
pub use poly::{Poly, TPoly, ThetaPoly, Theta, T};
pub use ratfrac::RatFrac;
pub use linalg::{IncrementalEchelon, Insertion};
pub use reconstruct::rational_reconstruct;
