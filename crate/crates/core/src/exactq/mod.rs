//! Exact arithmetic kernel: big rationals, dense polynomials in q, the
//! reduced rational-function field Q(q), the L-extension module housing
//! (q-1)/log q, and cyclotomic coordinate vectors.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so the whole kernel is safe to share across threads.

mod bigrat;
mod cyclo;
mod gauss;
mod lext;
mod modgcd;
mod qpoly;
mod qrat;

pub use bigrat::{binomial, binomial_rat, format_rat, int_valuation, parse_rat, rat, rat_int, BigRat};
pub use cyclo::{cyclotomic_polynomial, euler_phi, CycloElem};
pub use gauss::GaussRat;
pub use lext::{l_value, LExt};
pub use qpoly::QPoly;
pub use qrat::QRat;
