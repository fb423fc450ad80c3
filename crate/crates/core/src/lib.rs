//! Exact construction and verification of q-analog Euler and Bernoulli
//! number families, their polynomial versions, p-adic q-integral Riemann
//! sums, Dirichlet-character generalizations, and the interpolating q-zeta
//! and l-series on the complex plane.
//!
//! All symbolic work happens in the rational function field Q(q) (extended
//! by the formal constant L = (q-1)/log q where needed), so identity checks
//! are exact: a verified identity reduces to the canonical zero.

pub mod error;
pub mod exactq;
pub mod analytic;
pub mod characters;
pub mod identities;
pub mod padic;
pub mod polynomials;
pub mod sequences;

pub use error::{Error, Result};
pub use exactq::{BigRat, CycloElem, LExt, QPoly, QRat};
pub use polynomials::XPoly;
pub use sequences::FamilyTag;
