//! Exact polynomial arithmetic over Q(i), its complex float mirror, and
//! truncated Laurent series with polynomial coefficients.

pub mod field;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod series;

pub use field::{rationalize, Complex64, Field, FromQi, Qi};
pub use parse::parse_poly;
pub use poly::{names, JsonCoeff, MultiPoly, PolyJson};
pub use roots::{horner, poly_roots};
pub use series::{substitute_series, Series};
