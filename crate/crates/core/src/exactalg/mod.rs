//! Exact arithmetic kernel: rationals, sparse polynomials in one, two and
//! four variables, rational functions compared by cross-multiplication,
//! truncated power series and exact interpolation in `N = q^n`.

mod interp;
pub mod json;
mod multi;
mod poly;
mod ratfunc;
mod series;
pub mod text;
mod univariate;
mod xq;

pub use interp::{interpolate_in_n, multiply_roots, root_product_over, trial_divide_numerator, NPoly2};
pub use multi::{MultiPoly, Var};
pub use poly::{rat, Exponent, Poly, Rational};
pub use ratfunc::{rational_equal, MultiRational, NRational, RationalFunction};
pub use series::{series_invert, QSeries, SeriesCoeff, XPoly};
pub use univariate::{qpochhammer, QPoly};
pub use xq::XQPoly;
