//! Sparse implicitization by interpolation.
//!
//! A parametric hypersurface `x_i = f_i(t)/g_i(t)` is implicitized by
//! evaluating the candidate monomials of a predicted support at sample points
//! and reading the implicit polynomial off the kernel of the resulting
//! interpolation matrix. The same matrix, with one symbolic row, answers
//! membership, sidedness and ray-shooting queries without expanding the
//! implicit equation.

pub mod error;
pub mod implicit;
pub mod interp;
pub mod param;
pub mod poly;
pub mod predicates;
pub mod support;
pub mod upoly;

pub use error::{Error, Result};
pub use implicit::{implicitize, ImplicitPolynomial, ImplicitizeConfig, Implicitization};
pub use interp::{FrozenMx, InterpolationMatrix, KernelBasis, Mode};
pub use param::{eval_map, parse_map, ParametricMap, RationalFunction};
pub use poly::MultiPoly;
pub use predicates::{Ray, SurfaceHandle};
pub use support::{LatticePolytope, SupportSet};
