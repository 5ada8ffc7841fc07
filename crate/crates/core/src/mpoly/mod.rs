//! Sparse multivariate polynomials, monomial orders and structural operations.

mod factor;
mod gcd;
mod ops;
mod order;
mod parse;
mod poly;
mod univariate;

pub use factor::{
    factor_univariate, factor_univariate_seeded, factor_upoly, is_irreducible, split_squarefree,
    squarefree_decomposition, Factors,
};
#[allow(unused_imports)]
pub(crate) use gcd::{coeffs_in, from_coeffs};
pub use gcd::{gcd, gcd_many, lcm};
pub use ops::{
    content, homogenize, kronecker, kronecker_inverse, partial_derivative, prepend_var,
    primitive_part, squarefree_check,
};
pub use order::{compare_monomials, CompiledOrder, MonomialOrder};
pub use parse::{parse_poly, parse_scalar};
pub use poly::{mono_deg, mono_div, mono_divides, mono_lcm, mono_mul, MPoly, Mono, PolyRing, Ring};
pub use univariate::{discriminant, resultant, UPoly};
