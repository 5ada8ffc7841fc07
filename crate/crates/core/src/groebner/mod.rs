//! Gröbner bases and the ideal operations derived from elimination.

mod buchberger;
mod ideal;
mod reduce;

pub use buchberger::{buchberger, buchberger_with_cofactors, GroebnerBasis};
pub use ideal::{
    eliminate, embed, extend_ring, hom_preimage, ideal_member, idealizer_preimage, intersect,
    is_zero_dimensional, krull_dimension, multi_intersect, quotient, ring_hom_kernel, saturate,
    solve_linear, Ideal,
};
pub use reduce::{normal_form, reduce, ReductionResult};
