//! Exact combinatorics of finite subsets of `Z^n`.

mod cells;
mod dimension;
mod point_set;
mod verify;

pub use cells::{
    box_content, cconv_contains, cell_content, cell_content_terms, integer_boxes_in,
    integer_cells_in_cconv, ContentTerm, IntegerBox, IntegerCell,
};
pub use dimension::{
    natarajan_dimension, natarajan_witness, shattered_projections, shattering_dimension_discrete,
    vc_dimension, ShatterWitness,
};
pub use point_set::{attained_values, project, slice, IntegerPointSet};
pub use verify::{binomial, verify_discrete, DiscreteClaim, DiscreteParams};
