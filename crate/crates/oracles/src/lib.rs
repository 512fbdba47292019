//! Brute-force reference implementations written directly from the
//! definitions. Nothing here shares code with `intcells-core`; the point is
//! to disagree loudly when either side is wrong.

pub mod cconv;
pub mod cells;
pub mod lattice;
pub mod shatter;
pub mod volume;

pub use cconv::oracle_cconv;
pub use cells::{bounding_box_f64, exhaustive_cell_count, hull_facets, BruteHull};
pub use lattice::{oracle_box_count, oracle_cconv_cells, oracle_natarajan};
pub use shatter::{grid_shatter_search, GridShatter};
pub use volume::{mc_volume, McEstimate, DEFAULT_SAMPLES, DEFAULT_SEED};

pub type Q = num_rational::BigRational;
