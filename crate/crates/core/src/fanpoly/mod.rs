//! Augmented fans in the plane, support functions and their polygons.

pub mod fan;
pub mod invariants;
pub mod polygon;

pub use fan::{
    anticanonical_support, canonical_support, cone_linear_function, convexity_defects, is_fano,
    is_strictly_upper_convex, is_upper_convex, marked_points_in_convex_position, same_ray_set,
    AugmentedFan, SupportFunction,
};
pub use invariants::{
    anticanonical_polytope, barycenter, einstein_verdict, fan_from_polytope, fans_isomorphic, index,
    index_bound, index_witness, lattice_isomorphisms, lattice_points, minimal_labels,
    polytope_from_support, symmetry, volume, EinsteinVerdict, FanoReport, IndexWitness, Symmetry,
};
pub use polygon::{Point, Polygon, Polytope};
