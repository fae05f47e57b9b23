//! Explicit curve families and surfaces.

mod cylinder;
mod families;
mod necks;
mod registry;

pub use cylinder::{
    bounding_box, cyl2v_halfplane_copy, cyl2v_inversion_residual, cyl2v_min_denominator, cyl2v_to_polar_map,
    kappa_prime_formula, polar_cos5, two_vertex_cylinder_curve, DEFAULT_A, POLAR_PERIOD,
};
pub use families::{
    embedded_pair_flat, embedded_pair_hyperbolic, flat_glide_perturbation, flat_translation_perturbation,
    horocycle_perturbation, hyp_glide_lift, hyp_translation_lift, hyperbolic_glide_perturbation,
    hyperbolic_translation_perturbation, EmbeddedPair,
};
pub use necks::{
    constant_curvature_profile, constant_curvature_profile_on, literal_profile, neck_limit_constant,
    neck_perturbation, neck_taylor_defect, DEFAULT_HALF_WIDTH,
};
pub use registry::{build_family, Family, FamilyCurve, FamilyParams, FAMILIES};
