//! Differential geometry of quaternion-valued curves: quaternion algebra in
//! Cartesian, polar, and symplectic form; sampled-curve calculus (derivatives,
//! arc length, reparametrization); Frenet-type curvature extraction; curve
//! reconstruction from curvature data; and evolute/evolvent constructions.

pub mod curve;
pub mod error;
pub mod evolve;
pub mod frenet;
pub mod numeric;
mod parallel;
pub mod quat;
pub mod reconstruct;

pub use curve::CurveSamples;
pub use error::{Error, Result};
pub use evolve::{
    evolute, evolute_curvature_relation, evolute_curvature_relation_symplectic,
    evolute_of_evolvent_roundtrip, evolute_symplectic, evolute_tangent_check, evolvent,
    evolvent_curvature, CurvatureRelationReport, EvoluteResult, EvolventCurvatureReport,
    RoundTripReport, TangentReport,
};
pub use frenet::{
    curvature_cartesian, curvature_matrix, curvature_symplectic, frenet_matrix_apply,
    normal_frame, symplectic_matrix_apply, CurvatureProfile, SymplecticCurvatureProfile,
};
pub use reconstruct::{
    reconstruct_closed_form, reconstruct_ode, reconstruct_symplectic, uniqueness_check,
    Perturbation, ReconstructionSpec, UniquenessReport,
};
pub use quat::{
    from_polar, from_symplectic, from_symplectic_polar, is_orthogonal, is_parallel, mul,
    polar_unit_power, scalar_product, symplectic_unit_power, to_polar, to_symplectic,
    to_symplectic_polar, PolarForm, Quaternion, SymplecticForm, SymplecticPolarForm, Tolerance,
};
