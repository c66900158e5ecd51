//! Exact Morse/Kirwan stratification of the moment-map normsquare for
//! linearized torus actions on projective space.
//!
//! The crate computes the index set of strata, Betti numbers of torus quotients
//! through the equivariantly perfect recursion, symplectic quotients of unstable
//! strata at shifted levels `(1+ε)β` with their exact wall structure, and the
//! reflection-group sweep cones used for implosion.

pub mod action;
pub mod cohomology;
pub mod descent;
pub mod error;
pub mod geometry;
pub mod implosion;
pub mod quotient;
pub mod rational;
pub mod strata;

pub use action::{
    chamber_membership, load_action, moment_value, serialize_action, PointSample, RootDatum,
    SupportSet, WeightSystem,
};
pub use error::*;
pub use geometry::{
    affine_rank, hull_position_of_origin, min_norm_point, ray_hull_window, HullPosition,
    InnerProduct, Interval,
};
pub use rational::{format_rational, parse_rational, RationalVector, Q};
pub use cohomology::{
    perfection_certificate, projective_space_series, quotient_betti, semistable_series,
    PerfectionCertificate, PoincareSeries, Polynomial,
};
pub use descent::{simulate_descent, DescentOutcome};
pub use implosion::{
    brute_force_sweep, dominant_representative, face_data, in_sweep_cone, FaceData,
    ParabolicData,
};
pub use quotient::{
    epsilon_window, quotient_family, unstable_quotient, EpsilonWindow, QuotientChamber,
    QuotientReport,
};
pub use strata::{
    classify_support, index_set, strata_partition, stratum_codim, StabilityClass, StratumIndex,
};
