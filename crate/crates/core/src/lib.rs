pub mod admissible;
pub mod affine_weyl;
pub mod boundary;
pub mod error;
pub mod hecke;
pub mod kostant;
pub mod laurent;
pub mod oracle;
pub mod selfcheck;
pub mod trace;

pub use admissible::{
    admissible_image, admissible_set, admissible_set_for, project_double_coset, weyl_orbit,
    DoubleCoset, ParahoricType,
};
pub use affine_weyl::{
    omega_generator, positive_roots, simple_reflection, AffineWeylElement, FiniteWeylElement,
    PositiveRoot, ReducedWord, RootDatum, SimilitudeCoweight,
};
pub use boundary::{
    enumerate_flags, incidence, induced_parahoric, phi, siegel_dimension, IsotropicFlag,
    IsotropicLabel, LeviBlock, ParabolicData,
};
pub use error::{Error, Result};
pub use hecke::{
    kl_polynomial, multiplicities, t_inv, t_mul, theta, z_mu, HeckeElement, KlTable,
};
pub use kostant::{
    central_truncate, irreducible_weights, lie_n_cohomology, r_a_flag, s_delta_truncate,
    CentralMode, SDeltaMode, Weight, WeightModule, WeightMultiset,
};
pub use laurent::{LaurentPolynomial, SurdValue};
pub use trace::{
    boundary_factor, stratification_atlas, trace_table, BoundaryFactor, Gamma0, StratumLabel,
    TraceCell, TraceValue,
};
