//! Exact symbolic engine for the foliated cohomology of linear models of
//! integrable systems with nondegenerate rank-zero singularities.
//!
//! The crate provides, over the Gaussian rationals and with no
//! floating-point arithmetic anywhere:
//!
//! - sparse multivariate polynomials with a complexification chart that
//!   diagonalizes the Williamson basis fields ([`polyring`], [`chart`]);
//! - the basis fields themselves as exact operators ([`williamson`]);
//! - constructive decompositions f = f_i + X_i(F_i) and the simultaneous
//!   solver for deformation cocycles ([`decompose`]);
//! - foliated k-forms, their differential and per-degree matrix assembly
//!   ([`foliated`]), exact rank/solve kernels ([`linalg`]), and the
//!   cohomology dimensions with generators and a combinatorial oracle
//!   ([`cohomology`]);
//! - the homotopy operator of the regular local model ([`homotopy`]) and
//!   the twisted complex with flat-section construction ([`kostant`]).

pub mod chart;
pub mod cohomology;
pub mod decompose;
pub mod error;
pub mod foliated;
pub mod homotopy;
pub mod kostant;
pub mod linalg;
pub mod polyring;
pub mod sampling;
pub mod scalar;
pub mod williamson;

pub use chart::{complexify, realify, ComplexChart};
pub use cohomology::{
    cohomology, compute_report, is_exact, normal_form_split, oracle_dimension, CohomologyReport,
    CohomologySlice, NormalFormSplit,
};
pub use decompose::{
    decompose, joint_kernel_projection, kernel_dependence, solve_deformation, solve_linear_pde,
    DecompositionResult, DeformationCochain, DeformationSolution, KernelDependence,
};
pub use error::{Error, Result};
pub use foliated::{assemble_matrix, basis_forms, FoliatedKForm, GradedBasis};
pub use homotopy::{primitive_regular, RegularFoliatedForm, RegularModel};
pub use kostant::{
    d_nabla, flat_section, flat_section_exponent, nabla_section_residual,
    nabla_section_residual_exact, ConnectionPotential, TruncatedSeries, TwistedForm,
};
pub use linalg::ExactMatrix;
pub use polyring::{parse_polynomial, vanishes_on_sigma, CoordinateSystem, Monomial, Polynomial};
pub use scalar::Scalar;
pub use williamson::{poisson_bracket, BlockKind, BlockLabel, FieldRole, WilliamsonBasis};
