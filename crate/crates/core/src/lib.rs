//! Bounds on the polynomial Bohnenblust-Hille constants `D(m)`.
//!
//! For every `m`-homogeneous polynomial `P` on `C^N`, the `l_{2m/(m+1)}` norm
//! of its coefficients is at most `D(m)` times the sup norm of `P` on the unit
//! polydisc, with `D(m)` independent of `N`. Any concrete `P` therefore gives a
//! lower bound on `D(m)`. This crate provides:
//!
//! - [`poly`]: sparse homogeneous polynomials and coefficient norms
//! - [`norms`]: a grid-and-refine sup-norm estimate with a rigorous upper bracket
//! - [`family`]: the two-variable witness family, its closed-form lower bound,
//!   and the hypercontractive upper bound
//! - [`search`]: pattern search over coefficient space, producing certificates
//!
//! The crate is `no_std` and only needs `alloc`. Work that can fan out goes
//! through an [`Executor`]; [`Sequential`] is always available.

#![no_std]

extern crate alloc;

mod error;
pub mod exec;
pub mod family;
pub mod norms;
pub mod poly;
pub mod search;
pub mod sum;

pub use error::{Error, Result};
pub use exec::{Executor, Sequential};
pub use family::{
    bh_ratio, bh_ratio_with, bounds_table, bounds_table_with, build_p2, build_pm, family_ratio,
    family_ratio_ln, lower_bound, lower_bound_excess, lower_bound_ln, multilinear_lower_bound,
    optimal_x, upper_bound, upper_bound_ln, BhRatio, BoundsRow, FamilyParams,
};
pub use norms::{
    p2_closed_norm, refine_local, sup_norm, sup_norm_with, torus_grid_max, torus_grid_max_with,
    torus_lipschitz_bound, GridMax, Refinement, SupNormConfig, SupNormResult,
};
pub use poly::{bh_exponent, HomogeneousPolynomial, MultiIndex};
pub use search::{certify, search, search_with, SearchConfig, SearchOutcome, WitnessCertificate};

pub use num_complex::Complex64;
