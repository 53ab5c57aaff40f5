//! Exact computations around the link Floer homology polytope and the
//! Thurston norm of link complements.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats, rendering and the command-line
//! front end live in the `normcalc` crate.
//!
//! Module map:
//!
//! * [`links`]: PD-code link diagrams, crossing signs, linking numbers.
//! * [`laurent`]: multivariate Laurent polynomials with half-integer exponents.
//! * [`alexander`]: Fox calculus, the multivariable Alexander polynomial and
//!   the Euler-characteristic polynomial `prod(T_i^{1/2} - T_i^{-1/2}) * Delta`.
//! * [`polytope`]: exact hulls, support functions, Minkowski sums and
//!   erosion by the cube `[-1,1]^l` on the half-integer lattice.
//! * [`norms`]: the Floer norm `y`, the Thurston norm `x`, dual polytopes,
//!   bounds and fibred-face certificates.
//! * [`cabling`]: how norms and top gradings transform under cabling.
//! * [`heegaard`]: multi-pointed Heegaard diagrams, generators, domains,
//!   Alexander multi-gradings and Euler characteristics.
#![no_std]

extern crate alloc;

pub mod alexander;
pub mod cabling;
pub mod half;
pub mod heegaard;
pub mod laurent;
pub mod linalg;
pub mod links;
pub mod norms;
pub mod polytope;

pub use half::Half;
pub use laurent::{Exponent, MultivariateLaurent};
pub use links::{CohomologyClass, LinkDiagram};
pub use polytope::LatticePolytope;
