//! Numerical laboratory for the integral operators `S_g` and `T_g` on
//! analytic function spaces over the unit disc.
//!
//! The crate provides four layers:
//!
//! - [`geometry`]: points of the disc, Möbius automorphisms, the
//!   pseudo-hyperbolic metric and thinness measurements for zero sequences;
//! - [`func`]: an expression-tree model of analytic functions with exact
//!   pointwise evaluation and exact derivative evaluation, plus the standard
//!   test-function families;
//! - [`quad`] and [`spaces`]: quadrature rules on the disc (plain area
//!   measure and the logarithmic weight) and the norms of the Bloch,
//!   Dirichlet, Bergman, Hardy and BMOA spaces built on top of them;
//! - [`operators`]: the operators `S_g f = ∫₀ᶻ f′g` and `T_g f = ∫₀ᶻ f g′`,
//!   their closed-form operator norms, witnessed lower bounds, and the
//!   norm-attainment experiments (extremal Blaschke constructions and
//!   deficiency scans).
//!
//! The remaining modules ([`corpus`], [`checks`], [`config`], [`report`],
//! [`commands`]) back the `discspace` command-line driver and the seeded,
//! reproducible experiment corpora.
//!
//! Start with the runnable examples (`cargo run --example space_norms`,
//! `cargo run --example bloch_extremal`, ...) for a tour of the API.

pub mod checks;
pub mod commands;
pub mod config;
pub mod corpus;
pub mod error;
pub mod func;
pub mod geometry;
pub mod operators;
pub mod quad;
pub mod report;
pub mod spaces;

pub use error::{DiscError, Result};
pub use func::{Func, PrimitivePair};
pub use geometry::{DiscPoint, ZeroSequence};
pub use quad::QuadratureRule;
