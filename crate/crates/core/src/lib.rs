//! Exact-arithmetic calculator for virtual Poincaré polynomials of
//! stratified moduli spaces.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`] — dense univariate polynomials over the integers, the value
//!   type everything else computes with. One power of `p` per even
//!   cohomological degree (`p` is the class of the affine line).
//! - [`motives`] — closed-form polynomials of the atom spaces: projective
//!   spaces, Grassmannians, Hilbert schemes of points on the plane,
//!   relative Hilbert schemes, and the Z2-quotient operators.
//! - [`strata`] — an expression calculus over the atoms (sums, differences,
//!   products, bundles, equivariant squares) plus wall-term assembly.
//! - [`dsl`] — text format and parser for scenario files (`.mwc`), and the
//!   verification report produced by running a scenario.
//! - [`ledger`] — the built-in computation: the wall list for degree-5
//!   pairs with Euler characteristic 2, the forgetful-map decomposition,
//!   the Brill-Noether pipeline and the α=3 reconstruction diagnostic.
//!
//! ```
//! use mwc_core::{parse_scenario, run_scenario};
//!
//! let scenario = parse_scenario(
//!     r#"
//!     model M = bundle(proj(1), gr(2, 4))
//!     expect M == poly"1 + 2p + 3p^2 + 3p^3 + 2p^4 + p^5"
//!     "#,
//! )
//! .unwrap();
//! assert!(run_scenario(&scenario).all_pass());
//! ```

pub mod dsl;
pub mod ledger;
pub mod motives;
pub mod poly;
pub mod strata;

pub use dsl::{
    parse_scenario, run_scenario, Check, ModelDef, ParseError, Scenario, VerificationReport,
};
pub use motives::{AtomError, AtomSpec};
pub use poly::{NotDivisible, Polynomial};
pub use strata::{Environment, EvalError, SpaceExpr, WallTerm};
