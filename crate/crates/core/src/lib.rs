//! Invariant factors of submodules of points of Drinfeld `F_q[T]`-modules
//! over finite fields.
//!
//! The layers, bottom up:
//!
//! - [`gf`]: `F_q` and `K = F_{q^d}` with operation counting.
//! - [`poly`]: commutative polynomials over any [`gf::Field`].
//! - [`ore`]: the Ore ring `K{τ}` with right Euclidean division, gcd and lcm.
//! - [`meval`]: multipoint evaluation of Ore polynomials through llcm trees.
//! - [`linalg`]: matrices over `F_q`, Frobenius normal form, Smith form over
//!   `F_q[T]` and Fitting ideals.
//! - [`drinfeld`]: Drinfeld modules, morphisms, kernels and torsion.
//! - [`motive`]: Anderson motive coordinates and rationality of torsion.
//! - [`oracle`]: brute-force checks for small fields.
//! - [`bench`]: operation counts of the two `ore_matrix` paths.
//!
//! ```
//! use std::sync::Arc;
//! use drinfeld::drinfeld::{module_of_points_invariants, DrinfeldModule};
//! use drinfeld::gf::{Field, FieldCtx};
//! use drinfeld::ore::OreRing;
//!
//! // K = F_4 = F_2[z]/(z² + z + 1) and φ_T = z + τ
//! let ctx = Arc::new(FieldCtx::standard(2, 2).unwrap());
//! let phi_t = OreRing::new(&ctx).from_coeffs(vec![ctx.basis(1), ctx.one()]);
//! let phi = DrinfeldModule::new(ctx.clone(), phi_t).unwrap();
//! let s = module_of_points_invariants(&phi).unwrap();
//! assert_eq!(s.factors[0].coeffs(), &[0, 1, 1]); // T² + T
//! assert_eq!(s.generators, vec![ctx.one()]);
//! ```
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is on and plain iterators otherwise.

pub mod bench;
pub mod drinfeld;
pub mod gf;
pub mod instances;
pub mod io;
pub mod linalg;
pub mod meval;
pub mod motive;
pub mod oracle;
pub mod ore;
pub mod par;
pub mod poly;
