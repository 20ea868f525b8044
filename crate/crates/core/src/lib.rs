//! Bogomolov multipliers of finite p-groups.
//!
//! The crate is organised bottom-up: [`pcgroup`] provides collection and
//! subgroup machinery, [`catalog`] builds the order-p^5 presentations,
//! [`pquotient`] computes p-quotients of finitely presented groups,
//! [`multiplier`] computes `B0(G) = M(G)/M0(G)` from the exterior square,
//! [`cohomology`] is the independent cochain oracle together with the
//! structural certificates, and [`isoclinism`] tests isoclinism.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod isoclinism;
pub mod modular;
pub mod multiplier;
pub mod pcgroup;
pub mod pquotient;

pub use error::{Error, Result};
pub use pcgroup::{Element, Homomorphism, PcGroup, PcPresentation, Subgroup};
