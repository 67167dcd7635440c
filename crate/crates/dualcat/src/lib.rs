//! Homological invariants over finite loop-free categories and simplicial
//! posets with integer coefficients: Ext, Tor, local cohomology, and
//! certification of the duality-category property together with the
//! dualizing module.
//!
//! The pipeline is exact end to end. Everything reduces to Smith normal
//! form over arbitrary-precision integers, and every isomorphism claim is
//! decided on the canonical (rank, torsion) invariants of finitely
//! generated abelian groups.

pub mod category;
pub mod cmod;
pub mod corpus;
pub mod duality;
pub mod simplicial;
pub mod zlin;
