//! Heptagonal hyperbolic lattices on the Poincaré disk and the continuum
//! theory they converge to.
//!
//! The crate generates {p,3} tessellation graphs ring by ring, embeds them in
//! the unit disk, and checks the dictionary between the two sides at desk
//! scale:
//!
//! * adjacency-matrix spectra of H = −A against Dirichlet spectra of the
//!   operator −3 − ¾h²Δ_g on a disk of effective radius L = √(N/(N+28));
//! * graph resolvents (H − ω)⁻¹ against the closed-form Green function of
//!   the hyperbolic Helmholtz operator λ + Δ_g;
//! * the three-point Möbius neighbor sum Â_h against its quadratic and cubic
//!   continuum approximants, with finite-size scaling in the formal
//!   parameter h;
//! * lattice sums against disk integrals with the π/28 triangle measure.
//!
//! Modules mirror that split: [`geometry`] holds the disk primitives,
//! [`lattice`] the tessellation, [`specfun`] the conical/complex-degree
//! Legendre machinery, [`spectra`] both eigenvalue pipelines, [`greens`] both
//! Green functions and their comparison, and [`continuum_ops`] the operator
//! dictionary.

pub mod continuum_ops;
pub mod geometry;
pub mod greens;
pub mod lattice;
pub mod quadrature;
pub mod specfun;
pub mod spectra;

pub(crate) mod sparse;

pub use geometry::{hyp_distance, Automorphism, DiskPoint};
pub use lattice::HyperbolicLattice;
