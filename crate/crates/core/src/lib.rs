//! Finitely presented groups, their low-index subgroups, and the finite
//! geometries and quantum measurements read off from coset actions.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! * [`fpgroup`] parses presentations such as `"a,b | aBab^2aBab^3, a^4bAb"`;
//! * [`coset`] runs Todd–Coxeter enumeration and produces canonical coset tables;
//! * [`lowindex`] enumerates conjugacy classes of subgroups of bounded index;
//! * [`permgrp`] turns tables into permutation groups with Schreier–Sims chains;
//! * [`geometry`] builds the two-point-stabilizer incidence geometry and names it;
//! * [`mic`] checks Weyl–Heisenberg orbits of candidate states for informational
//!   completeness.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coset;
pub mod fpgroup;
pub mod geometry;
pub mod linalg;
pub mod lowindex;
pub mod mic;
pub mod perm;
pub mod permgrp;

pub use coset::{CosetError, CosetTable};
pub use fpgroup::{ParseError, Presentation, Word};
pub use geometry::{GeometryName, IncidenceGeometry};
pub use lowindex::{EtaSequence, LowIndexError, SubgroupRecord};
pub use mic::{Fiducial, FiducialReport};
pub use perm::Permutation;
pub use permgrp::PermutationGroup;

pub use num_complex;
