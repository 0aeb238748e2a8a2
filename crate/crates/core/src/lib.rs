//! Strands algebras of the pong and asteroids families over `F_2[v_1, ...,
//! v_m]`, together with an exact-rational planar-diagram oracle that
//! recomputes the differential and the product from rectangle and triangle
//! counts.
//!
//! The crate exposes:
//!
//! - [`group`]: the infinite dihedral symmetry group of the integer line,
//!   orbit labels, and canonical pair representatives;
//! - [`perm`]: equivariant partial permutations (pong generators);
//! - [`asteroids`]: the cyclic variant (translation symmetry only);
//! - [`poly`]: sparse `F_2` polynomials in the formal variables;
//! - [`algebra`]: formal sums of generators, the differential, and the
//!   product, generic over the generator family;
//! - [`oracle`]: the independent planar model (empty rectangles, triangles,
//!   diagonal counts, Euler measures, domain positivity);
//! - [`verify`]: exhaustive property suites over bounded generator sets;
//! - [`io`], [`cache`], [`cli`]: JSON records, the generator-table cache,
//!   and the command-line interface.

pub mod algebra;
pub mod asteroids;
pub mod cache;
pub mod cli;
pub mod error;
pub mod group;
pub mod io;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
