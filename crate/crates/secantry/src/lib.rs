//! Exact computer algebra for secant varieties of projective curves over a
//! prime field: polynomial arithmetic, Groebner bases with elimination,
//! secant ideals by join/elimination and by prolongation, graded Betti
//! tables via Koszul strand ranks, and the blowup/fiber computations for
//! rational normal curves.

pub mod error;
pub mod field;
pub mod ring;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod parse;
pub mod matrix;
pub mod groebner;
pub mod formspace;
pub mod ideal_ops;
pub mod hilbert;
pub mod secant;
pub mod sparse;
pub mod koszul;
pub mod betti;
pub mod resolution;
pub mod geometry;
pub mod conjectures;
pub mod selfcheck;

pub use error::{Error, Result};
pub use field::{Fp, PrimeField, DEFAULT_PRIME};
pub use groebner::{Budget, GroebnerBasis, Ideal};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::{Block, RingRef, RingSpec};
