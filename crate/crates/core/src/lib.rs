//! Exact lattice, spectral and dynamical computations for isometries of
//! hyperbolic lattices, with an eye on automorphisms of rational surfaces.

pub mod algebraic;
pub mod error;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod nef;
pub mod number_field;
pub mod poly;
pub mod spectral;
pub mod stabilizer;
pub mod sturm;
pub mod surface;
pub mod weyl;
pub mod zariski;

pub use algebraic::AlgebraicReal;
pub use error::{Error, Result};
pub use lattice::{Isometry, Lattice, LatticeVector};
pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use nef::NumberFieldVector;
pub use number_field::{NfElem, NumberField};
pub use poly::{IntPolynomial, QPoly};
pub use spectral::{EntropyClass, SalemSplit, SpectralData};
pub use surface::SurfaceModel;
pub use zariski::{CurveConfig, ZariskiPair};
