//! Exact-arithmetic library for quasi-ordinary Weierstrass polynomials:
//! Kuo-Lu and Eggers trees, characteristic data at pseudo-balls, predicted
//! factorizations of higher-order polars, and brute-force symbolic
//! verification of the predictions at desk scale.
//!
//! Everything is computed over the cyclotomic tower Q(zeta_N); there are no
//! floating-point numbers and no tolerances anywhere.

pub mod charpoly;
pub mod cyclo;
pub mod dense1;
pub mod error;
pub mod exponent;
pub mod input;
pub mod np;
pub mod polar;
pub mod polytope;
pub mod rat;
pub mod render;
pub mod report;
pub mod roots;
pub mod series;
pub mod tree;
pub mod unipoly;
pub mod verify;
pub mod ypoly;

pub use charpoly::{CharacteristicData, Compatibility, RegularitySplit};
pub use cyclo::Cyclo;
pub use error::{QoError, Result};
pub use exponent::{ExpVec, Height};
pub use polytope::{ElementaryPolytope, NewtonPolytope, PolytopeOrder};
pub use rat::Rat;
pub use roots::{Branch, Contact, GaloisAutomorphism, RootSet};
pub use series::{FractionalSeries, InitialData};
pub use tree::{EggersTree, KuoLuTree, PseudoBall};
pub use unipoly::UniPoly;
pub use ypoly::SeriesYPoly;
