//! Stable theory of complexes of finitely generated projective modules over
//! effective commutative rings: exact linear algebra, presented modules with
//! Ext/Tor, complexes in the homotopy category with split/Add(R) machinery,
//! syzygy and cosyzygy functors, contractions of Add(R)-resolutions, counit
//! delta complexes, and the acyclicity-duality application layer.

pub mod contraction;
pub mod counit;
pub mod error;
pub mod experiment;
pub mod io;
pub mod checks;
pub mod complex;
pub mod module;
pub mod ring;
pub mod stable;

pub use error::{Error, Result};
