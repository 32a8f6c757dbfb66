//! Exact-arithmetic engine for Lie algebra / Lie algebroid cohomology and
//! the Serre spectral sequence of a subalgebra or invariant point.
//!
//! All computations happen over Q with arbitrary-precision rationals; every
//! reported number is a dimension or a rank, obtained by exact elimination.

pub mod catalog;
pub mod ce;
pub mod cochain;
pub mod exactq;
pub mod extension;
pub mod jets;
pub mod multiindex;
pub mod serre;
pub mod spectral;
