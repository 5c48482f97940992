//! Exact symbolic analysis of polynomial maps `F: Cⁿ → Cⁿ` with rational
//! coefficients: singular locus, critical values, asymptotic set, Thom's
//! rank partition and a stratification of their union.

pub mod cset;
pub mod error;
pub mod fixtures;
pub mod ideal;
pub mod mapanalysis;
pub mod parse;
pub mod poly;
pub mod thom;

pub use cset::{CSet, Piece};
pub use error::{Error, Result};
pub use ideal::{Containment, GroebnerBasis, Ideal};
pub use mapanalysis::{Analysis, MapReport};
pub use poly::{MonomialOrder, PolyMap, PolyMatrix, Polynomial, Rational, Ring, VariableContext};
pub use thom::{ImageStratum, RankPiece, SmoothPiece, Stratification};
