//! Uniquely labelled geodesics in Coxeter groups with exponents in {2, 3, ∞}.

pub mod corpus;
pub mod count;
pub mod diagram;
pub mod dtilde6;
pub mod engine;
pub mod error;
pub mod geodesics;
pub mod polynomial;
pub mod treepath;
pub mod typea;

pub use count::GeodesicCount;
pub use diagram::{CoxeterDiagram, Exponent};
pub use engine::{Generator, GroupElement, LabelVector, Word};
pub use error::{Error, Result};
pub use geodesics::{
    ball_census, ball_census_with, generating_series, geodesic_count, is_ulg, reduced_words,
    unique_geodesic_elements, CensusOptions, GeodesicCensus, GeodesicCounter,
};
pub use polynomial::LabelPolynomial;
