//! Numerics for Orlicz spaces on discrete groups and their twisted
//! convolution algebras.
//!
//! Everything is generic over the scalar type; the aliases at the crate root
//! fix `f64`, and [`single`] fixes `f32`.

pub mod cocycle;
pub mod error;
pub mod group;
pub mod numeric;
pub mod orlicz;
pub mod random;
pub mod scalar;
pub mod twisted;
pub mod young;

pub use error::{Error, Result};
pub use group::{Group, GroupElement, GroupKind};
pub use scalar::{Scalar, Tolerance};

pub type YoungFunction = young::YoungFunction<f64>;
pub type ComplementaryPair = young::ComplementaryPair<f64>;
pub type Weight = group::Weight<f64>;
pub type WeightKind = group::WeightKind<f64>;
pub type Cocycle = cocycle::Cocycle<f64>;
pub type DecompositionWitness = cocycle::DecompositionWitness<f64>;
pub type WitnessFn = cocycle::WitnessFn<f64>;
pub type OrliczVector = orlicz::OrliczVector<f64>;
pub type NormReport = orlicz::NormReport<f64>;
pub type SplitFactors = twisted::SplitFactors<f64>;

/// Single-precision aliases.
pub mod single {
    pub type YoungFunction = crate::young::YoungFunction<f32>;
    pub type ComplementaryPair = crate::young::ComplementaryPair<f32>;
    pub type Weight = crate::group::Weight<f32>;
    pub type WeightKind = crate::group::WeightKind<f32>;
    pub type Cocycle = crate::cocycle::Cocycle<f32>;
    pub type DecompositionWitness = crate::cocycle::DecompositionWitness<f32>;
    pub type WitnessFn = crate::cocycle::WitnessFn<f32>;
    pub type OrliczVector = crate::orlicz::OrliczVector<f32>;
    pub type NormReport = crate::orlicz::NormReport<f32>;
    pub type SplitFactors = crate::twisted::SplitFactors<f32>;
}
