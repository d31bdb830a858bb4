//! Character computations for reductive groups in positive characteristic:
//! root data, the character ring, strong linkage, simple and tilting
//! characters, G₁T-modules and Ext¹ candidate bounds.

pub mod charring;
pub mod error;
pub mod extbounds;
pub mod g1t;
pub mod linkage;
pub mod rootdata;
pub mod shapovalov;
pub mod simples;
pub mod tilting;
pub mod verify;
pub mod weight;

pub use charring::{CharRing, Character, Expansion};
pub use error::{Error, Result};
pub use linkage::AlcoveContext;
pub use rootdata::{RootDatum, TypeLabel};
pub use weight::Weight;
