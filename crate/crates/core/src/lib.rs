//! Exact resonance analysis of periodic Kasner chains in Bianchi IX.
//!
//! The modules are generic over an exact integer scalar (see [`num::Int`]);
//! the aliases below fix it to [`num_bigint::BigInt`].

pub mod cfrac;
pub mod exactfield;
pub mod kasner;
pub mod num;
pub mod report;
pub mod resonance;
pub mod snc;

pub use cfrac::{CfError, CfWord, ClosedForm};
pub use snc::Reason;

pub type Int = num_bigint::BigInt;
pub type Rational = exactfield::Rational<Int>;
pub type QuadExt = exactfield::QuadExt<Int>;
pub type CoeffVector = cfrac::CoeffVector<Int>;
pub type Convergents = cfrac::Convergents<Int>;
pub type KVector = resonance::KVector<Int>;
pub type Resonance = resonance::Resonance<Int>;
pub type EigenTriple = kasner::EigenTriple<Int>;
pub type SncData = snc::SncData<Int>;
pub type BasePointReport = snc::BasePointReport<Int>;
pub type ChainReport = snc::ChainReport<Int>;
