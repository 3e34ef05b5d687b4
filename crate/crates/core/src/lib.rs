//! Exact cyclotomic arithmetic, certified embeddings and integral PEL data
//! for families of cyclic covers of the projective line.
//!
//! The crate is `no_std` and only needs `alloc`. Every value is immutable
//! after construction and every operation is a pure function.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod cmfield;
pub mod cyclotomic;
pub mod embeddings;
pub mod error;
pub mod gf2;
pub mod interval;
pub mod monodromy;
pub mod peldatum;
pub mod polarization;

pub use cmfield::{CmType, Simplicity};
pub use cyclotomic::{CycloElem, CycloRatElem, CyclotomicField, RelativeElem};
pub use embeddings::{Sign, SignVector};
pub use error::{Error, Result};
pub use interval::{ComplexInterval, RealInterval};
pub use monodromy::{DegenerationTree, MonodromyDatum, Signature};
pub use peldatum::{GramMatrix, HermitianBlock, HermitianDatum};
pub use polarization::{Conditions, DifferentGenerator, PolarizedCmPoint, Polarizer};
