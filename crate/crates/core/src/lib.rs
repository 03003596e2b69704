//! Exact computations on finite complex reflection groups: closure
//! enumeration, character tables over cyclotomic fields, fake degrees, and the
//! number of factorizations of a Coxeter element into reflections, computed by
//! several independent methods.

pub mod arith;
pub mod character;
pub mod counting;
pub mod error;
pub mod group;
pub mod harness;

pub use error::{Error, Result};
