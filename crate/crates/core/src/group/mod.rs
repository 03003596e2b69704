//! Reflection-group construction: catalog specs, closure enumeration,
//! reflections, hyperplanes, conjugacy classes and the Coxeter element.

pub mod catalog;
pub mod engine;

pub use catalog::{GroupName, GroupSpec};
pub use engine::{
    ConjugacyClasses, GroupConfig, GroupElement, GroupInfo, Hyperplane, ReflectionGroup,
    DEFAULT_MAX_ORDER,
};
