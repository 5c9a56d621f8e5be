//! Exact homological algebra: chain complexes over the integers, prime
//! fields, monogenic orders and graded polynomial rings; the Dold-Kan
//! functors; derived exterior and tensor powers; multiplicative Euler
//! characteristics and a symbolic lambda-operation calculus.

pub mod arithmetic;
pub mod complex;
pub mod derived;
pub mod error;
pub mod homology;
pub mod kgroup;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod rational;
pub mod resolution;
pub mod ring;
pub mod samples;
pub mod simplicial;
pub mod subsets;

pub use error::{Error, Result};
pub use rational::PositiveRational;
pub use ring::{Elem, Ring, RingDescriptor};
