#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod constructions;
pub mod error;
pub mod eval;
pub mod finite;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod matrix;
pub mod modelscope;
pub mod pp;
pub mod ppt;
pub mod purity;
pub mod theory;

mod primes;
