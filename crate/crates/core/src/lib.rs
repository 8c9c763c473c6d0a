#![no_std]

extern crate alloc;

pub mod error;
pub mod exactmath;

pub use error::{Error, Result};
pub mod fixtures;
pub mod lattice;
pub mod cellcomplex;
pub mod polynomial;
pub mod stratify;
pub mod rescomplex;
pub mod verify;
