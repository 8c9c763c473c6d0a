//! Exact integer and rational kernels.

pub mod homology;
pub mod matrix;
pub mod normal_form;
pub mod polyhedron;
pub mod rational;

pub use homology::{integer_homology, HomologyGroup, HomologyProfile};
pub use matrix::IntMatrix;
pub use normal_form::{hnf, snf, Hnf, Snf};
pub use polyhedron::{Ineq, Polyhedron};
pub use rational::{RatVector, Rational};
