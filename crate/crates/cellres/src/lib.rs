//! File formats, renderers and command plumbing for `cellres-core`.

pub mod input;
pub mod problem;
pub mod render;
