//! File formats, SVG output and command dispatch for the `multifan` binary.

pub mod app;
pub mod format;
pub mod svg;
