//! Library half of the `ms` binary: file formats, renderers and the
//! command implementations, kept callable for integration tests.

pub mod commands;
pub mod format;
pub mod render;
