//! File format, fixtures, fuzzing and diagram export.

pub mod campaign;
pub mod dot;
pub mod fixtures;
pub mod format;
pub mod fuzz;
