//! The Morse n-category: flow data, labels, validation and cells.

pub mod cell;
pub mod flow;
pub mod label;
pub mod validate;

pub use cell::{normalize_cell, x_cells, x_closure, x_composable_pairs, Closure, XCategory, XCell};
pub use flow::{FlowData, FlowDocument, ModuliKey, ModuliSpace};
pub use label::Label;
pub use validate::{validate_flow_data, CheckName, ValidationReport};
