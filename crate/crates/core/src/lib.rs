//! Almost strict n-categories built from index data and iterated Morse flow
//! data: the categories `W` and `V`, the Morse n-category `X`, the index
//! functors `G: X → W` and `F: X → V`, and checkers for the n-category axioms
//! and functor laws.

pub mod axioms;
pub mod category;
pub mod cli;
pub mod error;
pub mod functors;
pub mod morse;
pub mod report;
pub mod torus;
pub mod v;
pub mod w;

pub use axioms::{check_axioms, check_globularity, Axiom, AxiomOptions, AxiomReport};
pub use category::{composable, Category};
pub use error::{CellError, FlowError, FunctorError};
pub use v::{VCategory, VCell};
pub use w::{WCategory, WCell};
