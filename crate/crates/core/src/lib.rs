pub mod kernel;
pub mod syntax;
pub mod engine;
pub mod intuitionistic;
pub mod admissibility;
