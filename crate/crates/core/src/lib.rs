pub mod analysis;
pub mod completion;
pub mod diffpoly;
pub mod exec;
pub mod monomial;
pub mod scalars;
pub mod symmetry;
