//! Self-similar root approximants and the tools to build, check and
//! benchmark them.

pub mod rational;
pub mod series;
pub mod approximant;
pub mod linalg;
pub mod pade;
pub mod oracles;
pub mod bench;
