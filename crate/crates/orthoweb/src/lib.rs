//! Exact evaluation of orthogonal webs on exterior powers.

pub mod brauer;
pub mod combin;
pub mod evalfun;
pub mod exterior;
pub mod howe;
pub mod scalars;
pub mod sparse;
pub mod ssquot;
pub mod webcat;
