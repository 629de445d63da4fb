//! Centralizers and commuting conjugacy class graphs of finite groups whose
//! central quotient is `Z_{p²} ⋊ Z_{p²}` or `Z_{p²} × Z_{p²}`, with checks
//! against predicted counts and join shapes.

pub mod cccgraph;
pub mod centralizers;
pub mod cli;
pub mod conjugacy;
pub mod error;
pub mod graph;
pub mod group;
pub mod iso;
pub mod joins;
pub mod presentations;
pub mod verify;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use group::{Elem, ElementSet, Group};
