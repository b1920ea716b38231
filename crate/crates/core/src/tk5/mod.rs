//! `TK5` search, the gadget and its constructive `TK5`, and the spoke
//! configurations around a hub vertex.

mod assemble;
pub mod gadget;
mod proof;
mod search;
mod w4;

pub use assemble::assemble_tk5;
pub use gadget::{build_gadget, find_gadget_separation, matches_gadget, GadgetError, GadgetSpec};
pub use proof::{gadget_tk5, GadgetCase, GadgetTk5};
pub use search::*;
pub use w4::*;
