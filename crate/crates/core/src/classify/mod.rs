//! Feasibility, the parameter actions and equivalences, the irreducibility
//! criteria and the linear-algebra oracles that check them.

mod equiv;
mod feasible;
mod intertwine;
mod irr;
mod s4;
mod sample;

pub use equiv::*;
pub use feasible::*;
pub use intertwine::*;
pub use irr::*;
pub use s4::*;
pub use sample::*;
