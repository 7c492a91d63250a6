//! Front ends for the shortest path game solvers: a terminal play loop and
//! the HTTP session service behind `spg serve`.

pub mod play;
pub mod server;
