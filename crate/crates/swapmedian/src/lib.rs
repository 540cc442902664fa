pub mod geodesy;
pub mod graphs;
pub mod io;
pub mod perm;
pub mod reductions;
pub mod solvers;
pub mod verify;
