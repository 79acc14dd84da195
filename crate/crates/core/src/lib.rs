//! Newton non-degeneracy of logarithmic foliated spaces.

pub mod algebra;
pub mod blowup;
pub mod cli;
pub mod fabric;
pub mod foliated;
pub mod groebner;
pub mod lp;
pub mod nnd;
pub mod polyhedra;
pub mod report;
