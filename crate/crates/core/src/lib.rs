pub mod error;
pub mod exact;
pub mod faber;
pub mod graphs;
pub mod hodge;
pub mod hurwitz;
pub mod interp;
pub mod invariance;
pub mod psi;
