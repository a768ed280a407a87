//! Exact computations with instanton bundles on projective 3-space.

pub mod adhm;
pub mod algebra;
pub mod checks;
pub mod cohomology;
pub mod forms;
pub mod hirzebruch;
pub mod io;
pub mod monad;
