//! Needle variations of an extremal, brute-force functional increments, and
//! least-squares fits of their expansion in the needle width `epsilon`.

mod fit;
mod variation;

pub use fit::*;
pub use variation::*;
