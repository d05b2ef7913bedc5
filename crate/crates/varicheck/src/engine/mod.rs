//! Degeneration functionals and theorem verdicts.
mod fd;
mod forms;
mod report;
mod scan;
mod theorems;
pub use fd::{time_derivative, DEFAULT_REL_STEP};
pub use forms::*;
pub use report::*;
pub use scan::*;
pub use theorems::*;
