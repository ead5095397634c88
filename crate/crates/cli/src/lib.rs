//! Expression language and command-line front end for `iforms-core`.

pub mod app;
pub mod eval;
pub mod parse;
