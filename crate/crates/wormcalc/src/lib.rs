//! Standard-library companion to `wormcalc-core`: proof and model file
//! formats, the consistency self-test, and the command-line front end.

pub mod cli;
pub mod format;
pub mod lemmas;
pub mod selftest;
