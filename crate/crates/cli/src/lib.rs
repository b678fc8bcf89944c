//! Command line and HTTP frontends for the `wortart` library.

pub mod cli;
pub mod ops;
pub mod server;

pub use cli::{run, ServeConfig};
