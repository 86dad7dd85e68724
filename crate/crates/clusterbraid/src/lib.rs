//! File formats, exports, the claim registry, explorer sessions, the HTTP
//! API and the command line for `clusterbraid-core`.

pub mod claims;
pub mod cli;
mod error;
pub mod export;
pub mod format;
pub mod ops;
pub mod serve;
pub mod session;

pub use error::Error;
