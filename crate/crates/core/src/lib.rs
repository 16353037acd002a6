pub mod catalog;
pub mod cli;
pub mod connection;
pub mod error;
pub mod exterior;
pub mod hermitian;
pub mod identities;
pub mod kahler_like;
pub mod poly;

pub use error::{Error, Result};
