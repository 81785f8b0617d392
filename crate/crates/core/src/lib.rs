pub mod cli;
pub mod error;
pub mod fitmod;
pub mod groebner;
pub mod kaehler;
pub mod polyring;
pub mod rees;
pub mod verify;

#[cfg(test)]
mod test_util;

pub use error::{Error, Result};
