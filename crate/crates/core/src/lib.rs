pub mod arith;
pub mod catalog;
pub mod cli;
pub mod diffop;
pub mod error;
pub mod growth;
pub mod local;
pub mod pade;
pub mod pcurv;

pub use error::{Error, Result};
