pub mod appendix;
pub mod commands;
pub mod error;
pub mod foliation;
pub mod germ;
pub mod ideal;
pub mod pairs;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
