pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub mod schwarz;
pub mod moments;
pub mod hankel;
pub mod orthopoly;
pub mod bessel;
pub mod roots;
