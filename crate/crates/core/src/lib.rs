pub mod analysis;
pub mod error;
pub mod family;
pub mod interferometric;
pub mod linalg;
pub mod loops;
pub mod models;
pub mod state;
pub mod uhlmann;

pub use error::{Error, Result};
pub mod verify;
pub mod cli;
