pub mod error;
pub mod random;
pub mod ring;
pub mod rota_baxter;
pub mod semigroup;
pub mod shuffle;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
