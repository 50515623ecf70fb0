pub mod corpus;
pub mod error;
pub mod exactla;
pub mod lincat;
pub mod monoidal;
pub mod presheaf;
pub mod properties;
pub mod pretop;
pub mod sheafify;
pub mod sieve;
pub mod topology;

pub use error::{Error, Result};
