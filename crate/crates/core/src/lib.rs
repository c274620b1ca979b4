pub mod automata;
pub mod cli;
pub mod decide;
pub mod error;
pub mod lang;
pub mod level;
pub mod monoid;
pub mod proof;
pub mod random;
pub mod term;

pub use error::Error;
pub use level::Level;
