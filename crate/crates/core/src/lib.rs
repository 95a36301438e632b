pub mod cli;
pub mod compare;
pub mod distributions;
pub mod error;
pub mod experiments;
pub mod fitting;
pub mod gof;
pub mod io;
pub mod resampling;
pub mod sample;
pub mod seed;

pub use distributions::{CountDistribution, Family, ModelSpec};
pub use error::{Error, Result};
pub use sample::CitationSample;
