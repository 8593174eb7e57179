pub mod base_ring;
pub mod config;
pub mod construction;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod nonfiniteness;
pub mod report;
pub mod ring_b;
pub mod ring_c;
pub mod sample;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
