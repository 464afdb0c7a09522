//! Exact construction, planning and verification of polyphase Golay
//! complementary array (GCA) pairs and quads.

pub mod complementarity;
pub mod constructions;
pub mod error;
pub mod formats;
pub mod planner;
pub mod ring;
pub mod seeds;

pub use error::{Error, Result};
pub use ring::{Alphabet, GaussInt, Shape, StructureFlags, Tensor};
