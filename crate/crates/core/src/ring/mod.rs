//! Exact tensors over the Gaussian integers and the array ring they form.

mod alphabet;
mod gauss;
mod shape;
mod tensor;

pub use alphabet::Alphabet;
pub use gauss::GaussInt;
pub use shape::Shape;
pub use tensor::{StructureFlags, Tensor};

#[cfg(test)]
pub(crate) use tensor::tests as test_support;
