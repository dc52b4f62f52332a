//! Bitstring genomes, the seeded generator, and the two mutation operators.

mod bitstring;
mod mutation;
mod rng;

pub use bitstring::BitString;
pub use mutation::{block_mutation, random_bitstring, standard_mutation};
pub use rng::RandomSource;
