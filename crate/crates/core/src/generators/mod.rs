//! Instance generators: the two hardness constructions from exact cover,
//! the two-factor bridge for `(2, 2)`, and random instances.

mod bezout;
mod exact_cover;
mod hardness;
mod random;
mod two_factor;

pub use bezout::{bezout_nonneg, gcd, BezoutPair};
pub use exact_cover::XCInstance;
pub use hardness::{
    generate_biased_hardness, generate_dissolution_hardness, BiasedHardness, DissolutionHardness,
    Gadget,
};
pub use random::{generate_random, AlphaMode, GraphMode, RandomSpec};
pub use two_factor::{biased22_to_two_factor, cycles_of_two_factor, two_factor_to_biased22};
