//! Linear codes over `Z4` and over small finite commutative rings, their
//! Gray map images, weight and distance enumerators, and orthogonal-array
//! strength.
//!
//! The crate checks, instance by instance, that the strength of a linear
//! code over a finite commutative ring is one less than the minimum Hamming
//! weight of its dual, and that the strength of the Gray image of a
//! `Z4`-linear code is one less than the minimum Lee weight of its dual.
//!
//! ```
//! use z4oa::{gray_image, strength, Z4Code};
//!
//! let c = Z4Code::from_rows(2, &[vec![1, 1]]).unwrap();
//! let dual = c.dual().unwrap();
//! let image_strength = strength(&gray_image(&c).to_array()).unwrap().strength;
//! assert_eq!(image_strength, dual.min_lee_weight() - 1);
//! ```

pub mod enumerators;
pub mod error;
pub mod gray;
pub mod io;
pub mod oa;
pub mod ring;
pub mod scalar;
pub mod verify;
pub mod z4;

pub use num_bigint::BigInt;

pub use enumerators::{
    check_lee_macwilliams, distance_enumerator, dual_distance, hamming_weight_enumerator, is_distance_invariant,
    krawtchouk, lee_weight_enumerator, macwilliams_transform, Enumerator, HammingCode, LeeMetric, MetricCode,
};
pub use error::{Error, Result};
pub use gray::{gray, gray_image, is_linear_binary, BinaryCode, BinaryWord};
pub use oa::{index_at, is_oa_at, strength, Array, OaCheck, OaReport, Witness};
pub use ring::{
    annihilator, check_property_star, columns_independent, enumerate_ideals, has_property_plus, row_space, Elem,
    FiniteRing, Ideal, RingCode,
};
pub use scalar::ExactInt;
pub use verify::{
    exhaustive_small_sweep, random_z4_sweep, search_pairs, verify_delsarte_ring, verify_dual_size,
    verify_gray_strength, verify_lee_macwilliams, verify_strength_bounds, PairTable, SearchConfig, SweepOutcome,
    TheoremReport, Verdict,
};
pub use z4::{lee_distance, random_z4_code, Z4Code, Z4Word};

/// Enumerator with 64-bit coefficients; enough for codes of length up to
/// about 12.
pub type Enumerator64 = Enumerator<i64>;
/// Enumerator with 128-bit coefficients, the default for this crate.
pub type Enumerator128 = Enumerator<i128>;
/// Enumerator with arbitrary-precision coefficients.
pub type BigEnumerator = Enumerator<BigInt>;
