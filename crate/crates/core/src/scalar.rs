//! Exact coefficient types used by enumerators and Krawtchouk kernels.
//!
//! Everything that touches enumerator arithmetic is generic over [`ExactInt`]
//! so callers can pick a fixed-width integer for speed or `BigInt` when the
//! numerators outgrow 128 bits.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed exact integers: `i64`, `i128`, `BigInt`.
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + FromStr + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("value does not fit the coefficient type")
    }
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + Debug + Display + FromStr + FromPrimitive + ToPrimitive + Send + Sync
{
}
