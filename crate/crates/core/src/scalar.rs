//! The integer scalar the counting module is generic over.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

use crate::error::{Error, Result};

/// An exact integer type usable for class counts.
///
/// Fixed-width types are accepted, but every operation the counting code
/// performs goes through the checked variants and reports
/// [`Error::Overflow`] instead of wrapping.
pub trait CountScalar:
    Integer
    + Clone
    + Debug
    + Display
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    fn from_u64_checked(v: u64, context: &str) -> Result<Self> {
        Self::from_u64(v).ok_or_else(|| overflow(context))
    }

    fn add_checked(&self, rhs: &Self, context: &str) -> Result<Self> {
        self.checked_add(rhs).ok_or_else(|| overflow(context))
    }

    fn mul_checked(&self, rhs: &Self, context: &str) -> Result<Self> {
        self.checked_mul(rhs).ok_or_else(|| overflow(context))
    }

    /// `self - rhs`, failing if the result would be negative.
    fn sub_nonneg(&self, rhs: &Self, context: &str) -> Result<Self> {
        if rhs > self {
            return Err(Error::NegativeIntermediate {
                context: context.to_string(),
            });
        }
        self.checked_sub(rhs).ok_or_else(|| overflow(context))
    }

    /// Exact division by a small divisor; a remainder is an error.
    fn div_exactly(&self, divisor: u64, context: &str) -> Result<Self> {
        let d = Self::from_u64_checked(divisor, context)?;
        let (q, r) = self.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                context: context.to_string(),
                numerator: self.to_string(),
                divisor,
            });
        }
        Ok(q)
    }
}

impl<T> CountScalar for T where
    T: Integer
        + Clone
        + Debug
        + Display
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

fn overflow(context: &str) -> Error {
    Error::Overflow {
        context: context.to_string(),
    }
}

/// `m!` with overflow checking.
pub fn factorial<T: CountScalar>(m: u64) -> Result<T> {
    let mut acc = T::one();
    for i in 2..=m {
        acc = acc.mul_checked(&T::from_u64_checked(i, "factorial")?, "factorial")?;
    }
    Ok(acc)
}

/// `base^exp` with overflow checking.
pub fn pow<T: CountScalar>(base: u64, exp: u64) -> Result<T> {
    let b = T::from_u64_checked(base, "power")?;
    let mut acc = T::one();
    for _ in 0..exp {
        acc = acc.mul_checked(&b, "power")?;
    }
    Ok(acc)
}
