use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// Exact coefficient field for polynomial arithmetic.
///
/// Implemented for every `Ratio<T>` over a signed integer type: `BigRational`
/// is the default, `Ratio<i64>` is faster on small binomial ideals.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_int(v: i64) -> Self;

    /// Parses `"3"`, `"-2"` or `"3/4"`.
    fn parse_literal(s: &str) -> Option<Self>;

    fn is_negative(&self) -> bool;
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Display + Debug + FromPrimitive + FromStr + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer fits the coefficient type"))
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: T = n.trim().parse().ok()?;
                let d: T = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(Ratio::new(n, d))
                }
            }
            None => s.parse().ok().map(Ratio::from_integer),
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}
