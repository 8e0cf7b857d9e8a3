use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// Coefficient field of every polynomial in the crate.
///
/// Implemented for `Ratio<T>` over any signed integer type; the crate root
/// fixes `Ratio<BigInt>` for the public aliases.
pub trait Coeff: Clone + Debug + Display + PartialEq + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;
    fn is_integer(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Greatest common divisor of two integral values, nonnegative.
    fn gcd(&self, other: &Self) -> Self;
    fn to_fraction_strings(&self) -> (String, String);
    fn from_fraction_strings(num: &str, den: &str) -> Option<Self>;
}

impl<T> Coeff for Ratio<T>
where
    T: Clone + Integer + Signed + FromPrimitive + FromStr + Debug + Display + Send + Sync + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits the coefficient type"))
    }

    fn is_integer(&self) -> bool {
        Ratio::is_integer(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn gcd(&self, other: &Self) -> Self {
        debug_assert!(self.is_integer() && other.is_integer());
        Ratio::from_integer(self.numer().gcd(other.numer()))
    }

    fn to_fraction_strings(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }

    fn from_fraction_strings(num: &str, den: &str) -> Option<Self> {
        let n = num.trim().parse::<T>().ok()?;
        let d = den.trim().parse::<T>().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }
}
