//! Exact coefficient arithmetic. The coefficient ring is the arbitrary
//! precision rationals; integer values stay exact through every operation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Coeff = BigRational;

pub fn coeff_int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn coeff_ratio(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn coeff_zero() -> Coeff {
    BigRational::zero()
}

pub fn coeff_one() -> Coeff {
    BigRational::one()
}

pub fn coeff_is_zero(c: &Coeff) -> bool {
    c.is_zero()
}

/// Renders `n` or `n/d`; exact round-trip with [`coeff_parse`].
pub fn coeff_to_string(c: &Coeff) -> String {
    c.to_string()
}

/// Parses `n`, `-n`, or `n/d`.
pub fn coeff_parse(s: &str) -> Option<Coeff> {
    BigRational::from_str(s.trim()).ok()
}

pub fn coeff_abs(c: &Coeff) -> Coeff {
    c.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for c in [coeff_int(3), coeff_int(-1), coeff_ratio(1, 2), coeff_ratio(-7, 3)] {
            assert_eq!(coeff_parse(&coeff_to_string(&c)).unwrap(), c);
        }
        assert_eq!(coeff_to_string(&coeff_int(2)), "2");
        assert_eq!(coeff_to_string(&coeff_ratio(1, 2)), "1/2");
        assert_eq!(coeff_parse("4/8").unwrap(), coeff_ratio(1, 2));
    }
}
