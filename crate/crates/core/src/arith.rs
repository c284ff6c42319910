//! Exact integer and rational arithmetic plus the counting functions shared
//! by every other module.
//!
//! Big integers and rationals come from `num-bigint`/`num-rational`; rationals
//! are always kept in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient with the combinatorial convention: zero whenever
/// `a < 0`, `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for j in 0..b {
        // acc * (a - j) / (j + 1) is always exact at this point
        acc *= a - j;
        acc /= j + 1;
    }
    acc
}

/// `(sum parts)! / prod(part!)`.
pub fn multinomial(parts: &[i64]) -> Result<BigInt> {
    if let Some(p) = parts.iter().find(|&&p| p < 0) {
        return Err(Error::InvalidArgument(format!(
            "multinomial part {p} is negative"
        )));
    }
    let mut total = 0i64;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    Ok(acc)
}

pub fn factorial(a: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::InvalidArgument(format!("factorial of {a}")));
    }
    Ok((2..=a).fold(BigInt::one(), |acc, j| acc * j))
}

/// `num / den` as a normalized rational. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(value: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(value.into())
}

/// `base^exp` for a non-negative exponent.
pub fn rpow(base: &BigRational, exp: u32) -> BigRational {
    num_traits::pow(base.clone(), exp as usize)
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Returns the integer value of `q`, or `None` if `q` is not integral.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}
