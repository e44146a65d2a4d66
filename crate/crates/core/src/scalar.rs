//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Parity helper for Koszul signs: true when `(-1)^(a*b) = -1`.
#[inline]
pub fn odd_product(a: i32, b: i32) -> bool {
    (a * b).rem_euclid(2) == 1
}

pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

/// Bernoulli numbers `B_0..=B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Scalar> {
    let mut b = vec![zero(); n + 1];
    b[0] = one();
    for m in 1..=n {
        let mut acc = zero();
        let mut binom = BigInt::one();
        for k in 0..m {
            acc += BigRational::from_integer(binom.clone()) * &b[k];
            binom = binom * BigInt::from((m + 1 - k) as u64) / BigInt::from((k + 1) as u64);
        }
        b[m] = -acc / int(m as i64 + 1);
    }
    b
}

pub fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn abs_is_one(c: &Scalar) -> bool {
    c.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(6);
        assert_eq!(b[0], int(1));
        assert_eq!(b[1], ratio(-1, 2));
        assert_eq!(b[2], ratio(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], ratio(-1, 30));
        assert_eq!(b[6], ratio(1, 42));
    }

    #[test]
    fn ratios_reduce() {
        let r = ratio(6, -4);
        assert_eq!(r, ratio(-3, 2));
        assert!(r.denom() > &BigInt::zero());
    }
}
