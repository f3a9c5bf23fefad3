use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Rational;

/// Scalar operations needed by the elimination kernel.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn neg(&self) -> Self;
    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self);
    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self);
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        Rational::sub_mul(self, a, b)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += &(a * b);
    }
}

/// Element of the prime field `Z/PZ`, `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(x: u64) -> Self {
        Fp(x % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn mul_raw(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul_raw(acc, base);
            }
            base = Self::mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    fn from_bigint(n: &BigInt) -> u64 {
        let r = n % BigInt::from(P);
        let r = if r.sign() == num_bigint::Sign::Minus { r + BigInt::from(P) } else { r };
        r.to_u64().expect("reduced residue fits in u64")
    }

    /// Image of a rational number; `None` when `P` divides the denominator.
    pub fn from_rational(q: &Rational) -> Option<Self> {
        let (n, d) = match q.as_small() {
            Some((n, d)) => (
                (n as i128).rem_euclid(P as i128) as u64,
                (d as i128).rem_euclid(P as i128) as u64,
            ),
            None => (Self::from_bigint(&q.numer()), Self::from_bigint(&q.denom())),
        };
        if d == 0 {
            return None;
        }
        Some(Fp(Self::mul_raw(n, Self::pow(d, P - 2))))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(Self::mul_raw(self.0, other.0))
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        Fp(Self::pow(self.0, P - 2))
    }
    fn neg(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P - self.0)
        }
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        let prod = Self::mul_raw(a.0, b.0);
        self.0 = if self.0 >= prod { self.0 - prod } else { self.0 + (P - prod) };
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let prod = Self::mul_raw(a.0, b.0);
        let s = self.0 as u128 + prod as u128;
        self.0 = (s % P as u128) as u64;
    }
}
