//! Prime fields `F_p` with a 64-bit modulus chosen at runtime.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime below `2^61` congruent to 1 modulo `lcm(1..=16) = 720720`, so
/// that every root of unity of order up to 16 exists.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_423_681;

/// Arithmetic context for `F_p`. Scalars are plain `u64` residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn default_field() -> Self {
        Self { p: DEFAULT_PRIME }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        let p = self.p as u128;
        (if s >= p { s - p } else { s }) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// `acc + a*b`.
    #[inline]
    pub fn mul_add(&self, acc: u64, a: u64, b: u64) -> u64 {
        ((acc as u128 + a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        // extended Euclid on i128
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, (a % self.p) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        if t < 0 {
            t += self.p as i128;
        }
        t as u64
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let p = self.p as i128;
        ((v as i128 % p + p) % p) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for display.
    pub fn to_signed(&self, a: u64) -> i128 {
        if a > self.p / 2 {
            a as i128 - self.p as i128
        } else {
            a as i128
        }
    }

    pub fn scalar(&self, v: u64) -> FieldScalar {
        FieldScalar {
            value: v % self.p,
            p: self.p,
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    pub value: u64,
    pub p: u64,
}

impl FieldScalar {
    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn pow(self, e: u64) -> Self {
        Self {
            value: self.field().pow(self.value, e),
            p: self.p,
        }
    }

    pub fn inv(self) -> Self {
        Self {
            value: self.field().inv(self.value),
            p: self.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl std::ops::Add for FieldScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Self {
            value: self.field().add(self.value, o.value),
            p: self.p,
        }
    }
}

impl std::ops::Sub for FieldScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Self {
            value: self.field().sub(self.value, o.value),
            p: self.p,
        }
    }
}

impl std::ops::Mul for FieldScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Self {
            value: self.field().mul(self.value, o.value),
            p: self.p,
        }
    }
}

impl std::ops::Neg for FieldScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest `z` (as an integer in `[1, p)`) of exact multiplicative order `m`.
pub fn primitive_root_of_unity(p: u64, m: u64) -> Result<FieldScalar> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return Err(Error::NoRootOfUnity { p, m });
    }
    if m == 1 {
        return Ok(FieldScalar { value: 1, p });
    }
    let factors = prime_factors(m);
    let has_order_m = |w: u64| factors.iter().all(|&q| pow_mod(w, m / q, p) != 1);
    // z^((p-1)/m) has order dividing m; one of exact order m generates all the others
    for z in 2..p.min(1 << 20) {
        let w = pow_mod(z, (p - 1) / m, p);
        if has_order_m(w) {
            let best = (1..=m)
                .filter(|&k| gcd(k, m) == 1)
                .map(|k| pow_mod(w, k, p))
                .min()
                .unwrap();
            return Ok(FieldScalar { value: best, p });
        }
    }
    Err(Error::NoRootOfUnity { p, m })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest prime `p > lower` with `p ≡ 1 (mod m)`.
pub fn smallest_prime_congruent_one(lower: u64, m: u64) -> u64 {
    let m = m.max(1);
    let mut p = lower + 1;
    let r = (p - 1) % m;
    if r != 0 {
        p += m - r;
    }
    while !is_prime(p) {
        p += m;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_is_prime_and_congruent() {
        assert!(is_prime(DEFAULT_PRIME));
        assert_eq!((DEFAULT_PRIME - 1) % 720_720, 0);
        const { assert!(DEFAULT_PRIME < 1 << 61) };
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(primitive_root_of_unity(5, 2).unwrap().value, 4);
        assert_eq!(primitive_root_of_unity(13, 4).unwrap().value, 5);
        assert_eq!(primitive_root_of_unity(7, 1).unwrap().value, 1);
        assert!(matches!(
            primitive_root_of_unity(7, 4),
            Err(Error::NoRootOfUnity { .. })
        ));
        let z = primitive_root_of_unity(DEFAULT_PRIME, 12).unwrap();
        assert_eq!(z.pow(12).value, 1);
        for k in 1..12 {
            assert_ne!(z.pow(k).value, 1);
        }
    }

    #[test]
    fn inverse_and_signed() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.from_i64(-1), 12);
        assert_eq!(f.to_signed(12), -1);
        let g = PrimeField::default_field();
        let a = g.from_i64(-123456789);
        assert_eq!(g.mul(a, g.inv(a)), 1);
    }

    #[test]
    fn congruent_primes() {
        assert_eq!(smallest_prime_congruent_one(1_000_000, 5), 1_000_081);
        let p = smallest_prime_congruent_one(1_000_000, 4);
        assert!(is_prime(p) && p > 1_000_000 && (p - 1).is_multiple_of(4));
    }
}
