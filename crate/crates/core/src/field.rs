//! Prime fields F_p with canonical representatives in `0..p`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
}

/// The coefficient field F_p. Coefficients are stored as `u32` in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundField {
    p: u32,
}

impl GroundField {
    /// Primality is checked; composite or unit moduli are rejected.
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if is_prime(p) {
            Ok(GroundField { p })
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce_u64(&self, n: u64) -> u32 {
        (n % u64::from(self.p)) as u32
    }

    /// Reduces a signed integer to its canonical representative.
    pub fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.p)) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.reduce_u64(u64::from(a) + u64::from(b))
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.reduce_u64(u64::from(a) + u64::from(self.p) - u64::from(b % self.p))
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce_u64(u64::from(a) * u64::from(b))
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        base %= self.p;
        let mut acc: u32 = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    let n64 = u64::from(n);
    while d * d <= n64 {
        if n64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(GroundField::new(4).is_err());
        assert!(GroundField::new(1).is_err());
        assert!(GroundField::new(0).is_err());
        assert!(GroundField::new(9).is_err());
        for p in [2u32, 3, 5, 7, 11, 13, 101] {
            assert!(GroundField::new(p).is_ok());
        }
    }

    #[test]
    fn arithmetic_mod_5() {
        let f = GroundField::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(2), 3);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.pow(2, 5), 2); // Fermat
        assert_eq!(f.reduce_i64(-7), 3);
    }
}
