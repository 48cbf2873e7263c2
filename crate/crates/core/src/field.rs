//! Prime fields `F_q` with `2 <= q <= 251`.

use std::fmt;

use crate::error::{param, Result};

/// A prime field `F_q`. Elements are plain `u8` values in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    q: u8,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=251).contains(&q) || !is_prime(q as u64) {
            return param(format!("field size q={q} must be a prime in [2, 251]"));
        }
        Ok(Field { q: q as u8 })
    }

    pub const BINARY: Field = Field { q: 2 };

    #[inline]
    pub fn q(self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.q == 2
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.q as i64) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        let q = self.q as u16;
        (if s >= q { s - q } else { s }) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            (a as u16 + self.q as u16 - b as u16) as u8
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    pub fn pow(self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        self.pow(a, self.q as u64 - 2)
    }

    pub fn scalar(self, value: i64) -> FieldScalar {
        FieldScalar {
            value: self.reduce(value),
            field: self,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// A field element tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u8,
    field: Field,
}

impl FieldScalar {
    pub fn new(value: i64, q: u32) -> Result<Self> {
        Ok(Field::new(q)?.scalar(value))
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn field(self) -> Field {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}
