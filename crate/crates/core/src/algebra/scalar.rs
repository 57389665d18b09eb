use std::fmt;

use crate::error::{Error, Result};

/// An element `rat + irr·√m` of the quadratic integer ring ℤ[√m].
///
/// `m` is a positive square-free integer. With `m = 1` the ring collapses
/// to ℤ and the irrational part is always folded into the rational part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    rat: i64,
    irr: i64,
    disc: u32,
}

pub fn is_square_free(m: i64) -> bool {
    if m < 1 {
        return false;
    }
    let mut p: i64 = 2;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadScalar {
    pub fn new(rat: i64, irr: i64, disc: u32) -> Result<Self> {
        if !is_square_free(disc as i64) {
            return Err(Error::BadDiscriminant(disc as i64));
        }
        if disc == 1 {
            let rat = rat.checked_add(irr).ok_or(Error::Overflow)?;
            return Ok(QuadScalar { rat, irr: 0, disc });
        }
        Ok(QuadScalar { rat, irr, disc })
    }

    pub fn integer(rat: i64, disc: u32) -> Result<Self> {
        Self::new(rat, 0, disc)
    }

    pub fn zero(disc: u32) -> Result<Self> {
        Self::new(0, 0, disc)
    }

    pub fn rat(&self) -> i64 {
        self.rat
    }

    pub fn irr(&self) -> i64 {
        self.irr
    }

    pub fn discriminant(&self) -> u32 {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.rat == 0 && self.irr == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.disc != other.disc {
            return Err(Error::DiscriminantMismatch {
                left: self.disc,
                right: other.disc,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadScalar {
            rat: self.rat.checked_add(other.rat).ok_or(Error::Overflow)?,
            irr: self.irr.checked_add(other.irr).ok_or(Error::Overflow)?,
            disc: self.disc,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn neg(&self) -> Result<Self> {
        Ok(QuadScalar {
            rat: self.rat.checked_neg().ok_or(Error::Overflow)?,
            irr: self.irr.checked_neg().ok_or(Error::Overflow)?,
            disc: self.disc,
        })
    }

    /// `(a + b√m)(c + e√m) = (ac + m·be) + (ae + bc)√m`
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.disc as i64;
        let ac = self.rat.checked_mul(other.rat);
        let be = self.irr.checked_mul(other.irr).and_then(|x| x.checked_mul(m));
        let ae = self.rat.checked_mul(other.irr);
        let bc = self.irr.checked_mul(other.rat);
        let rat = ac.zip(be).and_then(|(x, y)| x.checked_add(y));
        let irr = ae.zip(bc).and_then(|(x, y)| x.checked_add(y));
        match (rat, irr) {
            (Some(rat), Some(irr)) => Ok(QuadScalar {
                rat,
                irr,
                disc: self.disc,
            }),
            _ => Err(Error::Overflow),
        }
    }

    /// Multiplies both parts by an integer.
    pub fn scale(&self, k: i64) -> Result<Self> {
        Ok(QuadScalar {
            rat: self.rat.checked_mul(k).ok_or(Error::Overflow)?,
            irr: self.irr.checked_mul(k).ok_or(Error::Overflow)?,
            disc: self.disc,
        })
    }

    /// Divides both parts by an integer that is known to divide them.
    pub(crate) fn div_exact(&self, k: i64) -> Self {
        debug_assert!(k != 0 && self.rat % k == 0 && self.irr % k == 0);
        QuadScalar {
            rat: self.rat / k,
            irr: self.irr / k,
            disc: self.disc,
        }
    }

    /// `a - b√m`
    pub fn conjugate(&self) -> Result<Self> {
        Ok(QuadScalar {
            rat: self.rat,
            irr: self.irr.checked_neg().ok_or(Error::Overflow)?,
            disc: self.disc,
        })
    }

    /// `a² - m·b²`, the field norm; nonzero for nonzero elements.
    pub fn norm(&self) -> Result<i64> {
        let a2 = self.rat.checked_mul(self.rat).ok_or(Error::Overflow)?;
        let b2 = self
            .irr
            .checked_mul(self.irr)
            .and_then(|x| x.checked_mul(self.disc as i64))
            .ok_or(Error::Overflow)?;
        a2.checked_sub(b2).ok_or(Error::Overflow)
    }

    /// Sign under the lexicographic order on `(rat, irr)`.
    pub(crate) fn lex_sign(&self) -> i32 {
        match (self.rat.signum(), self.irr.signum()) {
            (0, s) => s as i32,
            (s, _) => s as i32,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat as f64 + self.irr as f64 * (self.disc as f64).sqrt()
    }
}

impl fmt::Display for QuadScalar {
    /// `a` when the irrational part vanishes, otherwise `a:b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr == 0 {
            write!(f, "{}", self.rat)
        } else {
            write!(f, "{}:{}", self.rat, self.irr)
        }
    }
}
