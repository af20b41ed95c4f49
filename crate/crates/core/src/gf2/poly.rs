//! Polynomials over GF(2), bit-packed into 64-bit limbs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use super::Gf2Error;

/// A polynomial over GF(2). Bit `i` of limb `j` holds the coefficient of
/// `z^(64j + i)`. Canonical form: no trailing zero limbs, so equality and
/// hashing are structural. The zero polynomial has no limbs and degree -1.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinPoly {
    limbs: Vec<u64>,
}

impl BinPoly {
    pub fn zero() -> Self {
        BinPoly { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        BinPoly { limbs: vec![1] }
    }

    /// `z^degree`
    pub fn monomial(degree: usize) -> Self {
        let mut limbs = vec![0u64; degree / 64 + 1];
        limbs[degree / 64] = 1 << (degree % 64);
        BinPoly { limbs }
    }

    /// Builds a polynomial from an ascending coefficient list (index i is the
    /// coefficient of `z^i`). Entries must be 0 or 1.
    pub fn from_coeffs(coeffs: &[u8]) -> Result<Self, Gf2Error> {
        let mut p = BinPoly {
            limbs: vec![0u64; coeffs.len() / 64 + 1],
        };
        for (i, &c) in coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 => p.limbs[i / 64] |= 1 << (i % 64),
                other => return Err(Gf2Error::BadEntry(other)),
            }
        }
        p.trim();
        Ok(p)
    }

    /// Ascending coefficient list up to the degree; `[0]` for the zero polynomial.
    pub fn coeffs(&self) -> Vec<u8> {
        let d = self.degree();
        if d < 0 {
            return vec![0];
        }
        (0..=d as usize).map(|i| self.coeff(i) as u8).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|limb| limb >> (i % 64) & 1 == 1)
    }

    /// Degree, with -1 for the zero polynomial so that row-degree sums stay total.
    pub fn degree(&self) -> isize {
        match self.limbs.last() {
            None => -1,
            Some(last) => (self.limbs.len() * 64 - 1 - last.leading_zeros() as usize) as isize,
        }
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    /// `self * z^k`
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return BinPoly::zero();
        }
        let (words, bits) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + words + 1];
        for (i, &l) in self.limbs.iter().enumerate() {
            limbs[i + words] |= l << bits;
            if bits > 0 {
                limbs[i + words + 1] |= l >> (64 - bits);
            }
        }
        let mut p = BinPoly { limbs };
        p.trim();
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let (longer, shorter) = if self.limbs.len() >= other.limbs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut limbs = longer.limbs.clone();
        for (i, &l) in shorter.limbs.iter().enumerate() {
            limbs[i] ^= l;
        }
        let mut p = BinPoly { limbs };
        p.trim();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = BinPoly::zero();
        for (j, &limb) in self.limbs.iter().enumerate() {
            let mut l = limb;
            while l != 0 {
                let bit = l.trailing_zeros() as usize;
                acc = acc.add(&other.shl(j * 64 + bit));
                l &= l - 1;
            }
        }
        acc
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and `deg r < deg d`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self), Gf2Error> {
        if divisor.is_zero() {
            return Err(Gf2Error::DivisionByZero);
        }
        let dd = divisor.degree();
        let mut q = BinPoly::zero();
        let mut r = self.clone();
        while r.degree() >= dd {
            let shift = (r.degree() - dd) as usize;
            q = q.add(&BinPoly::monomial(shift));
            r = r.add(&divisor.shl(shift));
        }
        Ok((q, r))
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.divmod(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x
    }
}

impl Add for &BinPoly {
    type Output = BinPoly;
    fn add(self, rhs: &BinPoly) -> BinPoly {
        BinPoly::add(self, rhs)
    }
}

impl AddAssign<&BinPoly> for BinPoly {
    fn add_assign(&mut self, rhs: &BinPoly) {
        *self = BinPoly::add(self, rhs);
    }
}

impl Mul for &BinPoly {
    type Output = BinPoly;
    fn mul(self, rhs: &BinPoly) -> BinPoly {
        BinPoly::mul(self, rhs)
    }
}

impl fmt::Display for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in 0..=self.degree() as usize {
            if !self.coeff(i) {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            match i {
                0 => write!(f, "1")?,
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinPoly({self})")
    }
}
