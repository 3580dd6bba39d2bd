//! Arithmetic in GF(2^L) for 1 <= L <= 16.
//!
//! Elements are stored as `u16` bit patterns, bit `b` being the coefficient of
//! `x^b`. Addition is XOR and does not depend on the degree, so [`Gf`]
//! implements `Add` directly. Multiplication goes through a [`Field`], which
//! owns log/antilog tables built from a fixed primitive reduction polynomial.
//!
//! # Reduction polynomials
//!
//! The polynomial for each degree is pinned in [`REDUCTION_POLYNOMIALS`] so
//! that results are bit-reproducible. Every entry is primitive, so `x` (the
//! element `2`) generates the multiplicative group. For `L = 8` this is the
//! Conway polynomial `x^8 + x^4 + x^3 + x^2 + 1` (0x11D).
//!
//! Fields are built lazily once per degree and shared as `&'static Field`.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u8 = 16;
pub const DEFAULT_DEGREE: u8 = 8;

/// Primitive reduction polynomial for GF(2^L), indexed by `L`. Index 0 is unused.
pub const REDUCTION_POLYNOMIALS: [u32; 17] = [
    0x0,     // unused
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
];

/// A field element (a packet symbol or a coding coefficient).
#[derive(
    Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf {
    type Output = Gf;

    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf {
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

/// A vector of field elements.
pub type GfVector = Vec<Gf>;

/// GF(2^L) with precomputed log/antilog tables.
pub struct Field {
    degree: u8,
    poly: u32,
    size: usize,
    /// `exp[i] = x^i`, doubled in length so `log a + log b` never needs a modulo.
    exp: Vec<u16>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("degree", &self.degree)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
    }
}

impl Eq for Field {}

static FIELDS: [OnceLock<Field>; MAX_DEGREE as usize + 1] = [const { OnceLock::new() }; 17];

impl Field {
    /// The shared field of the given degree.
    pub fn get(degree: u8) -> Result<&'static Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::FieldDegree(degree as u32));
        }
        Ok(FIELDS[degree as usize].get_or_init(|| Field::build(degree)))
    }

    pub fn gf2() -> &'static Field {
        Field::get(1).expect("degree 1 is supported")
    }

    pub fn gf256() -> &'static Field {
        Field::get(DEFAULT_DEGREE).expect("default degree is supported")
    }

    fn build(degree: u8) -> Field {
        let poly = REDUCTION_POLYNOMIALS[degree as usize];
        let size = 1usize << degree;
        let order = size - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; size];
        let mut x: u32 = 1;
        for i in 0..order {
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & (size as u32) != 0 {
                x ^= poly;
            }
        }
        assert_eq!(x, 1, "reduction polynomial for degree {degree} is not primitive");
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Field {
            degree,
            poly,
            size,
            exp,
            log,
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// Reduction polynomial including the leading `x^L` term.
    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Number of elements, `2^L`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, a: Gf) -> bool {
        (a.0 as usize) < self.size
    }

    /// Checked conversion from a raw value.
    pub fn element(&self, value: u32) -> Result<Gf> {
        if (value as usize) < self.size {
            Ok(Gf(value as u16))
        } else {
            Err(Error::ElementRange {
                value,
                degree: self.degree,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.size).map(|v| Gf(v as u16))
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let s = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Gf(self.exp[s])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Gf) -> Option<Gf> {
        debug_assert!(self.contains(a));
        if a.0 == 0 {
            return None;
        }
        let order = self.size - 1;
        let l = self.log[a.0 as usize] as usize;
        Some(Gf(self.exp[(order - l) % order]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Option<Gf> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Gf, e: u64) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let order = (self.size - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Gf(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `<a, p> = sum_m a_m p_m`.
    pub fn inner_product(&self, a: &[Gf], p: &[Gf]) -> Result<Gf> {
        if a.len() != p.len() {
            return Err(Error::Dimension {
                expected: a.len(),
                found: p.len(),
            });
        }
        Ok(a.iter()
            .zip(p)
            .fold(Gf::ZERO, |acc, (&x, &y)| acc + self.mul(x, y)))
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [Gf], c: Gf, src: &[Gf]) {
        debug_assert_eq!(dst.len(), src.len());
        if c.is_zero() {
            return;
        }
        if c == Gf::ONE {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d += s;
            }
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            *d += self.mul(c, s);
        }
    }

    /// `v *= c`, elementwise.
    pub fn scale(&self, v: &mut [Gf], c: Gf) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}
