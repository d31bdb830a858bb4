//! Integral weights in fundamental-weight coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest rank supported by the fixed-size coordinate storage.
pub const MAX_RANK: usize = 4;

/// An integral weight `Σ cᵢ ωᵢ`. Coordinates beyond `rank` are always zero,
/// so derived equality, hashing and the lexicographic `Ord` only see the
/// meaningful prefix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    rank: u8,
    c: [i64; MAX_RANK],
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1 && rank <= MAX_RANK, "rank {rank} out of range");
        Weight { rank: rank as u8, c: [0; MAX_RANK] }
    }

    pub fn new(coords: &[i64]) -> Self {
        let mut w = Weight::zero(coords.len());
        w.c[..coords.len()].copy_from_slice(coords);
        w
    }

    /// The `i`-th fundamental weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.c[i] = 1;
        w
    }

    /// All coordinates equal to `k`; `k = 1` gives `ρ`.
    pub fn constant(rank: usize, k: i64) -> Self {
        let mut w = Weight::zero(rank);
        w.c[..rank].iter_mut().for_each(|x| *x = k);
        w
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.c[..self.rank as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> i64 {
        self.c[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: i64) {
        debug_assert!(i < self.rank());
        self.c[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0)
    }

    /// `p^r`-restricted with `bound = p^r`: every coordinate in `[0, bound-1]`.
    pub fn is_restricted(&self, bound: i64) -> bool {
        self.coords().iter().all(|&x| (0..bound).contains(&x))
    }

    /// Split into `(λ₀, λ₁)` with `λ = λ₀ + p·λ₁` and `λ₀` restricted.
    pub fn p_adic_split(&self, p: i64) -> (Weight, Weight) {
        let mut lo = *self;
        let mut hi = *self;
        for i in 0..self.rank() {
            lo.c[i] = self.c[i].rem_euclid(p);
            hi.c[i] = self.c[i].div_euclid(p);
        }
        (lo, hi)
    }

    pub fn scale(&self, k: i64) -> Weight {
        let mut w = *self;
        w.c[..self.rank()].iter_mut().for_each(|x| *x *= k);
        w
    }

    /// Parse comma-separated ω-coordinates, e.g. `"2,0"`.
    pub fn parse_coords(s: &str) -> Result<Weight> {
        let parts: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match parts {
            Ok(v) if !v.is_empty() && v.len() <= MAX_RANK => Ok(Weight::new(&v)),
            _ => Err(Error::Parse(format!("bad weight coordinates `{s}`"))),
        }
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Weight::parse_coords(s)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Add for Weight {
    type Output = Weight;
    #[inline]
    fn add(mut self, o: Weight) -> Weight {
        debug_assert_eq!(self.rank, o.rank);
        for i in 0..MAX_RANK {
            self.c[i] += o.c[i];
        }
        self
    }
}

impl Sub for Weight {
    type Output = Weight;
    #[inline]
    fn sub(mut self, o: Weight) -> Weight {
        debug_assert_eq!(self.rank, o.rank);
        for i in 0..MAX_RANK {
            self.c[i] -= o.c[i];
        }
        self
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(mut self) -> Weight {
        for i in 0..MAX_RANK {
            self.c[i] = -self.c[i];
        }
        self
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        w.scale(self)
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Weight::parse_coords(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_handles_negative_coordinates() {
        let (lo, hi) = Weight::new(&[-2, 7]).p_adic_split(3);
        assert_eq!(lo, Weight::new(&[1, 1]));
        assert_eq!(hi, Weight::new(&[-1, 2]));
        assert_eq!(lo + hi.scale(3), Weight::new(&[-2, 7]));
    }

    #[test]
    fn parse_and_display() {
        let w: Weight = "3, -1".parse().unwrap();
        assert_eq!(w.to_string(), "3,-1");
        assert!("".parse::<Weight>().is_err());
        assert!("1,x".parse::<Weight>().is_err());
    }

    #[test]
    fn restricted_and_dominant() {
        assert!(Weight::new(&[0, 2]).is_restricted(3));
        assert!(!Weight::new(&[0, 3]).is_restricted(3));
        assert!(!Weight::new(&[-1, 0]).is_dominant());
    }
}
